#pragma once

#include <complex>
#include <vector>

namespace nilwkb::surface {

using cplx = std::complex<double>;

struct EdgeRef {
    int polygon = 0;
    int edge = 0; // edge k runs from vertex k to vertex k+1
    friend bool operator==(const EdgeRef&, const EdgeRef&) = default;
};

// Edge `a` glued to edge `b` by w ↦ sign·w + offset, sending the start of `a`
// to the end of `b`.
struct Identification {
    EdgeRef a;
    EdgeRef b;
    int sign = 1;
};

class PolygonSurface {
public:
    PolygonSurface() = default;
    // Polygons are counterclockwise vertex loops.
    PolygonSurface(std::vector<std::vector<cplx>> polygons, std::vector<Identification> identifications);

    const std::vector<std::vector<cplx>>& polygons() const { return polygons_; }
    const std::vector<Identification>& identifications() const { return ids_; }
    cplx vertex(int p, int k) const;
    cplx edge_start(EdgeRef e) const { return vertex(e.polygon, e.edge); }
    cplx edge_end(EdgeRef e) const { return vertex(e.polygon, e.edge + 1); }
    int edge_count(int p) const { return static_cast<int>(polygons_[p].size()); }

    // Offset of the gluing map a → b.
    cplx offset(int id) const;
    // Index of the identification containing e and whether e is its `a` side.
    std::pair<int, bool> gluing_of(EdgeRef e) const;
    // Maps a point/direction across edge e into the partner polygon.
    cplx map_point(EdgeRef e, cplx w) const;
    EdgeRef partner(EdgeRef e) const;
    int sign_of(EdgeRef e) const { return ids_[gluing_of(e).first].sign; }
    double min_edge_length() const;
    // Same surface with polygon p moved by `shift` (offsets are derived, so gluings follow).
    PolygonSurface translated(int p, cplx shift) const;

private:
    std::vector<std::vector<cplx>> polygons_;
    std::vector<Identification> ids_;
    std::vector<std::vector<std::pair<int, bool>>> edge_index_;
};

struct Corner {
    int polygon;
    int vertex;
};

struct VertexClass {
    std::vector<Corner> corners;
    // Total angle in units of π, and the order k = angle/π − 2.
    int angle_pi = 0;
    int order = 0;
    cplx representative; // coordinates of the first corner
};

struct SingularityReport {
    std::vector<VertexClass> vertex_classes;
    int V = 0, E = 0, F = 0;
    int chi = 0;
    int genus = 0;
    bool exact_angles = false; // all edges axis-parallel, angles counted in quarter turns
    std::vector<VertexClass> singularities() const;
    int order_sum() const;
};

SingularityReport validate(const PolygonSurface& s);

enum class Termination { MaxLength, ConePoint, ClosedUp };
const char* to_string(Termination t);

struct FlowPiece {
    int polygon;
    cplx entry;
    cplx exit;
    int parity; // local direction = parity·e^{iθ}
};

struct FlowState {
    int polygon = 0;
    cplx position;
    int parity = 1;
    double length = 0.0;
};

struct FlatTrajectory {
    double theta = 0.0;
    std::vector<FlowPiece> pieces;
    double total_length = 0.0;
    Termination terminated = Termination::MaxLength;
    FlowState end;
    // Identification indices crossed, in order.
    std::vector<int> crossings;
};

struct FlowStart {
    int polygon = 0;
    cplx point;
};

FlatTrajectory trace_flow(const PolygonSurface& s, const FlowStart& start, double theta, double max_length);
// Continues a trajectory that stopped at MaxLength for `extra` more length;
// closing up is still judged against `origin`.
FlatTrajectory continue_flow(const PolygonSurface& s, const FlowStart& origin, const FlowState& from, double theta,
                             double extra);

enum class Convention { Imaginary, Real };

struct LoopOptions {
    double max_length = 1000.0;
    double eta = -1.0; // ≤ 0 selects 0.01·min edge length
    Convention convention = Convention::Imaginary;
};

struct WkbLoop {
    double theta = 0.0;
    FlowStart start;
    std::vector<FlowPiece> pieces; // leaf part, ending at connector_from
    cplx connector_from;
    cplx connector_to;
    std::vector<int> crossings;
    cplx period_Z;
    bool is_wkb = false;
    double margin = 0.0;
};

WkbLoop find_wkb_loop(const PolygonSurface& s, const FlowStart& start, double theta, const LoopOptions& opts = {});
// True iff the product of gluing signs crossed by the loop is +1.
bool lift_check(const PolygonSurface& s, const WkbLoop& loop);

enum class StaircaseStyle { Left, Right };

// Staircase of `count` rectangles; widths per column and heights per row
// default to 1. Rows and columns close up by translation at their ends.
PolygonSurface staircase(int count, StaircaseStyle style, const std::vector<double>& widths = {},
                         const std::vector<double>& heights = {});
// Half-translation variant: the first rectangle's free ends are folded onto
// themselves by w ↦ −w + a instead of being glued to each other.
PolygonSurface half_staircase(int count, StaircaseStyle style);
PolygonSurface flat_torus();

} // namespace nilwkb::surface
