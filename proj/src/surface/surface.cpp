#include "nilwkb/surface/surface.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <map>
#include <optional>
#include <string>

#include "nilwkb/error.hpp"

namespace nilwkb::surface {

namespace {

double cross(cplx a, cplx b) { return a.real() * b.imag() - a.imag() * b.real(); }

double ccw_angle(cplx from, cplx to) {
    double a = std::arg(to / from);
    return a < 0 ? a + 2.0 * M_PI : a;
}

std::string edge_name(EdgeRef e) {
    return "(" + std::to_string(e.polygon) + "," + std::to_string(e.edge) + ")";
}

} // namespace

PolygonSurface::PolygonSurface(std::vector<std::vector<cplx>> polygons, std::vector<Identification> identifications)
    : polygons_(std::move(polygons)), ids_(std::move(identifications)) {
    if (polygons_.empty()) throw Error(ErrorKind::InvalidArgument, "surface has no polygons");
    edge_index_.resize(polygons_.size());
    for (std::size_t p = 0; p < polygons_.size(); ++p) {
        const auto& poly = polygons_[p];
        if (poly.size() < 3) throw Error(ErrorKind::InvalidArgument, "polygon " + std::to_string(p) + " has fewer than 3 vertices");
        double area = 0;
        for (std::size_t k = 0; k < poly.size(); ++k) area += cross(poly[k], poly[(k + 1) % poly.size()]);
        if (!(area > 0)) throw Error(ErrorKind::InvalidArgument, "polygon " + std::to_string(p) + " is not counterclockwise");
        edge_index_[p].assign(poly.size(), {-1, false});
    }
    auto check = [&](EdgeRef e) {
        if (e.polygon < 0 || e.polygon >= static_cast<int>(polygons_.size()) || e.edge < 0 ||
            e.edge >= edge_count(e.polygon))
            throw Error(ErrorKind::InvalidArgument, "identification refers to missing edge " + edge_name(e));
    };
    for (std::size_t i = 0; i < ids_.size(); ++i) {
        const auto& id = ids_[i];
        check(id.a);
        check(id.b);
        if (id.sign != 1 && id.sign != -1) throw Error(ErrorKind::InvalidArgument, "gluing sign must be +1 or -1");
        if (id.a == id.b) throw Error(ErrorKind::InvalidArgument, "edge " + edge_name(id.a) + " glued to itself");
        for (auto [e, is_a] : {std::pair{id.a, true}, std::pair{id.b, false}}) {
            auto& slot = edge_index_[e.polygon][e.edge];
            if (slot.first >= 0)
                throw Error(ErrorKind::UnmatchedEdge, "edge " + edge_name(e) + " appears in two identifications");
            slot = {static_cast<int>(i), is_a};
        }
    }
}

cplx PolygonSurface::vertex(int p, int k) const {
    const auto& poly = polygons_[p];
    int n = static_cast<int>(poly.size());
    return poly[((k % n) + n) % n];
}

cplx PolygonSurface::offset(int id) const {
    const auto& g = ids_[id];
    return edge_end(g.b) - static_cast<double>(g.sign) * edge_start(g.a);
}

std::pair<int, bool> PolygonSurface::gluing_of(EdgeRef e) const {
    auto slot = edge_index_[e.polygon][e.edge];
    if (slot.first < 0) throw Error(ErrorKind::UnmatchedEdge, "edge " + edge_name(e) + " is not identified");
    return slot;
}

EdgeRef PolygonSurface::partner(EdgeRef e) const {
    auto [id, is_a] = gluing_of(e);
    return is_a ? ids_[id].b : ids_[id].a;
}

cplx PolygonSurface::map_point(EdgeRef e, cplx w) const {
    auto [id, is_a] = gluing_of(e);
    double s = ids_[id].sign;
    return is_a ? s * w + offset(id) : s * (w - offset(id));
}

double PolygonSurface::min_edge_length() const {
    double m = INFINITY;
    for (std::size_t p = 0; p < polygons_.size(); ++p)
        for (int k = 0; k < edge_count(static_cast<int>(p)); ++k)
            m = std::min(m, std::abs(vertex(static_cast<int>(p), k + 1) - vertex(static_cast<int>(p), k)));
    return m;
}

PolygonSurface PolygonSurface::translated(int p, cplx shift) const {
    auto polys = polygons_;
    for (auto& v : polys.at(p)) v += shift;
    return PolygonSurface(std::move(polys), ids_);
}

std::vector<VertexClass> SingularityReport::singularities() const {
    std::vector<VertexClass> out;
    for (const auto& c : vertex_classes)
        if (c.angle_pi != 2) out.push_back(c);
    return out;
}

int SingularityReport::order_sum() const {
    int s = 0;
    for (const auto& c : vertex_classes) s += c.order;
    return s;
}

namespace {

struct Dsu {
    std::vector<int> parent;
    explicit Dsu(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
    int find(int x) { return parent[x] == x ? x : parent[x] = find(parent[x]); }
    void unite(int a, int b) { parent[find(a)] = find(b); }
};

// Direction index 0..3 for axis-parallel vectors, −1 otherwise.
int axis_dir(cplx v) {
    if (v.imag() == 0 && v.real() > 0) return 0;
    if (v.real() == 0 && v.imag() > 0) return 1;
    if (v.imag() == 0 && v.real() < 0) return 2;
    if (v.real() == 0 && v.imag() < 0) return 3;
    return -1;
}

} // namespace

SingularityReport validate(const PolygonSurface& s) {
    const auto& polys = s.polygons();
    std::vector<int> base(polys.size() + 1, 0);
    for (std::size_t p = 0; p < polys.size(); ++p) base[p + 1] = base[p] + static_cast<int>(polys[p].size());

    for (std::size_t p = 0; p < polys.size(); ++p)
        for (int k = 0; k < s.edge_count(static_cast<int>(p)); ++k) s.gluing_of({static_cast<int>(p), k});

    Dsu dsu(base.back());
    for (const auto& id : s.identifications()) {
        cplx va = s.edge_end(id.a) - s.edge_start(id.a);
        cplx vb = s.edge_end(id.b) - s.edge_start(id.b);
        if (std::abs(vb + static_cast<double>(id.sign) * va) > 1e-12 * std::max(1.0, std::abs(va)))
            throw Error(ErrorKind::GluingLengthMismatch,
                        "edges " + edge_name(id.a) + " and " + edge_name(id.b) + " do not match under the gluing");
        int na = s.edge_count(id.a.polygon), nb = s.edge_count(id.b.polygon);
        dsu.unite(base[id.a.polygon] + id.a.edge, base[id.b.polygon] + (id.b.edge + 1) % nb);
        dsu.unite(base[id.a.polygon] + (id.a.edge + 1) % na, base[id.b.polygon] + id.b.edge);
    }

    SingularityReport r;
    r.exact_angles = true;
    for (std::size_t p = 0; p < polys.size(); ++p)
        for (int k = 0; k < s.edge_count(static_cast<int>(p)); ++k)
            if (axis_dir(s.vertex(static_cast<int>(p), k + 1) - s.vertex(static_cast<int>(p), k)) < 0)
                r.exact_angles = false;

    std::vector<int> class_of(base.back(), -1);
    std::vector<long> quarters;
    std::vector<double> angles;
    for (std::size_t p = 0; p < polys.size(); ++p) {
        for (int k = 0; k < s.edge_count(static_cast<int>(p)); ++k) {
            int root = dsu.find(base[p] + k);
            if (class_of[root] < 0) {
                class_of[root] = static_cast<int>(r.vertex_classes.size());
                r.vertex_classes.push_back({});
                r.vertex_classes.back().representative = s.vertex(static_cast<int>(p), k);
                quarters.push_back(0);
                angles.push_back(0.0);
            }
            int c = class_of[root];
            r.vertex_classes[c].corners.push_back({static_cast<int>(p), k});
            cplx v = s.vertex(static_cast<int>(p), k);
            cplx out = s.vertex(static_cast<int>(p), k + 1) - v, back = s.vertex(static_cast<int>(p), k - 1) - v;
            if (r.exact_angles) {
                int turn = ((axis_dir(out) - axis_dir(-back)) % 4 + 4) % 4;
                if (turn == 2) throw Error(ErrorKind::NonManifoldCorner, "polygon folds back on itself");
                quarters[c] += turn == 0 ? 2 : (turn == 1 ? 1 : 3);
            } else {
                angles[c] += ccw_angle(out, back);
            }
        }
    }
    for (std::size_t c = 0; c < r.vertex_classes.size(); ++c) {
        auto& vc = r.vertex_classes[c];
        if (r.exact_angles) {
            if (quarters[c] % 2 != 0)
                throw Error(ErrorKind::NonManifoldCorner, "vertex class angle is not a multiple of pi");
            vc.angle_pi = static_cast<int>(quarters[c] / 2);
        } else {
            double m = angles[c] / M_PI;
            long rounded = std::lround(m);
            if (std::abs(m - rounded) > 1e-9 || rounded < 1)
                throw Error(ErrorKind::NonManifoldCorner, "vertex class angle is not a positive multiple of pi");
            vc.angle_pi = static_cast<int>(rounded);
        }
        vc.order = vc.angle_pi - 2;
    }
    r.V = static_cast<int>(r.vertex_classes.size());
    r.E = static_cast<int>(s.identifications().size());
    r.F = static_cast<int>(polys.size());
    r.chi = r.V - r.E + r.F;
    if (r.chi % 2 != 0) throw Error(ErrorKind::NonManifoldCorner, "odd Euler characteristic");
    r.genus = (2 - r.chi) / 2;
    return r;
}

const char* to_string(Termination t) {
    switch (t) {
    case Termination::MaxLength: return "MaxLength";
    case Termination::ConePoint: return "ConePoint";
    case Termination::ClosedUp: return "ClosedUp";
    }
    return "?";
}

namespace {

constexpr double kHit = 1e-9;

// Straight-line flow with a per-piece stopping rule.
class Walker {
public:
    Walker(const PolygonSurface& s, double theta) : s_(s), u0_(std::polar(1.0, theta)), report_(validate(s)) {
        for (std::size_t c = 0; c < report_.vertex_classes.size(); ++c)
            for (const auto& k : report_.vertex_classes[c].corners) corner_class_[{k.polygon, k.vertex}] = static_cast<int>(c);
    }

    cplx u0() const { return u0_; }

    // on_piece(polygon, x, u, s_exit, parity, length_before) returns a cut length to stop early.
    template <class F>
    Termination run(FlowState& st, double budget, std::vector<FlowPiece>& pieces, std::vector<int>& crossings, F&& on_piece) {
        double used = 0;
        for (int guard = 0; guard < 100'000'000; ++guard) {
            const int p = st.polygon;
            const cplx x = st.position, u = static_cast<double>(st.parity) * u0_;
            auto [s_exit, edge, lambda] = exit_of(p, x, u);
            if (edge < 0) throw Error(ErrorKind::InvalidArgument, "flow left its polygon; start must be interior");
            double remaining = budget - used;
            std::optional<double> cut = on_piece(p, x, u, s_exit, st.parity, st.length);
            if (cut && *cut <= remaining) {
                finish(st, pieces, p, x, u, *cut, used);
                return Termination::ClosedUp;
            }
            if (s_exit >= remaining) {
                finish(st, pieces, p, x, u, remaining, used);
                return Termination::MaxLength;
            }
            finish(st, pieces, p, x, u, s_exit, used);
            double len = std::abs(s_.vertex(p, edge + 1) - s_.vertex(p, edge));
            int at_vertex = -1;
            if (lambda * len < kHit) at_vertex = edge;
            else if ((1 - lambda) * len < kHit) at_vertex = edge + 1;
            if (at_vertex >= 0) {
                int n = s_.edge_count(p);
                at_vertex = ((at_vertex % n) + n) % n;
                int c = corner_class_.at({p, at_vertex});
                if (report_.vertex_classes[c].angle_pi != 2) {
                    st.position = s_.vertex(p, at_vertex);
                    return Termination::ConePoint;
                }
                pass_vertex(st, p, at_vertex, u, crossings);
                continue;
            }
            EdgeRef e{p, edge};
            crossings.push_back(s_.gluing_of(e).first);
            st.position = s_.map_point(e, st.position);
            st.parity *= s_.sign_of(e);
            st.polygon = s_.partner(e).polygon;
        }
        throw Error(ErrorKind::NoRecurrenceWithinBudget, "flow exceeded the piece budget");
    }

private:
    struct Exit {
        double s;
        int edge;
        double lambda;
    };

    Exit exit_of(int p, cplx x, cplx u) const {
        Exit best{INFINITY, -1, 0};
        const int n = s_.edge_count(p);
        double scale = 1.0;
        for (int k = 0; k < n; ++k) scale = std::max(scale, std::abs(s_.vertex(p, k)));
        for (int k = 0; k < n; ++k) {
            cplx a = s_.vertex(p, k), d = s_.vertex(p, k + 1) - a;
            double den = cross(u, d);
            if (std::abs(den) < 1e-300) continue;
            double s = cross(a - x, d) / den;
            double lambda = cross(a - x, u) / den;
            if (s <= 1e-12 * scale || lambda < -1e-12 || lambda > 1 + 1e-12) continue;
            if (s < best.s) best = {s, k, std::clamp(lambda, 0.0, 1.0)};
        }
        return best;
    }

    void finish(FlowState& st, std::vector<FlowPiece>& pieces, int p, cplx x, cplx u, double len, double& used) {
        cplx y = x + len * u;
        pieces.push_back({p, x, y, st.parity});
        st.position = y;
        st.length += len;
        used += len;
    }

    // Continue straight through a regular (angle 2π) vertex by walking the
    // corners counterclockwise until half a turn has been swept.
    void pass_vertex(FlowState& st, int p, int v, cplx u, std::vector<int>& crossings) {
        auto out_dir = [&](int q, int k) { return s_.vertex(q, k + 1) - s_.vertex(q, k); };
        auto back_dir = [&](int q, int k) { return s_.vertex(q, k - 1) - s_.vertex(q, k); };
        double target = ccw_angle(out_dir(p, v), -u);
        if (target > 2.0 * M_PI - 1e-12) target = 0.0;
        target += M_PI;
        int q = p, k = v, parity = st.parity;
        for (int hop = 0; hop < 256; ++hop) {
            double alpha = ccw_angle(out_dir(q, k), back_dir(q, k));
            if (target < alpha - 1e-12) {
                st.polygon = q;
                st.position = s_.vertex(q, k);
                st.parity = parity;
                return;
            }
            target -= alpha;
            int n = s_.edge_count(q);
            EdgeRef e{q, ((k - 1) % n + n) % n};
            crossings.push_back(s_.gluing_of(e).first);
            parity *= s_.sign_of(e);
            EdgeRef next = s_.partner(e);
            q = next.polygon;
            k = next.edge;
        }
        throw Error(ErrorKind::NonManifoldCorner, "corner walk did not terminate");
    }

    const PolygonSurface& s_;
    cplx u0_;
    SingularityReport report_;
    std::map<std::pair<int, int>, int> corner_class_;
};

bool inside(const PolygonSurface& s, const FlowStart& st) {
    const int n = s.edge_count(st.polygon);
    for (int k = 0; k < n; ++k)
        if (cross(s.vertex(st.polygon, k + 1) - s.vertex(st.polygon, k), st.point - s.vertex(st.polygon, k)) <= 0)
            return false;
    return true;
}

FlatTrajectory flow(const PolygonSurface& s, const FlowStart& origin, FlowState from, double theta, double length) {
    if (origin.polygon < 0 || origin.polygon >= static_cast<int>(s.polygons().size()))
        throw Error(ErrorKind::InvalidArgument, "start polygon out of range");
    if (!inside(s, origin)) throw Error(ErrorKind::InvalidArgument, "start point must lie inside its polygon");
    if (!(length >= 0)) throw Error(ErrorKind::InvalidArgument, "max length must be non-negative");
    Walker w(s, theta);
    FlatTrajectory tr;
    tr.theta = theta;
    double start_length = from.length;
    tr.terminated = w.run(from, length, tr.pieces, tr.crossings,
                          [&](int p, cplx x, cplx u, double s_exit, int parity, double before) -> std::optional<double> {
                              if (p != origin.polygon || parity != 1) return std::nullopt;
                              double t = (std::conj(u) * (origin.point - x)).real();
                              if (t <= kHit || t > s_exit + kHit || before + t <= kHit) return std::nullopt;
                              if (std::abs(origin.point - (x + t * u)) >= kHit) return std::nullopt;
                              return t;
                          });
    if (tr.terminated == Termination::ClosedUp) from.position = origin.point;
    tr.end = from;
    tr.total_length = from.length - start_length;
    return tr;
}

} // namespace

FlatTrajectory trace_flow(const PolygonSurface& s, const FlowStart& start, double theta, double max_length) {
    return flow(s, start, FlowState{start.polygon, start.point, 1, 0.0}, theta, max_length);
}

FlatTrajectory continue_flow(const PolygonSurface& s, const FlowStart& origin, const FlowState& from, double theta,
                             double extra) {
    return flow(s, origin, from, theta, extra);
}

WkbLoop find_wkb_loop(const PolygonSurface& s, const FlowStart& start, double theta, const LoopOptions& opts) {
    if (!inside(s, start)) throw Error(ErrorKind::InvalidArgument, "start point must lie inside its polygon");
    Walker w(s, theta);
    const double eta = opts.eta > 0 ? opts.eta : 0.01 * s.min_edge_length();
    auto axis = [&](cplx v) { return opts.convention == Convention::Imaginary ? v.imag() : v.real(); };
    const cplx u0 = w.u0();
    if (!(axis(u0) > 0))
        throw Error(ErrorKind::ConnectorNotTransverse, "leaf direction is not increasing along the chosen axis");

    WkbLoop loop;
    loop.theta = theta;
    loop.start = start;
    FlowState st{start.polygon, start.point, 1, 0.0};
    std::optional<cplx> closest;
    Termination t = w.run(st, opts.max_length, loop.pieces, loop.crossings,
                          [&](int p, cplx x, cplx u, double s_exit, int parity, double before) -> std::optional<double> {
                              if (p != start.polygon || parity != 1) return std::nullopt;
                              double tt = std::clamp((std::conj(u) * (start.point - x)).real(), 0.0, s_exit);
                              cplx c = x + tt * u;
                              if (std::abs(start.point - c) >= eta || before + tt <= 2.0 * eta) return std::nullopt;
                              // Stop a little short so the connector chord leans forward along the leaf.
                              cplx perp = start.point - c;
                              double tau = std::max(0.5 * eta, 2.0 * std::abs(perp) / axis(u0));
                              tau = std::min(tau, tt);
                              closest = c;
                              return tt - tau;
                          });
    if (t != Termination::ClosedUp || !closest) {
        throw Error(ErrorKind::NoRecurrenceWithinBudget,
                    t == Termination::ConePoint ? "leaf ran into a cone point before recurring"
                                                : "no recurrence within the length budget");
    }
    loop.connector_from = st.position;
    loop.connector_to = start.point;
    cplx chord = loop.connector_to - loop.connector_from;

    double margin = INFINITY;
    for (const auto& piece : loop.pieces) margin = std::min(margin, axis(static_cast<double>(piece.parity) * u0));
    if (!(margin > 0))
        throw Error(ErrorKind::ConnectorNotTransverse, "leaf reverses the chosen axis across a half-translation");
    if (std::abs(chord) > 0) margin = std::min(margin, axis(chord) / std::abs(chord));
    if (!(margin > 0)) throw Error(ErrorKind::ConnectorNotTransverse, "connector chord is not transverse");

    loop.period_Z = u0 * st.length + chord;
    loop.margin = margin;
    loop.is_wkb = true;
    if (std::abs(loop.period_Z) == 0) throw Error(ErrorKind::NoRecurrenceWithinBudget, "loop has zero period");
    return loop;
}

bool lift_check(const PolygonSurface& s, const WkbLoop& loop) {
    int sign = 1;
    for (int id : loop.crossings) sign *= s.identifications().at(id).sign;
    return sign == 1;
}

namespace {

struct Cell {
    int col, row;
    // Optional midpoint on sides bottom, right, top, left.
    bool split[4] = {false, false, false, false};
};

// Edge index of side `side` (0 bottom, 1 right, 2 top, 3 left), half h (0/1 in CCW order).
int side_edge(const Cell& c, int side, int h) {
    int idx = 0;
    for (int s = 0; s < side; ++s) idx += c.split[s] ? 2 : 1;
    return idx + (c.split[side] ? h : 0);
}

PolygonSurface build(std::vector<Cell> cells, const std::vector<double>& widths, const std::vector<double>& heights,
                     int fold_cell, bool fold_vertical) {
    int cols = 0, rows = 0;
    for (const auto& c : cells) cols = std::max(cols, c.col + 1), rows = std::max(rows, c.row + 1);
    auto width = [&](int c) { return c < static_cast<int>(widths.size()) ? widths[c] : 1.0; };
    auto height = [&](int r) { return r < static_cast<int>(heights.size()) ? heights[r] : 1.0; };
    std::vector<double> xs(cols + 1, 0.0), ys(rows + 1, 0.0);
    for (int c = 0; c < cols; ++c) xs[c + 1] = xs[c] + width(c);
    for (int r = 0; r < rows; ++r) ys[r + 1] = ys[r] + height(r);

    if (fold_cell >= 0) {
        auto& c = cells[fold_cell];
        if (fold_vertical) c.split[0] = c.split[2] = true;
        else c.split[1] = c.split[3] = true;
    }
    std::vector<std::vector<cplx>> polys;
    for (const auto& c : cells) {
        double x0 = xs[c.col], x1 = xs[c.col + 1], y0 = ys[c.row], y1 = ys[c.row + 1];
        cplx corner[4] = {{x0, y0}, {x1, y0}, {x1, y1}, {x0, y1}};
        std::vector<cplx> poly;
        for (int s = 0; s < 4; ++s) {
            poly.push_back(corner[s]);
            if (c.split[s]) poly.push_back(0.5 * (corner[s] + corner[(s + 1) % 4]));
        }
        polys.push_back(poly);
    }
    auto find = [&](int col, int row) {
        for (std::size_t i = 0; i < cells.size(); ++i)
            if (cells[i].col == col && cells[i].row == row) return static_cast<int>(i);
        return -1;
    };
    std::vector<Identification> ids;
    auto glue = [&](int a, int side_a, int b, int side_b) {
        ids.push_back({{a, side_edge(cells[a], side_a, 0)}, {b, side_edge(cells[b], side_b, 0)}, 1});
    };
    for (std::size_t i = 0; i < cells.size(); ++i) {
        int right = find(cells[i].col + 1, cells[i].row), up = find(cells[i].col, cells[i].row + 1);
        if (right >= 0) glue(static_cast<int>(i), 1, right, 3);
        if (up >= 0) glue(static_cast<int>(i), 2, up, 0);
    }
    auto fold = [&](int cell, int side) {
        ids.push_back({{cell, side_edge(cells[cell], side, 0)}, {cell, side_edge(cells[cell], side, 1)}, -1});
    };
    for (int r = 0; r < rows; ++r) {
        int first = -1, last = -1;
        for (int c = 0; c < cols; ++c)
            if (int i = find(c, r); i >= 0) {
                if (first < 0) first = i;
                last = i;
            }
        if (first < 0) continue;
        if (first == fold_cell && last == fold_cell && !fold_vertical) {
            fold(first, 1);
            fold(first, 3);
        } else {
            glue(last, 1, first, 3);
        }
    }
    for (int c = 0; c < cols; ++c) {
        int first = -1, last = -1;
        for (int r = 0; r < rows; ++r)
            if (int i = find(c, r); i >= 0) {
                if (first < 0) first = i;
                last = i;
            }
        if (first < 0) continue;
        if (first == fold_cell && last == fold_cell && fold_vertical) {
            fold(first, 0);
            fold(first, 2);
        } else {
            glue(last, 2, first, 0);
        }
    }
    return PolygonSurface(std::move(polys), std::move(ids));
}

std::vector<Cell> staircase_cells(int count, StaircaseStyle style) {
    if (count < 1) throw Error(ErrorKind::InvalidArgument, "staircase needs at least one rectangle");
    std::vector<Cell> cells;
    for (int i = 0; i < count; ++i) {
        int j = i / 2; // pair index
        if (style == StaircaseStyle::Left) cells.push_back({i % 2 == 0 ? j : j + 1, j});
        else cells.push_back({j, i % 2 == 0 ? j : j + 1});
    }
    return cells;
}

} // namespace

PolygonSurface staircase(int count, StaircaseStyle style, const std::vector<double>& widths,
                         const std::vector<double>& heights) {
    for (double w : widths)
        if (!(w > 0)) throw Error(ErrorKind::InvalidArgument, "rectangle widths must be positive");
    for (double h : heights)
        if (!(h > 0)) throw Error(ErrorKind::InvalidArgument, "rectangle heights must be positive");
    return build(staircase_cells(count, style), widths, heights, -1, false);
}

PolygonSurface half_staircase(int count, StaircaseStyle style) {
    // Left style: the first column holds only the first rectangle, so its bottom
    // and top are folded. Right style: the first row, so its sides are folded.
    return build(staircase_cells(count, style), {}, {}, 0, style == StaircaseStyle::Left);
}

PolygonSurface flat_torus() { return staircase(1, StaircaseStyle::Left); }

} // namespace nilwkb::surface
