#pragma once

#include <complex>
#include <variant>
#include <vector>

namespace nilwkb::holonomy {

using cplx = std::complex<double>;

struct LineSegment {
    cplx from;
    cplx to;
};

struct ArcSegment {
    cplx center;
    double radius = 1.0;
    double angle0 = 0.0; // radians
    double angle1 = 0.0;
};

using Segment = std::variant<LineSegment, ArcSegment>;

cplx segment_start(const Segment& s);
cplx segment_end(const Segment& s);
double segment_length(const Segment& s);
// Distance from p to the image of the segment.
double segment_distance(const Segment& s, cplx p);

// Piecewise smooth path on [0, 1]; segment k occupies [t_k, t_{k+1}] with
// widths proportional to arc length.
class ParamPath {
public:
    ParamPath() = default;
    ParamPath(std::vector<Segment> segments, bool closed);

    static ParamPath line(cplx from, cplx to) { return ParamPath({LineSegment{from, to}}, false); }
    static ParamPath circle(cplx center, double radius) {
        return ParamPath({ArcSegment{center, radius, 0.0, 2.0 * 3.14159265358979323846}}, true);
    }

    const std::vector<Segment>& segments() const { return segments_; }
    bool closed() const { return closed_; }
    double length() const { return length_; }
    // t_0 = 0 < t_1 < … < t_K = 1.
    const std::vector<double>& breakpoints() const { return breaks_; }

    cplx point(double t) const;
    cplx velocity(double t) const; // dγ/dt
    // Same curve traversed backwards.
    ParamPath reversed() const;
    // This path followed by `next` (endpoints must match).
    ParamPath then(const ParamPath& next) const;
    double distance_to(cplx p) const;

private:
    std::size_t locate(double t, double& local) const;

    std::vector<Segment> segments_;
    std::vector<double> breaks_;
    bool closed_ = false;
    double length_ = 0.0;
};

} // namespace nilwkb::holonomy
