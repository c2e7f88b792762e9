#include "nilwkb/holonomy/path.hpp"

#include <algorithm>
#include <cmath>

#include "nilwkb/error.hpp"

namespace nilwkb::holonomy {

namespace {

constexpr double kJoinTol = 1e-12;

cplx arc_point(const ArcSegment& a, double angle) { return a.center + std::polar(a.radius, angle); }

double wrap_angle(double x) {
    const double two_pi = 2.0 * M_PI;
    x = std::fmod(x, two_pi);
    return x < 0 ? x + two_pi : x;
}

} // namespace

cplx segment_start(const Segment& s) {
    if (auto* l = std::get_if<LineSegment>(&s)) return l->from;
    const auto& a = std::get<ArcSegment>(s);
    return arc_point(a, a.angle0);
}

cplx segment_end(const Segment& s) {
    if (auto* l = std::get_if<LineSegment>(&s)) return l->to;
    const auto& a = std::get<ArcSegment>(s);
    return arc_point(a, a.angle1);
}

double segment_length(const Segment& s) {
    if (auto* l = std::get_if<LineSegment>(&s)) return std::abs(l->to - l->from);
    const auto& a = std::get<ArcSegment>(s);
    return std::abs(a.radius * (a.angle1 - a.angle0));
}

double segment_distance(const Segment& s, cplx p) {
    if (auto* l = std::get_if<LineSegment>(&s)) {
        cplx d = l->to - l->from;
        double len2 = std::norm(d);
        double u = len2 > 0 ? std::clamp(((p - l->from) * std::conj(d)).real() / len2, 0.0, 1.0) : 0.0;
        return std::abs(p - (l->from + u * d));
    }
    const auto& a = std::get<ArcSegment>(s);
    double lo = std::min(a.angle0, a.angle1), hi = std::max(a.angle0, a.angle1);
    double best = std::min(std::abs(p - arc_point(a, a.angle0)), std::abs(p - arc_point(a, a.angle1)));
    cplx rel = p - a.center;
    if (std::abs(rel) > 0) {
        double ang = std::arg(rel);
        // Is some representative of ang inside [lo, hi]?
        double k = std::ceil((lo - ang) / (2.0 * M_PI));
        double rep = ang + k * 2.0 * M_PI;
        if (rep <= hi || hi - lo >= 2.0 * M_PI) best = std::min(best, std::abs(std::abs(rel) - a.radius));
    } else {
        best = std::min(best, a.radius);
    }
    (void)wrap_angle;
    return best;
}

ParamPath::ParamPath(std::vector<Segment> segments, bool closed) : segments_(std::move(segments)), closed_(closed) {
    if (segments_.empty()) throw Error(ErrorKind::InvalidArgument, "path has no segments");
    double scale = 1.0;
    for (const auto& s : segments_) {
        double len = segment_length(s);
        if (!(len > 0)) throw Error(ErrorKind::InvalidArgument, "path segment has zero length");
        if (auto* a = std::get_if<ArcSegment>(&s); a && !(a->radius > 0))
            throw Error(ErrorKind::InvalidArgument, "arc radius must be positive");
        length_ += len;
        scale = std::max({scale, std::abs(segment_start(s)), std::abs(segment_end(s))});
    }
    for (std::size_t k = 1; k < segments_.size(); ++k)
        if (std::abs(segment_end(segments_[k - 1]) - segment_start(segments_[k])) > kJoinTol * scale)
            throw Error(ErrorKind::InvalidArgument, "consecutive path segments do not share endpoints");
    if (closed_ && std::abs(segment_end(segments_.back()) - segment_start(segments_.front())) > kJoinTol * scale)
        throw Error(ErrorKind::InvalidArgument, "closed path does not return to its start");
    breaks_.push_back(0.0);
    double acc = 0.0;
    for (const auto& s : segments_) {
        acc += segment_length(s);
        breaks_.push_back(acc / length_);
    }
    breaks_.back() = 1.0;
}

std::size_t ParamPath::locate(double t, double& local) const {
    t = std::clamp(t, 0.0, 1.0);
    auto it = std::upper_bound(breaks_.begin(), breaks_.end(), t);
    std::size_t k = it == breaks_.begin() ? 0 : static_cast<std::size_t>(it - breaks_.begin()) - 1;
    if (k >= segments_.size()) k = segments_.size() - 1;
    local = (t - breaks_[k]) / (breaks_[k + 1] - breaks_[k]);
    return k;
}

cplx ParamPath::point(double t) const {
    double s;
    const Segment& seg = segments_[locate(t, s)];
    if (auto* l = std::get_if<LineSegment>(&seg)) return l->from + s * (l->to - l->from);
    const auto& a = std::get<ArcSegment>(seg);
    return arc_point(a, a.angle0 + s * (a.angle1 - a.angle0));
}

cplx ParamPath::velocity(double t) const {
    double s;
    std::size_t k = locate(t, s);
    double width = breaks_[k + 1] - breaks_[k];
    const Segment& seg = segments_[k];
    if (auto* l = std::get_if<LineSegment>(&seg)) return (l->to - l->from) / width;
    const auto& a = std::get<ArcSegment>(seg);
    double ang = a.angle0 + s * (a.angle1 - a.angle0);
    return cplx(0, 1) * std::polar(a.radius, ang) * (a.angle1 - a.angle0) / width;
}

ParamPath ParamPath::reversed() const {
    std::vector<Segment> rev;
    for (auto it = segments_.rbegin(); it != segments_.rend(); ++it) {
        if (auto* l = std::get_if<LineSegment>(&*it))
            rev.push_back(LineSegment{l->to, l->from});
        else {
            auto a = std::get<ArcSegment>(*it);
            std::swap(a.angle0, a.angle1);
            rev.push_back(a);
        }
    }
    return ParamPath(std::move(rev), closed_);
}

ParamPath ParamPath::then(const ParamPath& next) const {
    std::vector<Segment> all = segments_;
    all.insert(all.end(), next.segments_.begin(), next.segments_.end());
    bool closed = std::abs(segment_end(all.back()) - segment_start(all.front())) <= kJoinTol * (1.0 + std::abs(segment_start(all.front())));
    return ParamPath(std::move(all), closed);
}

double ParamPath::distance_to(cplx p) const {
    double d = INFINITY;
    for (const auto& s : segments_) d = std::min(d, segment_distance(s, p));
    return d;
}

} // namespace nilwkb::holonomy
