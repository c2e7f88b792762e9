#include "nilwkb/holonomy/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include <Eigen/Eigenvalues>

#include "nilwkb/error.hpp"

namespace nilwkb::holonomy {

std::vector<cplx> spectrum(const Eigen::MatrixXcd& p) {
    if (p.rows() == 2 && std::abs(p.trace()) <= 1e-14 * (1.0 + p.norm())) {
        cplx mu = std::sqrt(0.5 * (p * p).trace());
        return {mu, -mu};
    }
    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(p, false);
    const auto& ev = es.eigenvalues();
    return std::vector<cplx>(ev.data(), ev.data() + ev.size());
}

namespace {

double min_separation(const std::vector<cplx>& v) {
    double s = INFINITY;
    for (std::size_t i = 0; i < v.size(); ++i)
        for (std::size_t j = i + 1; j < v.size(); ++j) s = std::min(s, std::abs(v[i] - v[j]));
    return s;
}

// Reorders `next` so that next[k] continues prev[k] (minimal total displacement).
std::vector<cplx> match(const std::vector<cplx>& prev, std::vector<cplx> next) {
    const std::size_t n = prev.size();
    if (n <= 6) {
        std::vector<std::size_t> perm(n), best;
        std::iota(perm.begin(), perm.end(), 0);
        double best_cost = INFINITY;
        do {
            double c = 0;
            for (std::size_t k = 0; k < n; ++k) c += std::abs(next[perm[k]] - prev[k]);
            if (c < best_cost) best_cost = c, best = perm;
        } while (std::next_permutation(perm.begin(), perm.end()));
        std::vector<cplx> out(n);
        for (std::size_t k = 0; k < n; ++k) out[k] = next[best[k]];
        return out;
    }
    std::vector<cplx> out(n);
    for (std::size_t k = 0; k < n; ++k) {
        auto it = std::min_element(next.begin(), next.end(),
                                   [&](cplx a, cplx b) { return std::abs(a - prev[k]) < std::abs(b - prev[k]); });
        out[k] = *it;
        next.erase(it);
    }
    return out;
}

Eigen::MatrixXcd pulled_back(const ScaledForm& phi, const ParamPath& path, double t) {
    cplx z = path.point(t), v = path.velocity(t);
    Eigen::MatrixXcd m = phi.form.dz_part().eval(z) * v;
    if (!phi.form.dzbar_part().is_zero()) m += phi.form.dzbar_part().eval(z) * std::conj(v);
    return phi.scale * m;
}

} // namespace

EigenTrack::EigenTrack(ScaledForm phi, ParamPath path, const TrackOptions& opts)
    : phi_(std::move(phi)), path_(std::move(path)), n_(phi_.form.size()), branch_tol_(opts.branch_tol) {
    if (n_ < 1) throw Error(ErrorKind::DimensionMismatch, "empty Higgs field");
    std::vector<cplx> start = eigenvalues_at(0.0);
    if (discriminant(0.0) < branch_tol_) throw Error(ErrorKind::BranchPointOnPath, "eigenvalues collide at t = 0");
    if (opts.seed) {
        if (static_cast<int>(opts.seed->size()) > n_) throw Error(ErrorKind::DimensionMismatch, "too many seed values");
        const std::vector<cplx>& seeded = *opts.seed;
        // Unseeded branches follow in order of decreasing real part.
        std::vector<cplx> ordered;
        std::vector<cplx> pool = eigenvalues_at(0.0);
        for (cplx s : seeded) {
            auto it = std::min_element(pool.begin(), pool.end(),
                                       [&](cplx a, cplx b) { return std::abs(a - s) < std::abs(b - s); });
            ordered.push_back(*it);
            pool.erase(it);
        }
        std::sort(pool.begin(), pool.end(), [](cplx a, cplx b) { return a.real() > b.real(); });
        ordered.insert(ordered.end(), pool.begin(), pool.end());
        start = ordered;
    } else {
        std::sort(start.begin(), start.end(), [](cplx a, cplx b) { return a.real() > b.real(); });
        double scale = 1.0;
        for (cplx m : start) scale = std::max(scale, std::abs(m));
        if (n_ >= 2 && start[0].real() - start[1].real() <= 1e-12 * scale)
            throw Error(ErrorKind::TieAtStart, "leading eigenvalue real parts tie at t = 0");
    }

    std::vector<double> grid;
    const int samples = std::max(opts.samples, 8);
    for (int k = 0; k <= samples; ++k) grid.push_back(static_cast<double>(k) / samples);
    for (double b : path_.breakpoints()) grid.push_back(b);
    std::sort(grid.begin(), grid.end());
    grid.erase(std::unique(grid.begin(), grid.end()), grid.end());

    t_.push_back(0.0);
    mu_.push_back(start);
    // Advance with bisection whenever a step moves a branch by more than a quarter of the gap.
    auto advance = [&](auto&& self, double ta, const std::vector<cplx>& va, double tb, int depth) -> void {
        std::vector<cplx> vb = matched(va, tb);
        double moved = 0;
        for (int k = 0; k < n_; ++k) moved = std::max(moved, std::abs(vb[k] - va[k]));
        if (n_ > 1 && moved > 0.25 * min_separation(va) && depth < 40) {
            double tm = 0.5 * (ta + tb);
            self(self, ta, va, tm, depth + 1);
            self(self, tm, mu_.back(), tb, depth + 1);
            return;
        }
        t_.push_back(tb);
        mu_.push_back(vb);
    };
    for (std::size_t i = 1; i < grid.size(); ++i) advance(advance, t_.back(), mu_.back(), grid[i], 0);
    check_branch_points();
}

std::vector<cplx> EigenTrack::eigenvalues_at(double t) const { return spectrum(pulled_back(phi_, path_, t)); }

std::vector<cplx> EigenTrack::matched(const std::vector<cplx>& prev, double t) const {
    return match(prev, eigenvalues_at(t));
}

double EigenTrack::discriminant(double t) const {
    Eigen::MatrixXcd p = pulled_back(phi_, path_, t);
    if (n_ == 1) return INFINITY;
    if (n_ == 2) return std::abs(0.5 * (p * p).trace() - 0.25 * p.trace() * p.trace());
    double s = min_separation(spectrum(p));
    return s * s;
}

void EigenTrack::check_branch_points() const {
    if (n_ < 2) return;
    std::vector<double> d(t_.size());
    for (std::size_t i = 0; i < t_.size(); ++i) {
        d[i] = discriminant(t_[i]);
        if (d[i] < branch_tol_) throw Error(ErrorKind::BranchPointOnPath, "eigenvalues collide on the path");
    }
    // Golden-section search inside every bracketed local minimum.
    const double g = 0.5 * (std::sqrt(5.0) - 1.0);
    for (std::size_t i = 1; i + 1 < t_.size(); ++i) {
        if (!(d[i] <= d[i - 1] && d[i] <= d[i + 1])) continue;
        double a = t_[i - 1], b = t_[i + 1];
        double x1 = b - g * (b - a), x2 = a + g * (b - a);
        double f1 = discriminant(x1), f2 = discriminant(x2);
        for (int it = 0; it < 80 && b - a > 1e-15; ++it) {
            if (f1 < f2) {
                b = x2, x2 = x1, f2 = f1;
                x1 = b - g * (b - a), f1 = discriminant(x1);
            } else {
                a = x1, x1 = x2, f1 = f2;
                x2 = a + g * (b - a), f2 = discriminant(x2);
            }
        }
        if (std::min(f1, f2) < branch_tol_) throw Error(ErrorKind::BranchPointOnPath, "eigenvalues collide on the path");
    }
}

cplx EigenTrack::value(int k, double t) const {
    auto it = std::lower_bound(t_.begin(), t_.end(), t);
    std::size_t i = it == t_.end() ? t_.size() - 1 : static_cast<std::size_t>(it - t_.begin());
    if (i > 0 && (i == t_.size() || std::abs(t_[i - 1] - t) < std::abs(t_[i] - t))) --i;
    return matched(mu_[i], t)[k];
}

WkbCurveResult is_wkb_curve(const ScaledForm& phi, const ParamPath& path, const TrackOptions& opts) {
    std::optional<EigenTrack> track;
    try {
        track.emplace(phi, path, opts);
    } catch (const Error& e) {
        if (e.kind() == ErrorKind::TieAtStart) return {false, 0.0};
        throw;
    }
    const int n = track->branches();
    auto gap = [&](const std::vector<cplx>& v) {
        if (n == 2) return v[0].real();
        double m = INFINITY;
        for (int k = 0; k + 1 < n; ++k) m = std::min(m, v[k].real() - v[k + 1].real());
        return m;
    };
    auto gap_at = [&](double t) {
        std::vector<cplx> v(n);
        for (int k = 0; k < n; ++k) v[k] = track->value(k, t);
        return gap(v);
    };
    const auto& ts = track->times();
    const auto& vs = track->values();
    std::vector<double> g(ts.size());
    for (std::size_t i = 0; i < ts.size(); ++i) g[i] = n == 1 ? INFINITY : gap(vs[i]);
    if (n == 1) return {true, INFINITY};
    double margin = *std::min_element(g.begin(), g.end());
    // Refine around the smallest sampled minima.
    std::vector<std::size_t> idx(ts.size());
    std::iota(idx.begin(), idx.end(), 0);
    std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) { return g[a] < g[b]; });
    const double gr = 0.5 * (std::sqrt(5.0) - 1.0);
    for (std::size_t r = 0; r < std::min<std::size_t>(idx.size(), 4); ++r) {
        std::size_t i = idx[r];
        double a = ts[i == 0 ? 0 : i - 1], b = ts[std::min(i + 1, ts.size() - 1)];
        double x1 = b - gr * (b - a), x2 = a + gr * (b - a);
        double f1 = gap_at(x1), f2 = gap_at(x2);
        for (int it = 0; it < 60 && b - a > 1e-14; ++it) {
            if (f1 < f2) {
                b = x2, x2 = x1, f2 = f1;
                x1 = b - gr * (b - a), f1 = gap_at(x1);
            } else {
                a = x1, x1 = x2, f1 = f2;
                x2 = a + gr * (b - a), f2 = gap_at(x2);
            }
        }
        margin = std::min({margin, f1, f2});
    }
    return {margin > 0, margin};
}

namespace {

// Gauss–Kronrod 7/15 nodes and weights on [-1, 1].
constexpr double xgk[8] = {0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
                           0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
                           0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
                           0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr double wgk[8] = {0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
                           0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
                           0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
                           0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr double wg[4] = {0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
                          0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

template <class F>
cplx gk15(F&& f, double a, double b, double& err) {
    double c = 0.5 * (a + b), h = 0.5 * (b - a);
    cplx fc = f(c);
    cplx kron = fc * wgk[7], gauss = fc * wg[3];
    for (int j = 0; j < 7; ++j) {
        cplx f1 = f(c - h * xgk[j]), f2 = f(c + h * xgk[j]);
        kron += wgk[j] * (f1 + f2);
        if (j % 2 == 1) gauss += wg[j / 2] * (f1 + f2);
    }
    err = std::abs((kron - gauss) * h);
    return kron * h;
}

template <class F>
cplx adaptive(F&& f, double a, double b, double tol, int depth) {
    double err;
    cplx v = gk15(f, a, b, err);
    if (err <= tol || depth > 40 || b - a < 1e-14) return v;
    double m = 0.5 * (a + b);
    return adaptive(f, a, m, 0.5 * tol, depth + 1) + adaptive(f, m, b, 0.5 * tol, depth + 1);
}

} // namespace

cplx period(const EigenTrack& track, double abs_tol) {
    const auto& br = track.path().breakpoints();
    cplx total = 0;
    const double tol = abs_tol / static_cast<double>(br.size() - 1);
    auto f = [&](double t) { return track.value(0, t); };
    for (std::size_t k = 0; k + 1 < br.size(); ++k) total += adaptive(f, br[k], br[k + 1], tol, 0);
    return total;
}

cplx period(const ScaledForm& phi, const ParamPath& path, const TrackOptions& opts, double abs_tol) {
    return period(EigenTrack(phi, path, opts), abs_tol);
}

} // namespace nilwkb::holonomy
