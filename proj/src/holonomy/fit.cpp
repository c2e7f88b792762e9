#include "nilwkb/holonomy/fit.hpp"

#include <algorithm>
#include <cmath>

#include "nilwkb/error.hpp"

namespace nilwkb::holonomy {

std::vector<mpq_class> default_exponents(int rank) {
    std::vector<mpq_class> out;
    for (int m = 1; m <= std::max(rank, 1); ++m) out.emplace_back(1, m);
    return out;
}

namespace {

struct Line {
    cplx slope, intercept;
    double rms;
};

Line fit_line(const std::vector<double>& x, const std::vector<cplx>& y) {
    const double n = static_cast<double>(x.size());
    double mx = 0;
    cplx my = 0;
    for (std::size_t k = 0; k < x.size(); ++k) mx += x[k], my += y[k];
    mx /= n, my /= n;
    double sxx = 0;
    cplx sxy = 0;
    for (std::size_t k = 0; k < x.size(); ++k) {
        sxx += (x[k] - mx) * (x[k] - mx);
        sxy += (x[k] - mx) * (y[k] - my);
    }
    cplx slope = sxx > 0 ? sxy / sxx : 0.0;
    cplx icpt = my - slope * mx;
    double ss = 0;
    for (std::size_t k = 0; k < x.size(); ++k) ss += std::norm(y[k] - slope * x[k] - icpt);
    return {slope, icpt, std::sqrt(ss / n)};
}

} // namespace

WkbFit wkb_fit(const std::vector<HolonomySample>& samples, const std::vector<mpq_class>& candidates,
               const FitOptions& opts) {
    if (samples.size() < 6) throw Error(ErrorKind::InsufficientSamples, "need at least 6 samples");
    if (candidates.empty()) throw Error(ErrorKind::InvalidArgument, "no candidate exponents");
    for (const auto& c : candidates)
        if (sgn(c) <= 0) throw Error(ErrorKind::InvalidArgument, "candidate exponents must be positive");
    std::vector<const HolonomySample*> s;
    for (const auto& x : samples) {
        if (!(x.epsilon > 0)) throw Error(ErrorKind::InsufficientSamples, "epsilon values must be positive");
        if (x.trace == cplx(0)) throw Error(ErrorKind::NonDecayingSequence, "trace vanishes at a sample");
        s.push_back(&x);
    }
    std::sort(s.begin(), s.end(), [](auto a, auto b) { return a->epsilon > b->epsilon; });
    for (std::size_t k = 1; k < s.size(); ++k)
        if (!(s[k]->epsilon < s[k - 1]->epsilon))
            throw Error(ErrorKind::InsufficientSamples, "epsilon values must be distinct");
    if (s.front()->epsilon / s.back()->epsilon < 8.0)
        throw Error(ErrorKind::InsufficientSamples, "epsilon range spans less than a factor 8");

    // Unwound complex logarithm along decreasing ε.
    std::vector<cplx> logs;
    double prev_arg = 0;
    for (std::size_t k = 0; k < s.size(); ++k) {
        double a = std::arg(s[k]->trace);
        if (k > 0) a += 2.0 * M_PI * std::round((prev_arg - a) / (2.0 * M_PI));
        prev_arg = a;
        logs.emplace_back(std::log(std::abs(s[k]->trace)), a);
    }
    double growth = logs.back().real() - logs.front().real();
    double spread = 0;
    for (const auto& l : logs) spread = std::max(spread, std::abs(l.real() - logs.front().real()));
    if (!(growth > 1e-9 * (1.0 + std::abs(logs.front().real()))) || spread <= 1e-12)
        throw Error(ErrorKind::NonDecayingSequence, "log|trace| does not grow as epsilon decreases");

    std::size_t tail = std::max<std::size_t>(3, static_cast<std::size_t>(std::ceil(opts.tail_fraction * s.size())));
    tail = std::min(tail, s.size());
    std::vector<double> eps;
    std::vector<cplx> y;
    for (std::size_t k = s.size() - tail; k < s.size(); ++k) eps.push_back(s[k]->epsilon), y.push_back(logs[k]);

    auto fit_at = [&](double p) {
        std::vector<double> x;
        for (double e : eps) x.push_back(std::pow(e, -p));
        return fit_line(x, y);
    };

    WkbFit out;
    out.tail_size = static_cast<int>(tail);
    double best = INFINITY;
    for (const auto& c : candidates) {
        Line l = fit_at(c.get_d());
        out.candidates.push_back({c, l.slope, l.intercept, l.rms});
        if (l.rms < best) {
            best = l.rms;
            out.exponent_exact = c;
            out.exponent_p = c.get_d();
            out.Z = l.slope;
            out.offset = l.intercept;
            out.residual = l.rms;
        }
    }
    if (!(out.Z.real() > 0)) throw Error(ErrorKind::NonDecayingSequence, "fitted Z has non-positive real part");

    // Free exponent: log-spaced scan, then golden section around the best cell.
    const double lo = std::log(0.02), hi = std::log(2.0);
    const int scan = 200;
    auto resid = [&](double lp) { return fit_at(std::exp(lp)).rms; };
    int arg_best = 0;
    double r_best = INFINITY;
    for (int k = 0; k <= scan; ++k) {
        double r = resid(lo + (hi - lo) * k / scan);
        if (r < r_best) r_best = r, arg_best = k;
    }
    double a = lo + (hi - lo) * std::max(arg_best - 1, 0) / scan;
    double b = lo + (hi - lo) * std::min(arg_best + 1, scan) / scan;
    const double g = 0.5 * (std::sqrt(5.0) - 1.0);
    double x1 = b - g * (b - a), x2 = a + g * (b - a), f1 = resid(x1), f2 = resid(x2);
    for (int it = 0; it < 100 && b - a > 1e-12; ++it) {
        if (f1 < f2) {
            b = x2, x2 = x1, f2 = f1;
            x1 = b - g * (b - a), f1 = resid(x1);
        } else {
            a = x1, x1 = x2, f1 = f2;
            x2 = a + g * (b - a), f2 = resid(x2);
        }
    }
    double lp = f1 < f2 ? x1 : x2;
    out.free_exponent = std::exp(lp);
    out.free_residual = std::min(f1, f2);
    if (r_best < out.free_residual) {
        out.free_exponent = std::exp(lo + (hi - lo) * arg_best / scan);
        out.free_residual = r_best;
    }

    std::vector<double> x;
    std::vector<cplx> ym;
    for (std::size_t k = 0; k < eps.size(); ++k) x.push_back(std::pow(eps[k], -out.exponent_p)), ym.push_back(y[k].real());
    Line m = fit_line(x, ym);
    out.modulus_re_Z = m.slope.real();
    out.modulus_offset = m.intercept.real();
    out.modulus_residual = m.rms;
    return out;
}

} // namespace nilwkb::holonomy
