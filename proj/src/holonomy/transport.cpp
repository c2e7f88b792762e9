#include "nilwkb/holonomy/transport.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <exception>
#include <istream>
#include <ostream>
#include <sstream>
#include <thread>

#include "nilwkb/error.hpp"

namespace nilwkb::holonomy {

NumericFamily::NumericFamily(const connection::ConnectionFamily& family, LabelScales scales)
    : rank_(family.rank()) {
    for (const auto& t : family.terms()) {
        cplx s = 1.0;
        if (auto it = scales.find(t.label); it != scales.end()) s = it->second;
        bool dz = !t.form.dz_part().is_zero(), dzb = !t.form.dzbar_part().is_zero();
        if (!dz && !dzb) continue;
        terms_.push_back({t.exponent.get_d(), s, t.form.dz_part(), t.form.dzbar_part(), dz, dzb});
    }
    for (const auto& p : family.punctures()) punctures_.push_back(p.to_complex());
}

Eigen::MatrixXcd NumericFamily::pullback(cplx z, cplx velocity, double eps) const {
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(rank_, rank_);
    const double leps = std::log(eps);
    for (const auto& t : terms_) {
        cplx w = t.scale * std::exp(t.exponent * leps);
        if (t.has_dz) m += (w * velocity) * t.dz.eval(z);
        if (t.has_dzbar) m += (w * std::conj(velocity)) * t.dzbar.eval(z);
    }
    return m;
}

double NumericFamily::clearance(const ParamPath& path) const {
    double d = INFINITY;
    for (const auto& p : punctures_) d = std::min(d, path.distance_to(p));
    return d;
}

namespace {

using Mat = Eigen::MatrixXcd;

// Dormand–Prince 5(4) tableau.
constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
constexpr double a21 = 1.0 / 5;
constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561, a54 = -212.0 / 729;
constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247, a64 = 49.0 / 176,
                 a65 = -5103.0 / 18656;
constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192, b5 = -2187.0 / 6784, b6 = 11.0 / 84;
constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920, e5 = -17253.0 / 339200,
                 e6 = 22.0 / 525, e7 = -1.0 / 40;

struct Rhs {
    const NumericFamily& fam;
    const ParamPath& path;
    double eps;
    Mat operator()(double t, const Mat& s) const {
        return -fam.pullback(path.point(t), path.velocity(t), eps) * s;
    }
};

// One DOPRI step; returns the 5th-order solution and writes the embedded error.
Mat dopri_step(const Rhs& f, double t, const Mat& y, double h, Mat* err) {
    Mat k1 = f(t, y);
    Mat k2 = f(t + c2 * h, y + h * a21 * k1);
    Mat k3 = f(t + c3 * h, y + h * (a31 * k1 + a32 * k2));
    Mat k4 = f(t + c4 * h, y + h * (a41 * k1 + a42 * k2 + a43 * k3));
    Mat k5 = f(t + c5 * h, y + h * (a51 * k1 + a52 * k2 + a53 * k3 + a54 * k4));
    Mat k6 = f(t + h, y + h * (a61 * k1 + a62 * k2 + a63 * k3 + a64 * k4 + a65 * k5));
    Mat y5 = y + h * (b1 * k1 + b3 * k3 + b4 * k4 + b5 * k5 + b6 * k6);
    if (err) {
        Mat k7 = f(t + h, y5);
        *err = h * (e1 * k1 + e3 * k3 + e4 * k4 + e5 * k5 + e6 * k6 + e7 * k7);
    }
    return y5;
}

} // namespace

HolonomySample transport(const NumericFamily& family, const ParamPath& path, double eps,
                         const TransportOptions& opts) {
    if (!(eps > 0)) throw Error(ErrorKind::InvalidArgument, "epsilon must be positive");
    if (family.clearance(path) < opts.clearance)
        throw Error(ErrorKind::ClearanceViolated, "path passes within clearance of a puncture");

    Rhs f{family, path, eps};
    const int n = family.rank();
    Mat y = Mat::Identity(n, n);
    std::vector<std::pair<double, double>> mesh; // accepted (t, h)
    long steps = 0;
    const auto& br = path.breakpoints();

    for (std::size_t seg = 0; seg + 1 < br.size(); ++seg) {
        double t = br[seg], t_end = br[seg + 1];
        double span = t_end - t;
        double mnorm = f.fam.pullback(path.point(t), path.velocity(t), eps).norm();
        double h = std::min(span, 0.1 / std::max(mnorm, 1e-300));
        h = std::min(h, span);
        while (t < t_end) {
            if (++steps > opts.max_steps)
                throw Error(ErrorKind::StiffnessBudgetExceeded, "transport exceeded the step budget");
            bool last = t + h >= t_end;
            if (last) h = t_end - t;
            Mat err;
            Mat y_new = dopri_step(f, t, y, h, &err);
            double scale = std::max(y.norm(), y_new.norm());
            double ratio = err.norm() / (opts.rel_tol * scale + 1e-300);
            if (!std::isfinite(ratio) || !y_new.allFinite())
                throw Error(ErrorKind::StiffnessBudgetExceeded, "transport produced non-finite values");
            if (ratio <= 1.0) {
                mesh.emplace_back(t, h);
                y = std::move(y_new);
                t = last ? t_end : t + h;
            }
            double fac = ratio > 0 ? 0.9 * std::pow(ratio, -0.2) : 5.0;
            h *= std::clamp(fac, 0.2, 5.0);
            if (h < 1e-15 * std::max(1.0, std::abs(t)) && t < t_end)
                throw Error(ErrorKind::StiffnessBudgetExceeded, "transport step size underflow");
        }
    }

    // Rerun on the accepted mesh with every step halved.
    Mat z = Mat::Identity(n, n);
    for (auto [t, h] : mesh) {
        z = dopri_step(f, t, z, h / 2, nullptr);
        z = dopri_step(f, t + h / 2, z, h / 2, nullptr);
    }
    HolonomySample out;
    out.epsilon = eps;
    out.est_error = (y - z).norm();
    out.holonomy = std::move(z);
    out.trace = out.holonomy.trace();
    return out;
}

std::vector<HolonomySample> transport_grid(const NumericFamily& family, const ParamPath& path,
                                           const std::vector<double>& eps, const TransportOptions& opts,
                                           unsigned threads) {
    if (threads == 0) {
        if (const char* env = std::getenv("NILWKB_THREADS")) threads = static_cast<unsigned>(std::atoi(env));
        if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
    }
    threads = std::min<unsigned>(threads, std::max<std::size_t>(eps.size(), 1));
    std::vector<HolonomySample> out(eps.size());
    std::vector<std::exception_ptr> errors(eps.size());
    std::atomic<std::size_t> next{0};
    auto work = [&] {
        for (std::size_t i; (i = next.fetch_add(1)) < eps.size();) {
            try {
                out[i] = transport(family, path, eps[i], opts);
            } catch (...) {
                errors[i] = std::current_exception();
            }
        }
    };
    std::vector<std::thread> pool;
    for (unsigned k = 1; k < threads; ++k) pool.emplace_back(work);
    work();
    for (auto& th : pool) th.join();
    // Report the failure at the smallest index so output does not depend on scheduling.
    for (auto& e : errors)
        if (e) std::rethrow_exception(e);
    return out;
}

std::vector<double> geometric_grid(double start, double end, int count) {
    if (count < 1 || !(start > 0) || !(end > 0))
        throw Error(ErrorKind::InvalidArgument, "geometric grid needs positive endpoints and count");
    if (count > 1 && start == end) throw Error(ErrorKind::InvalidArgument, "epsilon grid must be strictly monotone");
    std::vector<double> g(count);
    for (int k = 0; k < count; ++k)
        g[k] = count == 1 ? start : start * std::pow(end / start, static_cast<double>(k) / (count - 1));
    return g;
}

std::vector<double> parse_eps_grid(const std::string& spec) {
    std::vector<std::string> parts;
    std::stringstream ss(spec);
    for (std::string p; std::getline(ss, p, ':');) parts.push_back(p);
    if (parts.size() != 3 && parts.size() != 4)
        throw Error(ErrorKind::ParseError, "epsilon grid must be start:end[:linear|:geometric]:count");
    // The spacing word may sit before or after the count.
    std::string spacing = "geometric", count_text = parts[2];
    if (parts.size() == 4) {
        bool word_last = parts[3] == "linear" || parts[3] == "geometric";
        spacing = word_last ? parts[3] : parts[2];
        count_text = word_last ? parts[2] : parts[3];
    }
    if (spacing != "linear" && spacing != "geometric")
        throw Error(ErrorKind::ParseError, "unknown grid spacing '" + spacing + "'");
    double a, b;
    int count;
    try {
        std::size_t ua = 0, ub = 0, uc = 0;
        a = std::stod(parts[0], &ua);
        b = std::stod(parts[1], &ub);
        count = std::stoi(count_text, &uc);
        if (ua != parts[0].size() || ub != parts[1].size() || uc != count_text.size())
            throw std::invalid_argument(spec);
    } catch (const std::exception&) {
        throw Error(ErrorKind::ParseError, "bad number in epsilon grid '" + spec + "'");
    }
    if (spacing == "linear") {
        if (count < 1 || !(a > 0) || !(b > 0)) throw Error(ErrorKind::InvalidArgument, "bad linear grid");
        if (count > 1 && a == b) throw Error(ErrorKind::InvalidArgument, "epsilon grid must be strictly monotone");
        std::vector<double> g(count);
        for (int k = 0; k < count; ++k) g[k] = count == 1 ? a : a + (b - a) * k / (count - 1);
        return g;
    }
    return geometric_grid(a, b, count);
}

void write_samples_csv(std::ostream& out, const std::vector<HolonomySample>& samples) {
    out << "epsilon,re_trace,im_trace,est_error\n";
    char buf[160];
    for (const auto& s : samples) {
        std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g,%.17g\n", s.epsilon, s.trace.real(), s.trace.imag(),
                      s.est_error);
        out << buf;
    }
}

std::vector<HolonomySample> read_samples_csv(std::istream& in) {
    std::string line;
    if (!std::getline(in, line)) throw Error(ErrorKind::ParseError, "empty samples file");
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line != "epsilon,re_trace,im_trace,est_error")
        throw Error(ErrorKind::ParseError, "unexpected samples header '" + line + "'");
    std::vector<HolonomySample> out;
    int lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        std::stringstream ss(line);
        std::string cell;
        std::vector<double> v;
        while (std::getline(ss, cell, ',')) {
            char* end = nullptr;
            double x = std::strtod(cell.c_str(), &end);
            if (cell.empty() || *end != '\0')
                throw Error(ErrorKind::ParseError, "bad number on samples line " + std::to_string(lineno));
            v.push_back(x);
        }
        if (v.size() != 4) throw Error(ErrorKind::ParseError, "samples line " + std::to_string(lineno) + " needs 4 columns");
        HolonomySample s;
        s.epsilon = v[0];
        s.trace = {v[1], v[2]};
        s.est_error = v[3];
        out.push_back(std::move(s));
    }
    return out;
}

} // namespace nilwkb::holonomy
