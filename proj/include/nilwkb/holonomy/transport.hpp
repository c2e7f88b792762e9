#pragma once

#include <complex>
#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "nilwkb/connection/family.hpp"
#include "nilwkb/holonomy/path.hpp"

namespace nilwkb::holonomy {

// Numeric multipliers per term label, e.g. {"phi", 1/(2π)}; unlisted labels use 1.
using LabelScales = std::map<std::string, cplx>;

// Floating-point view of a family ready for pulling back along paths.
class NumericFamily {
public:
    explicit NumericFamily(const connection::ConnectionFamily& family, LabelScales scales = {});

    int rank() const { return rank_; }
    const std::vector<cplx>& punctures() const { return punctures_; }
    // γ*D_ε at a point of the path, as the coefficient of dt.
    Eigen::MatrixXcd pullback(cplx z, cplx velocity, double eps) const;
    // Distance from the path to the nearest declared puncture (∞ if none).
    double clearance(const ParamPath& path) const;

private:
    struct Term {
        double exponent;
        cplx scale;
        algebra::RationalFunctionMatrix dz;
        algebra::RationalFunctionMatrix dzbar;
        bool has_dz;
        bool has_dzbar;
    };
    int rank_ = 0;
    std::vector<Term> terms_;
    std::vector<cplx> punctures_;
};

struct TransportOptions {
    double rel_tol = 1e-10;
    double clearance = 1e-6;
    long max_steps = 10'000'000;
};

struct HolonomySample {
    double epsilon = 0.0;
    Eigen::MatrixXcd holonomy;
    cplx trace;
    // ‖S_h − S_{h/2}‖_F between the adaptive run and a rerun on the halved mesh.
    double est_error = 0.0;
};

// Solves s' = −M(t)s, s(0) = I, for the pulled-back family; the result is the
// transport from γ(0) to γ(1).
HolonomySample transport(const NumericFamily& family, const ParamPath& path, double eps,
                         const TransportOptions& opts = {});

// transport at every ε, distributed over worker threads. threads == 0 reads
// NILWKB_THREADS and otherwise uses the hardware concurrency. Output order
// matches the input grid.
std::vector<HolonomySample> transport_grid(const NumericFamily& family, const ParamPath& path,
                                           const std::vector<double>& eps, const TransportOptions& opts = {},
                                           unsigned threads = 0);

// "start:end:count", geometric by default; a spacing word ("linear" or
// "geometric") may precede or follow the count.
std::vector<double> parse_eps_grid(const std::string& spec);
std::vector<double> geometric_grid(double start, double end, int count);

// CSV with header epsilon,re_trace,im_trace,est_error.
void write_samples_csv(std::ostream& out, const std::vector<HolonomySample>& samples);
std::vector<HolonomySample> read_samples_csv(std::istream& in);

} // namespace nilwkb::holonomy
