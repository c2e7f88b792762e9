#pragma once

#include <complex>
#include <vector>

#include <gmpxx.h>

#include "nilwkb/holonomy/transport.hpp"

namespace nilwkb::holonomy {

struct CandidateFit {
    mpq_class exponent;
    cplx Z;
    cplx offset;
    double residual = 0.0;
};

struct WkbFit {
    // Best candidate; exponent_p is its value as a double.
    double exponent_p = 0.0;
    mpq_class exponent_exact;
    cplx Z;
    // log of the limit of tr·exp(−ε^{−p}Z).
    cplx offset;
    double residual = 0.0;
    std::vector<CandidateFit> candidates;
    // Unconstrained exponent minimizing the residual over [0.02, 2].
    double free_exponent = 0.0;
    double free_residual = 0.0;
    // Fit of log|tr| alone at the selected exponent.
    double modulus_re_Z = 0.0;
    double modulus_offset = 0.0;
    double modulus_residual = 0.0;
    int tail_size = 0;
};

struct FitOptions {
    // Fraction of samples (smallest ε) used in the fit, at least 3.
    double tail_fraction = 0.5;
};

std::vector<mpq_class> default_exponents(int rank);

WkbFit wkb_fit(const std::vector<HolonomySample>& samples, const std::vector<mpq_class>& candidates,
               const FitOptions& opts = {});

} // namespace nilwkb::holonomy
