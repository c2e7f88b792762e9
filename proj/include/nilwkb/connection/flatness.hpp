#pragma once

#include <map>
#include <string>
#include <vector>

#include "nilwkb/connection/family.hpp"

namespace nilwkb::connection {

struct Residual {
    std::string name;
    mpq_class exponent; // power of ε multiplying this piece of the curvature
    RationalFunctionMatrix value; // dz∧dzbar coefficient
};

struct FlatnessReport {
    std::vector<Residual> residuals;
    bool is_flat = false;
};

// Laurent coefficients of the curvature of D_ε, keyed by the power of ε.
std::map<mpq_class, RationalFunctionMatrix> curvature_expansion(const ConnectionFamily& f);

// Standard families report [φ∧φ], [ψ∧ψ], Dφ, Dψ and F_D + [φ∧ψ]; other
// exponent profiles report one curvature coefficient per power of ε.
FlatnessReport check_flatness(const ConnectionFamily& f);

} // namespace nilwkb::connection
