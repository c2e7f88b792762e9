#pragma once

#include "nilwkb/connection/family.hpp"

namespace nilwkb::connection::catalog {

RationalFunctionMatrix E(int n, int i, int j); // one-based elementary matrix

ConnectionFamily trivial(int n);
// ε⁻¹E₁₂dz + d + E₂₁dz.
ConnectionFamily manufactured_sl2();
// ε⁻¹(E₁₂ + E₂₃)dz + d + E₃₁dz.
ConnectionFamily manufactured_sl3();
// Uniformization data on the unit disk in a holomorphic frame, u = 1/(1 − z·zbar):
// φ = E₁₂dz, A = diag(a, −a)dz with a = zbar·u, ψ = u²E₂₁dzbar.
ConnectionFamily uniformization_disk_rank2();
// φ = (E₁₂ + E₂₃)dz, A = diag(2a, 0, −2a)dz, ψ = 2u²(E₂₁ + E₃₂)dzbar.
ConnectionFamily uniformization_disk_rank3();
// φ = diag(−i, i)dz/z with trivial connection; scale φ by 1/(2π) numerically
// to get the unit-period regular family.
ConnectionFamily regular_diagonal();

} // namespace nilwkb::connection::catalog
