#pragma once

#include <cstdint>
#include <map>
#include <utility>
#include <vector>

#include "nilwkb/connection/family.hpp"

namespace nilwkb::gauge {

using algebra::BiRational;
using algebra::GaussianRational;
using algebra::MatrixOneForm;
using algebra::RationalFunctionMatrix;
using connection::ConnectionFamily;

struct NilpotentType {
    std::vector<int> partition; // n_i = dim ker φ^i − dim ker φ^{i−1}
    std::vector<int> transpose;
    int nilpotency_index = 0;
};

std::vector<int> conjugate_partition(const std::vector<int>& p);

NilpotentType jordan_type(const MatrixOneForm& phi, std::uint64_t seed = 0x5eed);

// A_k collects the blocks at block distance k (column block minus row block).
std::map<int, MatrixOneForm> graded_decompose(const MatrixOneForm& a, const std::vector<int>& blocks);

// g = diag(ζ^{e_1}, …, ζ^{e_n}); conjugation g⁻¹Xg scales entry (i, j) by ζ^{e_j − e_i}.
struct GaugeProfile {
    std::vector<mpq_class> exponents;
    std::vector<int> block_m;
    int m = 1;
};

// (−1/4, 1/4): turns ε⁻¹(φ + A₋₁) into ε^{−1/2}Φ for a rank-2 family.
GaugeProfile sl2_profile();
// g_n = diag(ζ^{(1−n)/2}, …, ζ^{(n−1)/2}) with unit steps.
GaugeProfile gn_profile(int n);
// Maximal-type profile rescaled by m: e_j = (2j − 1 − n)/(2m).
GaugeProfile cyclic_profile(int n, int m);
GaugeProfile inverse_profile(const GaugeProfile& p);

// Pieces of g⁻¹Xg keyed by the power of ζ they acquire.
std::map<mpq_class, MatrixOneForm> gauge_conjugate(const MatrixOneForm& x, const GaugeProfile& profile);
// Term exponents shift by exact rational addition; labels are kept.
ConnectionFamily gauge_conjugate(const ConnectionFamily& f, const GaugeProfile& profile);

struct SecondaryData {
    MatrixOneForm Phi;
    MatrixOneForm diag_connection;
    int m = 1;
    mpq_class leading_exponent; // (1 − m)/m
    GaugeProfile profile;
    std::vector<int> splitting;
    std::vector<std::pair<mpq_class, MatrixOneForm>> residual_terms;
    bool leading_is_dominant = true; // no residual term below the leading exponent
};

// `splitting` is the type (n_1, …, n_k): the frame lists V_1, then V_2, …, and
// the i-th vector of each V_j belongs to the i-th Jordan chain.
SecondaryData secondary_higgs(const ConnectionFamily& f, const std::vector<int>& splitting,
                              std::uint64_t seed = 0x5eed);

// The gauged family ε^{lead}Φ + d + diag + residuals.
ConnectionFamily reassemble(const SecondaryData& s, const ConnectionFamily& original);

bool is_m_cyclic(const MatrixOneForm& phi, const GaugeProfile& profile, int m);

// Tr(Φ^k) for k = 2..up_to.
std::vector<BiRational> k_differentials(const MatrixOneForm& phi, int up_to);

// True when det(−conj Ψ) = −det Φ with det Φ ≠ 0.
bool reality_obstruction(const MatrixOneForm& phi, const MatrixOneForm& psi);

} // namespace nilwkb::gauge
