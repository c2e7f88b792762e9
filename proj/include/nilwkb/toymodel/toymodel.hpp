#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "nilwkb/connection/family.hpp"

namespace nilwkb::toymodel {

using algebra::BiRational;
using algebra::GaussianMatrix;
using algebra::GaussianRational;
using algebra::MatrixOneForm;
using connection::ConnectionFamily;

struct ParabolicWeights {
    std::array<mpq_class, 4> rho;
    // Requires 0 < ρ_i < 1/2 (InvalidWeights otherwise).
    explicit ParabolicWeights(std::array<mpq_class, 4> r);
    static ParabolicWeights parse(const std::string& csv); // "1/4,1/4,1/4,1/8"
};

struct InequalityFamily {
    std::string name;
    bool pass = true;
    std::vector<std::string> witnesses; // one line per violated instance
    int checked = 0;
};

struct WeightReport {
    std::array<InequalityFamily, 3> families; // (i), (ii), (iii)
    bool all_pass() const;
};

WeightReport check_weight_inequalities(const ParabolicWeights& w);

// deg L + Σ α_i with α_i = ρ_i when L meets the flag at p_i and −ρ_i otherwise.
mpq_class pdeg(int line_degree, const std::array<bool, 4>& incidence, const ParabolicWeights& w);

struct PdegEntry {
    int degree;
    std::array<bool, 4> incidence;
    mpq_class value;
};
// Every incidence pattern for line degrees 0 and −1.
std::vector<PdegEntry> pdeg_table(const ParabolicWeights& w);

// Punctures are 0, 1, ∞, p in this order; nullopt stands for ∞.
using Puncture = std::optional<GaussianRational>;
std::string puncture_name(const Puncture& p);

// A line in ℂ² as a homogeneous pair.
using Line = std::array<GaussianRational, 2>;
bool same_line(const Line& a, const Line& b);

struct FlagConfig {
    GaussianRational p;
    std::array<Line, 4> lines; // L1..L4 at 0, 1, ∞, p
    std::optional<GaussianRational> w; // L4 = (w, 1); nullopt means w = ∞
};

enum class ToyKind { PhiP, Phi0, Phi1, PhiInf, Custom };
const char* to_string(ToyKind k);
ToyKind parse_toy_kind(const std::string& s);

struct ToyHiggsField {
    ToyKind kind;
    GaussianRational p;
    algebra::RationalFunctionMatrix matrix; // coefficient of dz
    FlagConfig flags;
    std::array<bool, 4> vanishing_residue; // declared at 0, 1, ∞, p
    MatrixOneForm form() const { return MatrixOneForm::dz(matrix); }
};

// custom_a/custom_b are the polynomials a, b (degree ≤ 1) of the rank-one
// field (1/Δ)((ab, −a²), (b², −ab)), Δ = z(z−1)(z−p); a = z, b = 1 is φ_p. Invariants are verified
// exactly; BadPuncture for p ∈ {0, 1}.
ToyHiggsField build_toy_higgs(ToyKind kind, const GaussianRational& p, const algebra::UPoly& custom_a = {},
                              const algebra::UPoly& custom_b = {});

struct ResidueEntry {
    Puncture at;
    GaussianMatrix residue;
};
std::vector<ResidueEntry> residues(const ToyHiggsField& h);

// Residue of a z-only rational function at a finite point, by Laurent division.
GaussianRational residue_at(const BiRational& f, const GaussianRational& z0);
// Pole order (negative for zeros) of a z-only function at a finite point.
int pole_order(const BiRational& f, const GaussianRational& z0);
// Pole order at ∞ of f(z)·dz^k, read in the w = 1/z chart.
int pole_order_at_infinity(const BiRational& f, int form_degree);

// ε⁻¹φ + d with punctures {0, 1, p}.
ConnectionFamily skeleton_family(const ToyHiggsField& h);
// Gauge by g = (v | x) with det g = 1 and v spanning ker φ, so that φ becomes
// upper triangular; the inhomogeneous term g⁻¹dg lands in the connection.
ConnectionFamily aligned_family(const ToyHiggsField& h);

// c·dz²/(z(z−1)(z−p)).
BiRational toy_quadratic_differential(const GaussianRational& c, const GaussianRational& p);

// (ρ/2)·diag(1, −1)·(dz/z − dzbar/zbar).
MatrixOneForm parabolic_model_connection(const mpq_class& rho);

struct ConeNode {
    std::string id;
    std::string kind; // "central", "family", "tip"
    std::string label;
    bool vhs = false;
    std::string attachment; // w-value for family nodes
};
struct ConeEdge {
    std::string from, to;
    std::string label;
};
struct ConeGraph {
    std::vector<ConeNode> nodes;
    std::vector<ConeEdge> edges;
    // Each ℂP¹ component as the node ids it contains.
    std::vector<std::vector<std::string>> components;
    std::vector<std::string> central_attachments;
    bool is_affine_d4() const;
};

// UnstableWeights unless every weight inequality holds.
ConeGraph nilpotent_cone_graph(const GaussianRational& p, const ParabolicWeights& w);

} // namespace nilwkb::toymodel
