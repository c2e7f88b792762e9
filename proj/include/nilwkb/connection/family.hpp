#pragma once

#include <map>
#include <string>
#include <vector>

#include "nilwkb/algebra/form.hpp"

namespace nilwkb::connection {

using algebra::BiRational;
using algebra::GaussianMatrix;
using algebra::GaussianRational;
using algebra::MatrixOneForm;
using algebra::RationalFunctionMatrix;

// One summand ε^exponent · form of the family. The labels "phi", "conn" and
// "psi" name the three standard terms; the exterior derivative d is implicit
// and always sits at exponent 0.
struct FamilyTerm {
    std::string label;
    mpq_class exponent;
    MatrixOneForm form;
};

// D_ε = d + Σ ε^{e_k} X_k on one affine chart with declared punctures.
class ConnectionFamily {
public:
    ConnectionFamily() = default;
    // Standard family ε⁻¹φ + d + A + εψ.
    ConnectionFamily(MatrixOneForm phi, MatrixOneForm conn, MatrixOneForm psi,
                     std::vector<GaussianRational> punctures = {});
    ConnectionFamily(int rank, std::vector<FamilyTerm> terms, std::vector<GaussianRational> punctures = {});

    int rank() const { return rank_; }
    const std::vector<FamilyTerm>& terms() const { return terms_; }
    const std::vector<GaussianRational>& punctures() const { return punctures_; }

    // Sum of the terms with this label (zero form if none).
    MatrixOneForm term(const std::string& label) const;
    MatrixOneForm phi() const { return term("phi"); }
    MatrixOneForm conn() const { return term("conn"); }
    MatrixOneForm psi() const { return term("psi"); }
    // Exponents (−1, 0, 1) on labels phi, conn, psi and nothing else.
    bool is_standard() const;

    // Terms grouped by exponent, zero groups dropped; the canonical form used
    // for equality of families.
    std::map<mpq_class, MatrixOneForm> expansion() const;

    friend bool operator==(const ConnectionFamily& a, const ConnectionFamily& b) {
        return a.rank_ == b.rank_ && a.expansion() == b.expansion();
    }

private:
    void validate() const;

    int rank_ = 0;
    std::vector<FamilyTerm> terms_;
    std::vector<GaussianRational> punctures_;
};

// True when every pole of f in z alone or zbar alone sits at a declared puncture.
// Singular loci of mixed type (such as 1 − z·zbar) are not punctures and pass.
bool poles_declared(const BiRational& f, const std::vector<GaussianRational>& punctures);

ConnectionFamily conformal_limit_family(const MatrixOneForm& phi, const MatrixOneForm& dbar_e,
                                        const MatrixOneForm& d0, const MatrixOneForm& phi0_dagger);

// φ ↦ ξφ; other terms unchanged.
ConnectionFamily scale_orbit(const ConnectionFamily& f, const GaussianRational& xi);
// ψ ↦ ξ⁻¹ψ, the companion rescaling that keeps flat families flat.
ConnectionFamily scale_psi(const ConnectionFamily& f, const GaussianRational& xi);

// g⁻¹ X g on every term (constant g has no inhomogeneous part).
ConnectionFamily conjugate_constant(const ConnectionFamily& f, const GaussianMatrix& g);
// Full gauge action: g⁻¹ X g on every term, plus g⁻¹dg at exponent 0 under label "conn".
ConnectionFamily gauge_transform(const ConnectionFamily& f, const RationalFunctionMatrix& g);

MatrixOneForm conjugate(const MatrixOneForm& x, const RationalFunctionMatrix& g,
                        const RationalFunctionMatrix& g_inv);

RationalFunctionMatrix to_function_matrix(const GaussianMatrix& g);

} // namespace nilwkb::connection
