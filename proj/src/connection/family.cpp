#include "nilwkb/connection/family.hpp"

#include <algorithm>

#include "nilwkb/error.hpp"

namespace nilwkb::connection {

using algebra::Poly2;
using algebra::UPoly;

namespace {

const std::map<std::string, int> kStandardExponent = {{"phi", -1}, {"conn", 0}, {"psi", 1}};

// Strips factors (x − p) for the given roots; true if nothing non-constant remains.
bool only_roots(UPoly f, const std::vector<GaussianRational>& roots) {
    for (const auto& r : roots) {
        UPoly lin({-r, 1});
        while (f.degree() > 0 && f.eval(r).is_zero()) f = UPoly::exact_div(f, lin);
    }
    return f.degree() <= 0;
}

} // namespace

bool poles_declared(const BiRational& f, const std::vector<GaussianRational>& punctures) {
    const Poly2& den = f.den();
    if (den.is_constant()) return true;
    std::vector<GaussianRational> conj_punctures;
    for (const auto& p : punctures) conj_punctures.push_back(p.conj());
    return only_roots(den.z_only_factor(), punctures) && only_roots(den.zbar_only_factor(), conj_punctures);
}

ConnectionFamily::ConnectionFamily(MatrixOneForm phi, MatrixOneForm conn, MatrixOneForm psi,
                                   std::vector<GaussianRational> punctures)
    : rank_(phi.size()), punctures_(std::move(punctures)) {
    terms_.push_back({"phi", -1, std::move(phi)});
    terms_.push_back({"conn", 0, std::move(conn)});
    terms_.push_back({"psi", 1, std::move(psi)});
    validate();
}

ConnectionFamily::ConnectionFamily(int rank, std::vector<FamilyTerm> terms, std::vector<GaussianRational> punctures)
    : rank_(rank), terms_(std::move(terms)), punctures_(std::move(punctures)) {
    validate();
}

void ConnectionFamily::validate() const {
    for (const auto& t : terms_) {
        if (t.form.size() != rank_)
            throw Error(ErrorKind::DimensionMismatch, "term '" + t.label + "' has the wrong rank");
        if (t.label == "phi") {
            if (!t.form.dzbar_part().is_zero())
                throw Error(ErrorKind::InvalidArgument, "phi must be of type (1,0)");
            if (!t.form.dz_part().trace().is_zero()) throw Error(ErrorKind::InvalidArgument, "phi must be traceless");
        }
        if (t.label == "psi") {
            if (!t.form.dz_part().is_zero()) throw Error(ErrorKind::InvalidArgument, "psi must be of type (0,1)");
            if (!t.form.dzbar_part().trace().is_zero())
                throw Error(ErrorKind::InvalidArgument, "psi must be traceless");
        }
        for (const auto* part : {&t.form.dz_part(), &t.form.dzbar_part()})
            for (int i = 0; i < rank_; ++i)
                for (int j = 0; j < rank_; ++j)
                    if (!poles_declared((*part)(i, j), punctures_))
                        throw Error(ErrorKind::InvalidArgument, "term '" + t.label + "' has a pole at an undeclared point: " +
                                                                     (*part)(i, j).to_string());
    }
}

MatrixOneForm ConnectionFamily::term(const std::string& label) const {
    MatrixOneForm sum(rank_);
    for (const auto& t : terms_)
        if (t.label == label) sum += t.form;
    return sum;
}

bool ConnectionFamily::is_standard() const {
    for (const auto& t : terms_) {
        auto it = kStandardExponent.find(t.label);
        if (it == kStandardExponent.end() || t.exponent != it->second) return false;
    }
    return true;
}

std::map<mpq_class, MatrixOneForm> ConnectionFamily::expansion() const {
    std::map<mpq_class, MatrixOneForm> out;
    for (const auto& t : terms_) {
        auto [it, fresh] = out.try_emplace(t.exponent, MatrixOneForm(rank_));
        it->second += t.form;
    }
    for (auto it = out.begin(); it != out.end();) {
        if (it->second.is_zero())
            it = out.erase(it);
        else
            ++it;
    }
    return out;
}

ConnectionFamily conformal_limit_family(const MatrixOneForm& phi, const MatrixOneForm& dbar_e,
                                        const MatrixOneForm& d0, const MatrixOneForm& phi0_dagger) {
    int n = phi.size();
    if (dbar_e.size() != n || d0.size() != n || phi0_dagger.size() != n)
        throw Error(ErrorKind::DimensionMismatch, "conformal limit inputs differ in rank");
    if (!dbar_e.dz_part().is_zero()) throw Error(ErrorKind::InvalidArgument, "dbar_E must be of type (0,1)");
    if (!d0.dzbar_part().is_zero()) throw Error(ErrorKind::InvalidArgument, "d0 must be of type (1,0)");
    return ConnectionFamily(phi, dbar_e + d0, phi0_dagger);
}

ConnectionFamily scale_orbit(const ConnectionFamily& f, const GaussianRational& xi) {
    if (xi.is_zero()) throw Error(ErrorKind::ZeroScale, "scale factor must be nonzero");
    std::vector<FamilyTerm> terms = f.terms();
    for (auto& t : terms)
        if (t.label == "phi") t.form = BiRational(xi) * t.form;
    return ConnectionFamily(f.rank(), std::move(terms), f.punctures());
}

ConnectionFamily scale_psi(const ConnectionFamily& f, const GaussianRational& xi) {
    if (xi.is_zero()) throw Error(ErrorKind::ZeroScale, "scale factor must be nonzero");
    std::vector<FamilyTerm> terms = f.terms();
    for (auto& t : terms)
        if (t.label == "psi") t.form = BiRational(xi.inverse()) * t.form;
    return ConnectionFamily(f.rank(), std::move(terms), f.punctures());
}

RationalFunctionMatrix to_function_matrix(const GaussianMatrix& g) {
    int n = static_cast<int>(g.size());
    RationalFunctionMatrix m(n, n);
    for (int i = 0; i < n; ++i) {
        if (static_cast<int>(g[i].size()) != n) throw Error(ErrorKind::DimensionMismatch, "gauge matrix not square");
        for (int j = 0; j < n; ++j) m(i, j) = g[i][j];
    }
    return m;
}

MatrixOneForm conjugate(const MatrixOneForm& x, const RationalFunctionMatrix& g, const RationalFunctionMatrix& g_inv) {
    return {g_inv * x.dz_part() * g, g_inv * x.dzbar_part() * g};
}

ConnectionFamily conjugate_constant(const ConnectionFamily& f, const GaussianMatrix& g) {
    RationalFunctionMatrix gm = to_function_matrix(g);
    if (gm.rows() != f.rank()) throw Error(ErrorKind::DimensionMismatch, "gauge rank differs from family rank");
    RationalFunctionMatrix gi = gm.inverse();
    std::vector<FamilyTerm> terms = f.terms();
    for (auto& t : terms) t.form = conjugate(t.form, gm, gi);
    return ConnectionFamily(f.rank(), std::move(terms), f.punctures());
}

ConnectionFamily gauge_transform(const ConnectionFamily& f, const RationalFunctionMatrix& g) {
    if (g.rows() != f.rank() || !g.is_square())
        throw Error(ErrorKind::DimensionMismatch, "gauge rank differs from family rank");
    RationalFunctionMatrix gi = g.inverse();
    std::vector<FamilyTerm> terms = f.terms();
    for (auto& t : terms) t.form = conjugate(t.form, g, gi);
    MatrixOneForm dg(gi * g.d_dz(), gi * g.d_dzbar());
    if (!dg.is_zero()) {
        auto it = std::find_if(terms.begin(), terms.end(),
                               [](const FamilyTerm& t) { return t.label == "conn" && t.exponent == 0; });
        if (it == terms.end())
            terms.push_back({"conn", 0, dg});
        else
            it->form += dg;
    }
    return ConnectionFamily(f.rank(), std::move(terms), f.punctures());
}

} // namespace nilwkb::connection
