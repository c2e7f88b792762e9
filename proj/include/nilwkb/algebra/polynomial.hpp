#pragma once

#include <complex>
#include <map>
#include <tuple>
#include <utility>
#include <vector>

#include "nilwkb/algebra/gaussian_rational.hpp"

namespace nilwkb::algebra {

// Dense univariate polynomial over Q(i), coefficients low to high.
class UPoly {
public:
    UPoly() = default;
    explicit UPoly(std::vector<GaussianRational> coeffs);
    static UPoly constant(const GaussianRational& c);
    static UPoly x() { return UPoly({0, 1}); }

    int degree() const { return static_cast<int>(c_.size()) - 1; }
    bool is_zero() const { return c_.empty(); }
    const std::vector<GaussianRational>& coeffs() const { return c_; }
    GaussianRational coeff(int k) const;
    const GaussianRational& lc() const { return c_.back(); }

    UPoly monic() const;
    UPoly derivative() const;
    GaussianRational eval(const GaussianRational& x) const;
    // Coefficients of p(x0 + t) as a polynomial in t.
    UPoly taylor_shift(const GaussianRational& x0) const;

    UPoly operator-() const;
    friend UPoly operator+(const UPoly& a, const UPoly& b);
    friend UPoly operator-(const UPoly& a, const UPoly& b);
    friend UPoly operator*(const UPoly& a, const UPoly& b);
    friend UPoly operator*(const GaussianRational& s, const UPoly& a);
    friend bool operator==(const UPoly& a, const UPoly& b) { return a.c_ == b.c_; }

    // Euclidean division; b must be nonzero.
    static std::pair<UPoly, UPoly> divmod(const UPoly& a, const UPoly& b);
    static UPoly exact_div(const UPoly& a, const UPoly& b);
    // Monic gcd (zero if both are zero).
    static UPoly gcd(const UPoly& a, const UPoly& b);
    // Returns (g, s, t) with s·a + t·b = g monic.
    static std::tuple<UPoly, UPoly, UPoly> ext_gcd(const UPoly& a, const UPoly& b);

private:
    void trim();
    std::vector<GaussianRational> c_;
};

using Monomial = std::pair<int, int>; // (power of z, power of zbar)

// Sparse polynomial in the formal variables z and zbar.
class Poly2 {
public:
    Poly2() = default;
    Poly2(const GaussianRational& c);
    Poly2(long c) : Poly2(GaussianRational(c)) {}
    static Poly2 monomial(int i, int j, const GaussianRational& c = 1);
    static Poly2 z() { return monomial(1, 0); }
    static Poly2 zbar() { return monomial(0, 1); }
    static Poly2 from_z(const UPoly& p);

    const std::map<Monomial, GaussianRational>& terms() const { return t_; }
    bool is_zero() const { return t_.empty(); }
    bool is_constant() const;
    bool depends_on_zbar() const;
    int deg_z() const;
    int deg_zbar() const;
    GaussianRational coeff(int i, int j) const;
    // Lexicographically largest monomial (z-degree first).
    const std::pair<const Monomial, GaussianRational>& leading() const { return *t_.rbegin(); }

    Poly2 d_dz() const;
    Poly2 d_dzbar() const;
    // Formal complex conjugation: swap z and zbar, conjugate coefficients.
    Poly2 conj_swap() const;
    // z^a zbar^b p(1/z, 1/zbar); a, b at least the respective degrees.
    Poly2 reflect(int a, int b) const;
    // View as a univariate polynomial in z; throws if zbar occurs.
    UPoly as_z_poly() const;
    // Largest factor depending on z alone (resp. zbar alone), as a univariate
    // polynomial in that variable; defined up to a constant.
    UPoly z_only_factor() const;
    UPoly zbar_only_factor() const;

    GaussianRational eval_exact(const GaussianRational& z) const;
    std::complex<double> eval(std::complex<double> z) const;
    // Sum of |c||z|^{i+j}, the natural magnitude scale of the terms.
    double magnitude_scale(std::complex<double> z) const;

    Poly2 operator-() const;
    Poly2& operator+=(const Poly2& o);
    Poly2& operator-=(const Poly2& o);
    friend Poly2 operator+(Poly2 a, const Poly2& b) { return a += b; }
    friend Poly2 operator-(Poly2 a, const Poly2& b) { return a -= b; }
    friend Poly2 operator*(const Poly2& a, const Poly2& b);
    friend Poly2 operator*(const GaussianRational& s, const Poly2& a);
    friend bool operator==(const Poly2& a, const Poly2& b) { return a.t_ == b.t_; }
    friend bool operator!=(const Poly2& a, const Poly2& b) { return !(a == b); }

    // Division known to be exact; throws std::domain_error otherwise.
    static Poly2 exact_div(const Poly2& a, const Poly2& b);
    // Gcd normalized so that the leading coefficient is 1.
    static Poly2 gcd(const Poly2& a, const Poly2& b);

private:
    void add_term(const Monomial& m, const GaussianRational& c);
    std::map<Monomial, GaussianRational> t_;
};

} // namespace nilwkb::algebra
