#pragma once

#include <complex>
#include <string>
#include <vector>

#include "nilwkb/algebra/polynomial.hpp"

namespace nilwkb::algebra {

// Quotient of polynomials in (z, zbar), kept in canonical form: the gcd of
// numerator and denominator is 1 and the denominator's leading coefficient is 1.
class BiRational {
public:
    BiRational();
    BiRational(const GaussianRational& c);
    BiRational(long c) : BiRational(GaussianRational(c)) {}
    BiRational(Poly2 num, Poly2 den = Poly2(1));

    static BiRational z() { return BiRational(Poly2::z()); }
    static BiRational zbar() { return BiRational(Poly2::zbar()); }

    const Poly2& num() const { return num_; }
    const Poly2& den() const { return den_; }
    bool is_zero() const { return num_.is_zero(); }
    bool is_constant() const { return num_.is_constant() && den_.is_constant(); }
    bool depends_on_zbar() const { return num_.depends_on_zbar() || den_.depends_on_zbar(); }

    BiRational d_dz() const;
    BiRational d_dzbar() const;
    BiRational conj_swap() const;
    // Substitute z = 1/w (and zbar = 1/wbar); result is written in the variable w.
    BiRational invert_chart() const;

    // zbar := conj(z). Throws PoleHit near a pole.
    std::complex<double> eval(std::complex<double> z) const;
    GaussianRational eval_exact(const GaussianRational& z) const;

    BiRational operator-() const;
    friend BiRational operator+(const BiRational& a, const BiRational& b);
    friend BiRational operator-(const BiRational& a, const BiRational& b);
    friend BiRational operator*(const BiRational& a, const BiRational& b);
    friend BiRational operator/(const BiRational& a, const BiRational& b);
    BiRational& operator+=(const BiRational& o) { return *this = *this + o; }
    BiRational& operator-=(const BiRational& o) { return *this = *this - o; }
    BiRational& operator*=(const BiRational& o) { return *this = *this * o; }
    friend bool operator==(const BiRational& a, const BiRational& b) {
        return a.num_ == b.num_ && a.den_ == b.den_;
    }
    friend bool operator!=(const BiRational& a, const BiRational& b) { return !(a == b); }

    std::string to_string() const;

private:
    struct Term {
        int i, j;
        std::complex<double> c;
    };
    void normalize();
    void compile();
    static std::complex<double> eval_terms(const std::vector<Term>& terms, std::complex<double> z,
                                           double* scale);

    Poly2 num_;
    Poly2 den_;
    std::vector<Term> num_terms_;
    std::vector<Term> den_terms_;
};

} // namespace nilwkb::algebra
