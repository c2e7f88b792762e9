#pragma once

#include <complex>
#include <ostream>
#include <string>

#include <gmpxx.h>

namespace nilwkb::algebra {

// Exact element of Q(i).
class GaussianRational {
public:
    GaussianRational() = default;
    GaussianRational(long re) : re_(re) {}
    GaussianRational(mpq_class re, mpq_class im = 0);

    static GaussianRational i() { return {0, 1}; }
    // Accepts "p/q" for the real part or "re,im" with both parts rational.
    static GaussianRational parse(const std::string& text);
    static GaussianRational parse(const std::string& re, const std::string& im);

    const mpq_class& re() const { return re_; }
    const mpq_class& im() const { return im_; }

    bool is_zero() const { return sgn(re_) == 0 && sgn(im_) == 0; }
    bool is_real() const { return sgn(im_) == 0; }

    GaussianRational conj() const { return {re_, -im_}; }
    mpq_class norm() const { return re_ * re_ + im_ * im_; }
    GaussianRational inverse() const;

    std::complex<double> to_complex() const { return {re_.get_d(), im_.get_d()}; }
    std::string to_string() const;

    GaussianRational operator-() const { return {-re_, -im_}; }
    GaussianRational& operator+=(const GaussianRational& o);
    GaussianRational& operator-=(const GaussianRational& o);
    GaussianRational& operator*=(const GaussianRational& o);
    GaussianRational& operator/=(const GaussianRational& o);

    friend GaussianRational operator+(GaussianRational a, const GaussianRational& b) { return a += b; }
    friend GaussianRational operator-(GaussianRational a, const GaussianRational& b) { return a -= b; }
    friend GaussianRational operator*(GaussianRational a, const GaussianRational& b) { return a *= b; }
    friend GaussianRational operator/(GaussianRational a, const GaussianRational& b) { return a /= b; }

    friend bool operator==(const GaussianRational& a, const GaussianRational& b) {
        return a.re_ == b.re_ && a.im_ == b.im_;
    }
    friend bool operator!=(const GaussianRational& a, const GaussianRational& b) { return !(a == b); }

    // Lexicographic (re, im); only used for canonical ordering.
    friend bool operator<(const GaussianRational& a, const GaussianRational& b);

    friend std::ostream& operator<<(std::ostream& os, const GaussianRational& g) {
        return os << g.to_string();
    }

private:
    mpq_class re_{0};
    mpq_class im_{0};
};

mpq_class parse_rational(const std::string& text);
std::string rational_to_string(const mpq_class& q);

} // namespace nilwkb::algebra
