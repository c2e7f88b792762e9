#include "nilwkb/algebra/birational.hpp"

#include <cmath>
#include <sstream>

#include "nilwkb/error.hpp"

namespace nilwkb::algebra {

BiRational::BiRational() : num_(), den_(1) { compile(); }

BiRational::BiRational(const GaussianRational& c) : num_(c), den_(1) { compile(); }

BiRational::BiRational(Poly2 num, Poly2 den) : num_(std::move(num)), den_(std::move(den)) {
    if (den_.is_zero()) throw std::domain_error("zero denominator");
    normalize();
    compile();
}

void BiRational::normalize() {
    if (num_.is_zero()) {
        den_ = Poly2(1);
        return;
    }
    if (!den_.is_constant()) {
        Poly2 g = Poly2::gcd(num_, den_);
        if (!g.is_constant()) {
            num_ = Poly2::exact_div(num_, g);
            den_ = Poly2::exact_div(den_, g);
        }
    }
    GaussianRational inv = den_.leading().second.inverse();
    if (inv != GaussianRational(1)) {
        num_ = inv * num_;
        den_ = inv * den_;
    }
}

void BiRational::compile() {
    num_terms_.clear();
    den_terms_.clear();
    for (const auto& [m, c] : num_.terms()) num_terms_.push_back({m.first, m.second, c.to_complex()});
    for (const auto& [m, c] : den_.terms()) den_terms_.push_back({m.first, m.second, c.to_complex()});
}

BiRational BiRational::d_dz() const {
    if (den_.is_constant()) return BiRational(num_.d_dz(), den_);
    return BiRational(num_.d_dz() * den_ - num_ * den_.d_dz(), den_ * den_);
}

BiRational BiRational::d_dzbar() const {
    if (den_.is_constant()) return BiRational(num_.d_dzbar(), den_);
    return BiRational(num_.d_dzbar() * den_ - num_ * den_.d_dzbar(), den_ * den_);
}

BiRational BiRational::conj_swap() const { return BiRational(num_.conj_swap(), den_.conj_swap()); }

BiRational BiRational::invert_chart() const {
    int a = std::max(num_.deg_z(), den_.deg_z());
    int b = std::max(num_.deg_zbar(), den_.deg_zbar());
    a = std::max(a, 0);
    b = std::max(b, 0);
    return BiRational(num_.reflect(a, b), den_.reflect(a, b));
}

std::complex<double> BiRational::eval_terms(const std::vector<Term>& terms, std::complex<double> z,
                                            double* scale) {
    std::complex<double> zb = std::conj(z);
    double r = std::abs(z);
    std::complex<double> acc = 0;
    double s = 0;
    for (const auto& t : terms) {
        std::complex<double> v = t.c;
        for (int k = 0; k < t.i; ++k) v *= z;
        for (int k = 0; k < t.j; ++k) v *= zb;
        acc += v;
        if (scale) s += std::abs(t.c) * std::pow(r, t.i + t.j);
    }
    if (scale) *scale = s;
    return acc;
}

std::complex<double> BiRational::eval(std::complex<double> z) const {
    double scale = 0;
    std::complex<double> n = eval_terms(num_terms_, z, &scale);
    std::complex<double> d = eval_terms(den_terms_, z, nullptr);
    if (std::abs(d) < 1e-14 * (1.0 + scale)) {
        std::ostringstream os;
        os << "pole of " << to_string() << " at z = " << z;
        throw Error(ErrorKind::PoleHit, os.str());
    }
    return n / d;
}

GaussianRational BiRational::eval_exact(const GaussianRational& z) const {
    GaussianRational d = den_.eval_exact(z);
    if (d.is_zero()) throw Error(ErrorKind::PoleHit, "pole of " + to_string() + " at z = " + z.to_string());
    return num_.eval_exact(z) / d;
}

BiRational BiRational::operator-() const {
    BiRational r = *this;
    r.num_ = -r.num_;
    r.compile();
    return r;
}

BiRational operator+(const BiRational& a, const BiRational& b) {
    if (a.is_zero()) return b;
    if (b.is_zero()) return a;
    if (a.den_ == b.den_) return BiRational(a.num_ + b.num_, a.den_);
    if (a.den_.is_constant() || b.den_.is_constant())
        return BiRational(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
    Poly2 l = Poly2::gcd(a.den_, b.den_);
    Poly2 ca = Poly2::exact_div(b.den_, l);
    Poly2 cb = Poly2::exact_div(a.den_, l);
    return BiRational(a.num_ * ca + b.num_ * cb, a.den_ * ca);
}

BiRational operator-(const BiRational& a, const BiRational& b) { return a + (-b); }

BiRational operator*(const BiRational& a, const BiRational& b) {
    if (a.is_zero() || b.is_zero()) return {};
    return BiRational(a.num_ * b.num_, a.den_ * b.den_);
}

BiRational operator/(const BiRational& a, const BiRational& b) {
    if (b.is_zero()) throw std::domain_error("division by zero rational function");
    return BiRational(a.num_ * b.den_, a.den_ * b.num_);
}

namespace {

std::string poly_string(const Poly2& p) {
    if (p.is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (auto it = p.terms().rbegin(); it != p.terms().rend(); ++it) {
        const auto& [m, c] = *it;
        if (!first) os << " + ";
        first = false;
        bool unit = c == GaussianRational(1) && (m.first || m.second);
        if (!unit) os << (c.is_real() ? c.to_string() : "(" + c.to_string() + ")");
        auto var = [&](const char* name, int k, bool need_star) {
            if (k == 0) return;
            if (need_star) os << "*";
            os << name;
            if (k > 1) os << "^" << k;
        };
        var("z", m.first, !unit);
        var("zbar", m.second, !unit || m.first > 0);
    }
    return os.str();
}

} // namespace

std::string BiRational::to_string() const {
    if (den_ == Poly2(1)) return poly_string(num_);
    return "(" + poly_string(num_) + ")/(" + poly_string(den_) + ")";
}

} // namespace nilwkb::algebra
