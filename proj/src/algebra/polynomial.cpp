#include "nilwkb/algebra/polynomial.hpp"

#include <cmath>
#include <stdexcept>

namespace nilwkb::algebra {

// ---------------------------------------------------------------- UPoly

UPoly::UPoly(std::vector<GaussianRational> coeffs) : c_(std::move(coeffs)) { trim(); }

UPoly UPoly::constant(const GaussianRational& c) { return UPoly({c}); }

void UPoly::trim() {
    while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
}

GaussianRational UPoly::coeff(int k) const {
    if (k < 0 || k > degree()) return 0;
    return c_[k];
}

UPoly UPoly::monic() const {
    if (is_zero()) return *this;
    GaussianRational inv = lc().inverse();
    UPoly r = *this;
    for (auto& c : r.c_) c *= inv;
    return r;
}

UPoly UPoly::derivative() const {
    std::vector<GaussianRational> d;
    for (int k = 1; k <= degree(); ++k) d.push_back(GaussianRational(k) * c_[k]);
    return UPoly(std::move(d));
}

GaussianRational UPoly::eval(const GaussianRational& x) const {
    GaussianRational acc;
    for (int k = degree(); k >= 0; --k) acc = acc * x + c_[k];
    return acc;
}

UPoly UPoly::taylor_shift(const GaussianRational& x0) const {
    // Horner in the ring Q(i)[t] with x = x0 + t.
    UPoly shift({x0, 1});
    UPoly acc;
    for (int k = degree(); k >= 0; --k) acc = acc * shift + UPoly::constant(c_[k]);
    return acc;
}

UPoly UPoly::operator-() const {
    UPoly r = *this;
    for (auto& c : r.c_) c = -c;
    return r;
}

UPoly operator+(const UPoly& a, const UPoly& b) {
    std::vector<GaussianRational> c(std::max(a.c_.size(), b.c_.size()));
    for (std::size_t k = 0; k < a.c_.size(); ++k) c[k] += a.c_[k];
    for (std::size_t k = 0; k < b.c_.size(); ++k) c[k] += b.c_[k];
    return UPoly(std::move(c));
}

UPoly operator-(const UPoly& a, const UPoly& b) { return a + (-b); }

UPoly operator*(const UPoly& a, const UPoly& b) {
    if (a.is_zero() || b.is_zero()) return {};
    std::vector<GaussianRational> c(a.c_.size() + b.c_.size() - 1);
    for (std::size_t i = 0; i < a.c_.size(); ++i)
        for (std::size_t j = 0; j < b.c_.size(); ++j) c[i + j] += a.c_[i] * b.c_[j];
    return UPoly(std::move(c));
}

UPoly operator*(const GaussianRational& s, const UPoly& a) {
    if (s.is_zero()) return {};
    UPoly r = a;
    for (auto& c : r.c_) c *= s;
    return r;
}

std::pair<UPoly, UPoly> UPoly::divmod(const UPoly& a, const UPoly& b) {
    if (b.is_zero()) throw std::domain_error("polynomial division by zero");
    if (a.degree() < b.degree()) return {UPoly(), a};
    std::vector<GaussianRational> q(a.degree() - b.degree() + 1);
    std::vector<GaussianRational> r = a.c_;
    GaussianRational inv = b.lc().inverse();
    for (int k = a.degree(); k >= b.degree(); --k) {
        if (r[k].is_zero()) continue;
        GaussianRational f = r[k] * inv;
        q[k - b.degree()] = f;
        for (int j = 0; j <= b.degree(); ++j) r[k - b.degree() + j] -= f * b.c_[j];
    }
    return {UPoly(std::move(q)), UPoly(std::move(r))};
}

UPoly UPoly::exact_div(const UPoly& a, const UPoly& b) {
    auto [q, r] = divmod(a, b);
    if (!r.is_zero()) throw std::domain_error("inexact polynomial division");
    return q;
}

UPoly UPoly::gcd(const UPoly& a, const UPoly& b) {
    UPoly x = a, y = b;
    while (!y.is_zero()) {
        UPoly r = divmod(x, y).second;
        x = std::move(y);
        y = std::move(r);
    }
    return x.monic();
}

std::tuple<UPoly, UPoly, UPoly> UPoly::ext_gcd(const UPoly& a, const UPoly& b) {
    UPoly r0 = a, r1 = b;
    UPoly s0 = UPoly::constant(1), s1;
    UPoly t0, t1 = UPoly::constant(1);
    while (!r1.is_zero()) {
        auto [q, r] = divmod(r0, r1);
        r0 = std::move(r1);
        r1 = std::move(r);
        UPoly s2 = s0 - q * s1;
        s0 = std::move(s1);
        s1 = std::move(s2);
        UPoly t2 = t0 - q * t1;
        t0 = std::move(t1);
        t1 = std::move(t2);
    }
    if (r0.is_zero()) return {r0, s0, t0};
    GaussianRational inv = r0.lc().inverse();
    return {inv * r0, inv * s0, inv * t0};
}

// ---------------------------------------------------------------- Poly2

Poly2::Poly2(const GaussianRational& c) {
    if (!c.is_zero()) t_.emplace(Monomial{0, 0}, c);
}

Poly2 Poly2::monomial(int i, int j, const GaussianRational& c) {
    Poly2 p;
    p.add_term({i, j}, c);
    return p;
}

Poly2 Poly2::from_z(const UPoly& p) {
    Poly2 r;
    for (int k = 0; k <= p.degree(); ++k) r.add_term({k, 0}, p.coeff(k));
    return r;
}

void Poly2::add_term(const Monomial& m, const GaussianRational& c) {
    if (c.is_zero()) return;
    auto it = t_.find(m);
    if (it == t_.end()) {
        t_.emplace(m, c);
        return;
    }
    it->second += c;
    if (it->second.is_zero()) t_.erase(it);
}

bool Poly2::is_constant() const {
    return t_.empty() || (t_.size() == 1 && t_.begin()->first == Monomial{0, 0});
}

bool Poly2::depends_on_zbar() const {
    for (const auto& [m, c] : t_)
        if (m.second > 0) return true;
    return false;
}

int Poly2::deg_z() const {
    int d = t_.empty() ? -1 : 0;
    for (const auto& [m, c] : t_) d = std::max(d, m.first);
    return d;
}

int Poly2::deg_zbar() const {
    int d = t_.empty() ? -1 : 0;
    for (const auto& [m, c] : t_) d = std::max(d, m.second);
    return d;
}

GaussianRational Poly2::coeff(int i, int j) const {
    auto it = t_.find({i, j});
    return it == t_.end() ? GaussianRational() : it->second;
}

Poly2 Poly2::d_dz() const {
    Poly2 r;
    for (const auto& [m, c] : t_)
        if (m.first > 0) r.add_term({m.first - 1, m.second}, GaussianRational(m.first) * c);
    return r;
}

Poly2 Poly2::d_dzbar() const {
    Poly2 r;
    for (const auto& [m, c] : t_)
        if (m.second > 0) r.add_term({m.first, m.second - 1}, GaussianRational(m.second) * c);
    return r;
}

Poly2 Poly2::conj_swap() const {
    Poly2 r;
    for (const auto& [m, c] : t_) r.add_term({m.second, m.first}, c.conj());
    return r;
}

Poly2 Poly2::reflect(int a, int b) const {
    Poly2 r;
    for (const auto& [m, c] : t_) {
        if (m.first > a || m.second > b) throw std::domain_error("reflect: degree exceeds bound");
        r.add_term({a - m.first, b - m.second}, c);
    }
    return r;
}

UPoly Poly2::as_z_poly() const {
    if (depends_on_zbar()) throw std::domain_error("polynomial depends on zbar");
    std::vector<GaussianRational> c(std::max(deg_z() + 1, 0));
    for (const auto& [m, v] : t_) c[m.first] = v;
    return UPoly(std::move(c));
}

GaussianRational Poly2::eval_exact(const GaussianRational& z) const {
    GaussianRational zb = z.conj();
    GaussianRational acc;
    for (const auto& [m, c] : t_) {
        GaussianRational term = c;
        for (int k = 0; k < m.first; ++k) term *= z;
        for (int k = 0; k < m.second; ++k) term *= zb;
        acc += term;
    }
    return acc;
}

std::complex<double> Poly2::eval(std::complex<double> z) const {
    std::complex<double> zb = std::conj(z);
    std::complex<double> acc = 0;
    for (const auto& [m, c] : t_)
        acc += c.to_complex() * std::pow(z, m.first) * std::pow(zb, m.second);
    return acc;
}

double Poly2::magnitude_scale(std::complex<double> z) const {
    double r = std::abs(z);
    double acc = 0;
    for (const auto& [m, c] : t_) acc += std::abs(c.to_complex()) * std::pow(r, m.first + m.second);
    return acc;
}

Poly2 Poly2::operator-() const {
    Poly2 r = *this;
    for (auto& [m, c] : r.t_) c = -c;
    return r;
}

Poly2& Poly2::operator+=(const Poly2& o) {
    for (const auto& [m, c] : o.t_) add_term(m, c);
    return *this;
}

Poly2& Poly2::operator-=(const Poly2& o) {
    for (const auto& [m, c] : o.t_) add_term(m, -c);
    return *this;
}

Poly2 operator*(const Poly2& a, const Poly2& b) {
    Poly2 r;
    for (const auto& [ma, ca] : a.t_)
        for (const auto& [mb, cb] : b.t_) r.add_term({ma.first + mb.first, ma.second + mb.second}, ca * cb);
    return r;
}

Poly2 operator*(const GaussianRational& s, const Poly2& a) {
    if (s.is_zero()) return {};
    Poly2 r = a;
    for (auto& [m, c] : r.t_) c *= s;
    return r;
}

Poly2 Poly2::exact_div(const Poly2& a, const Poly2& b) {
    if (b.is_zero()) throw std::domain_error("division by zero polynomial");
    Poly2 q, r = a;
    const auto& [lm, lc] = b.leading();
    GaussianRational inv = lc.inverse();
    while (!r.is_zero()) {
        const auto& [rm, rc] = r.leading();
        int di = rm.first - lm.first, dj = rm.second - lm.second;
        if (di < 0 || dj < 0) throw std::domain_error("inexact bivariate division");
        Poly2 t = Poly2::monomial(di, dj, rc * inv);
        q += t;
        r -= t * b;
    }
    return q;
}

namespace {

// Elements of Q(i)[zbar][z]: index = power of z, entries are polynomials in zbar.
using Rec = std::vector<UPoly>;

void rec_trim(Rec& a) {
    while (!a.empty() && a.back().is_zero()) a.pop_back();
}

Rec to_rec(const Poly2& p) {
    Rec r(std::max(p.deg_z() + 1, 0));
    for (const auto& [m, c] : p.terms()) {
        std::vector<GaussianRational> v = r[m.first].coeffs();
        if (static_cast<int>(v.size()) <= m.second) v.resize(m.second + 1);
        v[m.second] += c;
        r[m.first] = UPoly(std::move(v));
    }
    rec_trim(r);
    return r;
}

Poly2 from_rec(const Rec& r) {
    Poly2 p;
    for (std::size_t i = 0; i < r.size(); ++i)
        for (int j = 0; j <= r[i].degree(); ++j)
            p += Poly2::monomial(static_cast<int>(i), j, r[i].coeff(j));
    return p;
}

int rec_deg(const Rec& a) { return static_cast<int>(a.size()) - 1; }

UPoly rec_content(const Rec& a) {
    UPoly g;
    for (const auto& c : a) {
        g = UPoly::gcd(g, c);
        if (g.degree() == 0) break;
    }
    return g;
}

Rec rec_div_scalar(const Rec& a, const UPoly& c) {
    Rec r;
    r.reserve(a.size());
    for (const auto& x : a) r.push_back(UPoly::exact_div(x, c));
    return r;
}

Rec rec_primitive(const Rec& a) {
    if (a.empty()) return a;
    return rec_div_scalar(a, rec_content(a));
}

// Sparse pseudo-remainder: a multiple of a by a power of lc(b), reduced mod b.
Rec rec_prem(Rec a, const Rec& b) {
    const UPoly& lb = b.back();
    int db = rec_deg(b);
    while (!a.empty() && rec_deg(a) >= db) {
        UPoly la = a.back();
        int shift = rec_deg(a) - db;
        for (auto& x : a) x = lb * x;
        for (int k = 0; k <= db; ++k) a[k + shift] = a[k + shift] - la * b[k];
        rec_trim(a);
    }
    return a;
}

} // namespace

Poly2 Poly2::gcd(const Poly2& a, const Poly2& b) {
    if (a.is_zero() && b.is_zero()) return {};
    Rec ra = to_rec(a), rb = to_rec(b);
    UPoly c;
    if (ra.empty()) {
        c = rec_content(rb);
    } else if (rb.empty()) {
        c = rec_content(ra);
    } else {
        c = UPoly::gcd(rec_content(ra), rec_content(rb));
    }
    Rec g;
    if (ra.empty()) {
        g = rec_primitive(rb);
    } else if (rb.empty()) {
        g = rec_primitive(ra);
    } else {
        Rec x = rec_primitive(ra), y = rec_primitive(rb);
        if (rec_deg(x) < rec_deg(y)) std::swap(x, y);
        while (true) {
            if (y.empty()) {
                g = x;
                break;
            }
            if (rec_deg(y) == 0) {
                g = Rec{UPoly::constant(1)};
                break;
            }
            Rec r = rec_prem(x, y);
            x = std::move(y);
            y = r.empty() ? Rec{} : rec_primitive(r);
        }
        g = rec_primitive(g);
    }
    Poly2 result = from_rec(g) * from_rec(Rec{c});
    if (result.is_zero()) return result;
    return result.leading().second.inverse() * result;
}

UPoly Poly2::zbar_only_factor() const {
    if (is_zero()) return {};
    return rec_content(to_rec(*this));
}

UPoly Poly2::z_only_factor() const {
    if (is_zero()) return {};
    UPoly c = rec_content(to_rec(conj_swap()));
    std::vector<GaussianRational> v = c.coeffs();
    for (auto& x : v) x = x.conj();
    return UPoly(std::move(v));
}

} // namespace nilwkb::algebra
