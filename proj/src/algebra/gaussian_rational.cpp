#include "nilwkb/algebra/gaussian_rational.hpp"

#include "nilwkb/error.hpp"

namespace nilwkb::algebra {

mpq_class parse_rational(const std::string& text) {
    std::string s;
    for (char c : text)
        if (c != ' ') s += c;
    if (!s.empty() && s[0] == '+') s.erase(0, 1);
    if (s.empty()) throw Error(ErrorKind::ParseError, "empty rational");
    mpq_class q;
    auto slash = s.find('/');
    auto is_int = [](const std::string& t) {
        std::size_t k = (!t.empty() && t[0] == '-') ? 1 : 0;
        if (k == t.size()) return false;
        for (; k < t.size(); ++k)
            if (t[k] < '0' || t[k] > '9') return false;
        return true;
    };
    if (!is_int(s.substr(0, slash)) ||
        (slash != std::string::npos && !is_int(s.substr(slash + 1))))
        throw Error(ErrorKind::ParseError, "bad rational '" + text + "'");
    if (q.set_str(s, 10) != 0) throw Error(ErrorKind::ParseError, "bad rational '" + text + "'");
    if (sgn(q.get_den()) == 0) throw Error(ErrorKind::ParseError, "zero denominator in '" + text + "'");
    q.canonicalize();
    return q;
}

std::string rational_to_string(const mpq_class& q) { return q.get_str(); }

GaussianRational::GaussianRational(mpq_class re, mpq_class im) : re_(std::move(re)), im_(std::move(im)) {
    re_.canonicalize();
    im_.canonicalize();
}

GaussianRational GaussianRational::parse(const std::string& text) {
    auto comma = text.find(',');
    if (comma == std::string::npos) return {parse_rational(text), 0};
    return {parse_rational(text.substr(0, comma)), parse_rational(text.substr(comma + 1))};
}

GaussianRational GaussianRational::parse(const std::string& re, const std::string& im) {
    return {parse_rational(re), parse_rational(im)};
}

GaussianRational GaussianRational::inverse() const {
    mpq_class n = norm();
    if (sgn(n) == 0) throw std::domain_error("division by zero Gaussian rational");
    return {re_ / n, -im_ / n};
}

std::string GaussianRational::to_string() const {
    if (sgn(im_) == 0) return re_.get_str();
    return re_.get_str() + "," + im_.get_str();
}

GaussianRational& GaussianRational::operator+=(const GaussianRational& o) {
    re_ += o.re_;
    im_ += o.im_;
    return *this;
}

GaussianRational& GaussianRational::operator-=(const GaussianRational& o) {
    re_ -= o.re_;
    im_ -= o.im_;
    return *this;
}

GaussianRational& GaussianRational::operator*=(const GaussianRational& o) {
    mpq_class r = re_ * o.re_ - im_ * o.im_;
    mpq_class i = re_ * o.im_ + im_ * o.re_;
    re_ = std::move(r);
    im_ = std::move(i);
    return *this;
}

GaussianRational& GaussianRational::operator/=(const GaussianRational& o) {
    return *this *= o.inverse();
}

bool operator<(const GaussianRational& a, const GaussianRational& b) {
    if (a.re_ != b.re_) return a.re_ < b.re_;
    return a.im_ < b.im_;
}

} // namespace nilwkb::algebra
