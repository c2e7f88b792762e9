#include "nilwkb/algebra/matrix.hpp"

#include <random>
#include <stdexcept>

#include "nilwkb/error.hpp"

namespace nilwkb::algebra {

RationalFunctionMatrix::RationalFunctionMatrix(int rows, int cols)
    : rows_(rows), cols_(cols), e_(static_cast<std::size_t>(rows) * cols) {}

RationalFunctionMatrix::RationalFunctionMatrix(std::initializer_list<std::initializer_list<BiRational>> rows) {
    rows_ = static_cast<int>(rows.size());
    cols_ = rows_ ? static_cast<int>(rows.begin()->size()) : 0;
    for (const auto& r : rows) {
        if (static_cast<int>(r.size()) != cols_) throw Error(ErrorKind::DimensionMismatch, "ragged matrix");
        for (const auto& x : r) e_.push_back(x);
    }
}

RationalFunctionMatrix RationalFunctionMatrix::identity(int n) {
    RationalFunctionMatrix m(n, n);
    for (int i = 0; i < n; ++i) m(i, i) = 1;
    return m;
}

RationalFunctionMatrix RationalFunctionMatrix::unit(int n, int i, int j) {
    RationalFunctionMatrix m(n, n);
    m(i, j) = 1;
    return m;
}

bool RationalFunctionMatrix::is_zero() const {
    for (const auto& x : e_)
        if (!x.is_zero()) return false;
    return true;
}

bool RationalFunctionMatrix::depends_on_zbar() const {
    for (const auto& x : e_)
        if (x.depends_on_zbar()) return true;
    return false;
}

BiRational RationalFunctionMatrix::trace() const {
    if (!is_square()) throw Error(ErrorKind::DimensionMismatch, "trace of non-square matrix");
    BiRational t;
    for (int i = 0; i < rows_; ++i) t += (*this)(i, i);
    return t;
}

BiRational RationalFunctionMatrix::det() const {
    if (!is_square()) throw Error(ErrorKind::DimensionMismatch, "det of non-square matrix");
    int n = rows_;
    if (n == 1) return e_[0];
    if (n == 2) return (*this)(0, 0) * (*this)(1, 1) - (*this)(0, 1) * (*this)(1, 0);
    RationalFunctionMatrix a = *this;
    BiRational d = 1;
    for (int k = 0; k < n; ++k) {
        int p = k;
        while (p < n && a(p, k).is_zero()) ++p;
        if (p == n) return {};
        if (p != k) {
            for (int j = 0; j < n; ++j) std::swap(a(p, j), a(k, j));
            d = -d;
        }
        d *= a(k, k);
        for (int i = k + 1; i < n; ++i) {
            if (a(i, k).is_zero()) continue;
            BiRational f = a(i, k) / a(k, k);
            for (int j = k; j < n; ++j) a(i, j) -= f * a(k, j);
        }
    }
    return d;
}

RationalFunctionMatrix RationalFunctionMatrix::transpose() const {
    RationalFunctionMatrix t(cols_, rows_);
    for (int i = 0; i < rows_; ++i)
        for (int j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
}

namespace {

template <class F>
RationalFunctionMatrix map_entries(const RationalFunctionMatrix& m, F f) {
    RationalFunctionMatrix r(m.rows(), m.cols());
    for (int i = 0; i < m.rows(); ++i)
        for (int j = 0; j < m.cols(); ++j) r(i, j) = f(m(i, j));
    return r;
}

} // namespace

RationalFunctionMatrix RationalFunctionMatrix::conj_swap() const {
    return map_entries(*this, [](const BiRational& x) { return x.conj_swap(); });
}

RationalFunctionMatrix RationalFunctionMatrix::d_dz() const {
    return map_entries(*this, [](const BiRational& x) { return x.d_dz(); });
}

RationalFunctionMatrix RationalFunctionMatrix::d_dzbar() const {
    return map_entries(*this, [](const BiRational& x) { return x.d_dzbar(); });
}

RationalFunctionMatrix RationalFunctionMatrix::invert_chart() const {
    return map_entries(*this, [](const BiRational& x) { return x.invert_chart(); });
}

RationalFunctionMatrix RationalFunctionMatrix::pow(int k) const {
    if (!is_square()) throw Error(ErrorKind::DimensionMismatch, "power of non-square matrix");
    RationalFunctionMatrix r = identity(rows_);
    for (int i = 0; i < k; ++i) r = r * *this;
    return r;
}

RationalFunctionMatrix RationalFunctionMatrix::inverse() const {
    if (!is_square()) throw Error(ErrorKind::DimensionMismatch, "inverse of non-square matrix");
    int n = rows_;
    RationalFunctionMatrix a = *this, inv = identity(n);
    for (int k = 0; k < n; ++k) {
        int p = k;
        while (p < n && a(p, k).is_zero()) ++p;
        if (p == n) throw std::domain_error("singular matrix");
        if (p != k)
            for (int j = 0; j < n; ++j) {
                std::swap(a(p, j), a(k, j));
                std::swap(inv(p, j), inv(k, j));
            }
        BiRational piv = a(k, k);
        for (int j = 0; j < n; ++j) {
            a(k, j) = a(k, j) / piv;
            inv(k, j) = inv(k, j) / piv;
        }
        for (int i = 0; i < n; ++i) {
            if (i == k || a(i, k).is_zero()) continue;
            BiRational f = a(i, k);
            for (int j = 0; j < n; ++j) {
                a(i, j) -= f * a(k, j);
                inv(i, j) -= f * inv(k, j);
            }
        }
    }
    return inv;
}

Eigen::MatrixXcd RationalFunctionMatrix::eval(std::complex<double> z) const {
    Eigen::MatrixXcd m(rows_, cols_);
    for (int i = 0; i < rows_; ++i)
        for (int j = 0; j < cols_; ++j) m(i, j) = (*this)(i, j).is_zero() ? 0.0 : (*this)(i, j).eval(z);
    return m;
}

GaussianMatrix RationalFunctionMatrix::eval_exact(const GaussianRational& z) const {
    GaussianMatrix m(rows_, std::vector<GaussianRational>(cols_));
    for (int i = 0; i < rows_; ++i)
        for (int j = 0; j < cols_; ++j) m[i][j] = (*this)(i, j).eval_exact(z);
    return m;
}

RationalFunctionMatrix RationalFunctionMatrix::operator-() const {
    return map_entries(*this, [](const BiRational& x) { return -x; });
}

RationalFunctionMatrix operator+(const RationalFunctionMatrix& a, const RationalFunctionMatrix& b) {
    if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw Error(ErrorKind::DimensionMismatch, "matrix sum");
    RationalFunctionMatrix r = a;
    for (std::size_t k = 0; k < r.e_.size(); ++k) r.e_[k] += b.e_[k];
    return r;
}

RationalFunctionMatrix operator-(const RationalFunctionMatrix& a, const RationalFunctionMatrix& b) {
    return a + (-b);
}

RationalFunctionMatrix operator*(const RationalFunctionMatrix& a, const RationalFunctionMatrix& b) {
    if (a.cols_ != b.rows_) throw Error(ErrorKind::DimensionMismatch, "matrix product");
    RationalFunctionMatrix r(a.rows_, b.cols_);
    for (int i = 0; i < a.rows_; ++i)
        for (int k = 0; k < a.cols_; ++k) {
            if (a(i, k).is_zero()) continue;
            for (int j = 0; j < b.cols_; ++j)
                if (!b(k, j).is_zero()) r(i, j) += a(i, k) * b(k, j);
        }
    return r;
}

RationalFunctionMatrix operator*(const BiRational& s, const RationalFunctionMatrix& a) {
    return map_entries(a, [&](const BiRational& x) { return s * x; });
}

RationalFunctionMatrix commutator(const RationalFunctionMatrix& a, const RationalFunctionMatrix& b) {
    return a * b - b * a;
}

int rank_exact(GaussianMatrix m) {
    int rows = static_cast<int>(m.size());
    int cols = rows ? static_cast<int>(m[0].size()) : 0;
    int rank = 0;
    GaussianRational prev = 1;
    for (int c = 0; c < cols && rank < rows; ++c) {
        int p = rank;
        while (p < rows && m[p][c].is_zero()) ++p;
        if (p == rows) continue;
        std::swap(m[p], m[rank]);
        const GaussianRational piv = m[rank][c];
        for (int i = rank + 1; i < rows; ++i) {
            for (int j = c + 1; j < cols; ++j) m[i][j] = (piv * m[i][j] - m[i][c] * m[rank][j]) / prev;
            m[i][c] = 0;
        }
        prev = piv;
        ++rank;
    }
    return rank;
}

std::vector<GaussianRational> generic_points(std::size_t count, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<long> num(-40, 40), den(1, 11);
    std::vector<GaussianRational> pts;
    for (std::size_t k = 0; k < count; ++k) {
        mpq_class re(num(rng), den(rng)), im(num(rng), den(rng));
        re.canonicalize();
        im.canonicalize();
        pts.emplace_back(re, im);
    }
    return pts;
}

int matrix_rank_exact(const RationalFunctionMatrix& m, const GaussianRational& at, bool fallback_generic,
                      std::uint64_t seed) {
    if (!fallback_generic) return rank_exact(m.eval_exact(at));
    int best = -1;
    try {
        best = rank_exact(m.eval_exact(at));
    } catch (const Error& e) {
        if (e.kind() != ErrorKind::PoleHit) throw;
    }
    for (const auto& pt : generic_points(8, seed)) {
        try {
            best = std::max(best, rank_exact(m.eval_exact(pt)));
        } catch (const Error& e) {
            if (e.kind() != ErrorKind::PoleHit) throw;
        }
    }
    if (best < 0) throw Error(ErrorKind::PoleHit, "every sample point hit a pole");
    return best;
}

} // namespace nilwkb::algebra
