#pragma once

#include <complex>
#include <cstdint>
#include <initializer_list>
#include <optional>
#include <vector>

#include <Eigen/Dense>

#include "nilwkb/algebra/birational.hpp"

namespace nilwkb::algebra {

using GaussianMatrix = std::vector<std::vector<GaussianRational>>;

class RationalFunctionMatrix {
public:
    RationalFunctionMatrix() = default;
    RationalFunctionMatrix(int rows, int cols);
    RationalFunctionMatrix(std::initializer_list<std::initializer_list<BiRational>> rows);

    static RationalFunctionMatrix identity(int n);
    // Elementary matrix with a 1 at (i, j), zero-based.
    static RationalFunctionMatrix unit(int n, int i, int j);

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    bool is_square() const { return rows_ == cols_; }
    const BiRational& operator()(int i, int j) const { return e_[i * cols_ + j]; }
    BiRational& operator()(int i, int j) { return e_[i * cols_ + j]; }

    bool is_zero() const;
    bool depends_on_zbar() const;
    BiRational trace() const;
    BiRational det() const;
    RationalFunctionMatrix transpose() const;
    RationalFunctionMatrix conj_swap() const;
    RationalFunctionMatrix d_dz() const;
    RationalFunctionMatrix d_dzbar() const;
    RationalFunctionMatrix invert_chart() const;
    RationalFunctionMatrix pow(int k) const;
    // Throws std::domain_error if singular as a matrix over the function field.
    RationalFunctionMatrix inverse() const;

    Eigen::MatrixXcd eval(std::complex<double> z) const;
    GaussianMatrix eval_exact(const GaussianRational& z) const;

    RationalFunctionMatrix operator-() const;
    friend RationalFunctionMatrix operator+(const RationalFunctionMatrix& a, const RationalFunctionMatrix& b);
    friend RationalFunctionMatrix operator-(const RationalFunctionMatrix& a, const RationalFunctionMatrix& b);
    friend RationalFunctionMatrix operator*(const RationalFunctionMatrix& a, const RationalFunctionMatrix& b);
    friend RationalFunctionMatrix operator*(const BiRational& s, const RationalFunctionMatrix& a);
    RationalFunctionMatrix& operator+=(const RationalFunctionMatrix& o) { return *this = *this + o; }
    friend bool operator==(const RationalFunctionMatrix& a, const RationalFunctionMatrix& b) {
        return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.e_ == b.e_;
    }
    friend bool operator!=(const RationalFunctionMatrix& a, const RationalFunctionMatrix& b) { return !(a == b); }

private:
    int rows_ = 0;
    int cols_ = 0;
    std::vector<BiRational> e_;
};

// [A, B] = AB - BA.
RationalFunctionMatrix commutator(const RationalFunctionMatrix& a, const RationalFunctionMatrix& b);

// Fraction-free (Bareiss) rank of an exact matrix.
int rank_exact(GaussianMatrix m);

// Rank of M evaluated at `at`. With fallback_generic, also samples up to 8
// pseudo-random Gaussian-rational points (poles skipped) and returns the maximum.
int matrix_rank_exact(const RationalFunctionMatrix& m, const GaussianRational& at, bool fallback_generic,
                      std::uint64_t seed = 0x5eed);

// Deterministic pseudo-random Gaussian-rational points with small denominators.
std::vector<GaussianRational> generic_points(std::size_t count, std::uint64_t seed);

} // namespace nilwkb::algebra
