#pragma once

#include "nilwkb/algebra/matrix.hpp"

namespace nilwkb::algebra {

// Matrix-valued 1-form dz_part·dz + dzbar_part·dzbar.
class MatrixOneForm {
public:
    MatrixOneForm() = default;
    explicit MatrixOneForm(int n) : dz_(n, n), dzbar_(n, n) {}
    MatrixOneForm(RationalFunctionMatrix dz, RationalFunctionMatrix dzbar);
    static MatrixOneForm dz(RationalFunctionMatrix m);
    static MatrixOneForm dzbar(RationalFunctionMatrix m);

    int size() const { return dz_.rows(); }
    const RationalFunctionMatrix& dz_part() const { return dz_; }
    const RationalFunctionMatrix& dzbar_part() const { return dzbar_; }
    RationalFunctionMatrix& dz_part() { return dz_; }
    RationalFunctionMatrix& dzbar_part() { return dzbar_; }

    bool is_zero() const { return dz_.is_zero() && dzbar_.is_zero(); }
    // Chart change z = 1/w, including the Jacobian -dw/w^2 (and its conjugate).
    MatrixOneForm invert_chart() const;
    // Formal conjugation: swaps the form types and conjugates entries.
    MatrixOneForm conj() const;

    MatrixOneForm operator-() const { return {-dz_, -dzbar_}; }
    friend MatrixOneForm operator+(const MatrixOneForm& a, const MatrixOneForm& b);
    friend MatrixOneForm operator-(const MatrixOneForm& a, const MatrixOneForm& b);
    friend MatrixOneForm operator*(const BiRational& s, const MatrixOneForm& a) {
        return {s * a.dz_, s * a.dzbar_};
    }
    MatrixOneForm& operator+=(const MatrixOneForm& o) { return *this = *this + o; }
    friend bool operator==(const MatrixOneForm& a, const MatrixOneForm& b) {
        return a.dz_ == b.dz_ && a.dzbar_ == b.dzbar_;
    }
    friend bool operator!=(const MatrixOneForm& a, const MatrixOneForm& b) { return !(a == b); }

private:
    RationalFunctionMatrix dz_;
    RationalFunctionMatrix dzbar_;
};

// All 2-forms below are returned as their dz∧dzbar coefficient.

// A∧B for matrix 1-forms.
RationalFunctionMatrix wedge(const MatrixOneForm& a, const MatrixOneForm& b);
// Graded bracket [A∧B] = A∧B + B∧A.
RationalFunctionMatrix wedge_bracket(const MatrixOneForm& a, const MatrixOneForm& b);
// Exterior derivative, entrywise.
RationalFunctionMatrix exterior_d(const MatrixOneForm& a);

} // namespace nilwkb::algebra
