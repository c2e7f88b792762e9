#include "nilwkb/algebra/form.hpp"

#include "nilwkb/error.hpp"

namespace nilwkb::algebra {

MatrixOneForm::MatrixOneForm(RationalFunctionMatrix dz, RationalFunctionMatrix dzbar)
    : dz_(std::move(dz)), dzbar_(std::move(dzbar)) {
    if (dz_.rows() != dzbar_.rows() || dz_.cols() != dzbar_.cols())
        throw Error(ErrorKind::DimensionMismatch, "form parts differ in shape");
}

MatrixOneForm MatrixOneForm::dz(RationalFunctionMatrix m) {
    int r = m.rows(), c = m.cols();
    return {std::move(m), RationalFunctionMatrix(r, c)};
}

MatrixOneForm MatrixOneForm::dzbar(RationalFunctionMatrix m) {
    int r = m.rows(), c = m.cols();
    return {RationalFunctionMatrix(r, c), std::move(m)};
}

MatrixOneForm MatrixOneForm::invert_chart() const {
    BiRational jac = -BiRational(Poly2(1), Poly2::monomial(2, 0));
    BiRational jac_bar = -BiRational(Poly2(1), Poly2::monomial(0, 2));
    return {jac * dz_.invert_chart(), jac_bar * dzbar_.invert_chart()};
}

MatrixOneForm MatrixOneForm::conj() const { return {dzbar_.conj_swap(), dz_.conj_swap()}; }

MatrixOneForm operator+(const MatrixOneForm& a, const MatrixOneForm& b) {
    return {a.dz_ + b.dz_, a.dzbar_ + b.dzbar_};
}

MatrixOneForm operator-(const MatrixOneForm& a, const MatrixOneForm& b) {
    return {a.dz_ - b.dz_, a.dzbar_ - b.dzbar_};
}

RationalFunctionMatrix wedge(const MatrixOneForm& a, const MatrixOneForm& b) {
    if (a.size() != b.size()) throw Error(ErrorKind::DimensionMismatch, "wedge of forms of different rank");
    return a.dz_part() * b.dzbar_part() - a.dzbar_part() * b.dz_part();
}

RationalFunctionMatrix wedge_bracket(const MatrixOneForm& a, const MatrixOneForm& b) {
    return wedge(a, b) + wedge(b, a);
}

RationalFunctionMatrix exterior_d(const MatrixOneForm& a) {
    return a.dzbar_part().d_dz() - a.dz_part().d_dzbar();
}

} // namespace nilwkb::algebra
