#include "nilwkb/connection/catalog.hpp"

namespace nilwkb::connection::catalog {

using algebra::Poly2;

RationalFunctionMatrix E(int n, int i, int j) { return RationalFunctionMatrix::unit(n, i - 1, j - 1); }

ConnectionFamily trivial(int n) { return ConnectionFamily(MatrixOneForm(n), MatrixOneForm(n), MatrixOneForm(n)); }

ConnectionFamily manufactured_sl2() {
    return ConnectionFamily(MatrixOneForm::dz(E(2, 1, 2)), MatrixOneForm::dz(E(2, 2, 1)), MatrixOneForm(2));
}

ConnectionFamily manufactured_sl3() {
    return ConnectionFamily(MatrixOneForm::dz(E(3, 1, 2) + E(3, 2, 3)), MatrixOneForm::dz(E(3, 3, 1)),
                            MatrixOneForm(3));
}

namespace {

BiRational disk_u() { return BiRational(Poly2(1), Poly2(1) - Poly2::z() * Poly2::zbar()); }

} // namespace

ConnectionFamily uniformization_disk_rank2() {
    BiRational u = disk_u();
    BiRational a = BiRational::zbar() * u;
    RationalFunctionMatrix conn = a * E(2, 1, 1) - a * E(2, 2, 2);
    return ConnectionFamily(MatrixOneForm::dz(E(2, 1, 2)), MatrixOneForm::dz(conn),
                            MatrixOneForm::dzbar(u * u * E(2, 2, 1)));
}

ConnectionFamily uniformization_disk_rank3() {
    BiRational u = disk_u();
    BiRational a = BiRational::zbar() * u;
    RationalFunctionMatrix conn = BiRational(2) * a * (E(3, 1, 1) - E(3, 3, 3));
    return ConnectionFamily(MatrixOneForm::dz(E(3, 1, 2) + E(3, 2, 3)), MatrixOneForm::dz(conn),
                            MatrixOneForm::dzbar(BiRational(2) * u * u * (E(3, 2, 1) + E(3, 3, 2))));
}

ConnectionFamily regular_diagonal() {
    BiRational inv_z(Poly2(1), Poly2::z());
    RationalFunctionMatrix d = BiRational(GaussianRational(0, -1)) * E(2, 1, 1) + BiRational(GaussianRational(0, 1)) * E(2, 2, 2);
    return ConnectionFamily(MatrixOneForm::dz(inv_z * d), MatrixOneForm(2), MatrixOneForm(2), {GaussianRational(0)});
}

} // namespace nilwkb::connection::catalog
