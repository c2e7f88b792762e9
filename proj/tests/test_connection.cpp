#include <random>

#include "doctest.h"
#include "nilwkb/connection/catalog.hpp"
#include "nilwkb/connection/flatness.hpp"
#include "nilwkb/error.hpp"

using namespace nilwkb;
using namespace nilwkb::connection;
using catalog::E;

namespace {

using R = BiRational;

std::vector<ConnectionFamily> catalog_families() {
    return {catalog::trivial(2),
            catalog::trivial(3),
            catalog::manufactured_sl2(),
            catalog::manufactured_sl3(),
            catalog::uniformization_disk_rank2(),
            catalog::uniformization_disk_rank3(),
            catalog::regular_diagonal()};
}

GaussianMatrix random_invertible(std::mt19937_64& rng, int n) {
    std::uniform_int_distribution<long> c(-3, 3);
    while (true) {
        GaussianMatrix g(n, std::vector<GaussianRational>(n));
        for (auto& row : g)
            for (auto& x : row) x = GaussianRational(c(rng), c(rng));
        if (algebra::rank_exact(g) == n) return g;
    }
}

} // namespace

TEST_CASE("check_flatness examples") {
    auto f1 = ConnectionFamily(MatrixOneForm::dz(E(2, 1, 2)), MatrixOneForm(2), MatrixOneForm(2));
    CHECK(check_flatness(f1).is_flat);
    CHECK(check_flatness(catalog::manufactured_sl2()).is_flat);

    auto f3 = ConnectionFamily(MatrixOneForm::dz(R::z() * E(2, 1, 2)), MatrixOneForm(2),
                               MatrixOneForm::dzbar(R::zbar() * E(2, 2, 1)));
    auto report = check_flatness(f3);
    CHECK_FALSE(report.is_flat);
    REQUIRE(report.residuals.size() == 5);
    for (const auto& r : report.residuals) {
        if (r.name == "F_D + [phi^psi]") {
            CHECK_FALSE(r.value.is_zero());
            CHECK(r.value(0, 0) == R::z() * R::zbar());
        } else {
            CHECK(r.value.is_zero());
        }
    }
}

TEST_CASE("every catalog family is exactly flat") {
    for (const auto& f : catalog_families()) CHECK(check_flatness(f).is_flat);
}

TEST_CASE("generic curvature expansion agrees with the named residuals") {
    std::vector<ConnectionFamily> fams = catalog_families();
    fams.push_back(ConnectionFamily(MatrixOneForm::dz(R::z() * E(2, 1, 2)), MatrixOneForm(2),
                                    MatrixOneForm::dzbar(R::zbar() * E(2, 2, 1))));
    fams.push_back(ConnectionFamily(MatrixOneForm::dz(E(2, 1, 2)), MatrixOneForm::dzbar(R::z() * E(2, 2, 1)),
                                    MatrixOneForm(2)));
    for (const auto& f : fams) {
        bool all_zero = true;
        for (const auto& [e, m] : curvature_expansion(f)) all_zero = all_zero && m.is_zero();
        CHECK(all_zero == check_flatness(f).is_flat);
    }
}

TEST_CASE("conformal_limit_family") {
    auto zero = MatrixOneForm(2);
    auto f = conformal_limit_family(zero, zero, zero, zero);
    CHECK(f == catalog::trivial(2));
    CHECK(check_flatness(f).is_flat);

    auto g = conformal_limit_family(MatrixOneForm::dz(E(2, 1, 2)), zero, zero, MatrixOneForm::dzbar(E(2, 2, 1)));
    CHECK(g.phi() == MatrixOneForm::dz(E(2, 1, 2)));
    CHECK(g.psi() == MatrixOneForm::dzbar(E(2, 2, 1)));
    CHECK(g.conn().is_zero());
    CHECK(g.is_standard());

    CHECK_THROWS_AS(conformal_limit_family(zero, zero, MatrixOneForm(3), zero), Error);
}

TEST_CASE("scale_orbit") {
    auto f = catalog::manufactured_sl2();
    CHECK(scale_orbit(f, 1) == f);
    auto g = scale_orbit(f, 2);
    CHECK(g.phi() == MatrixOneForm::dz(R(2) * E(2, 1, 2)));
    try {
        scale_orbit(f, 0);
        FAIL("expected ZeroScale");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::ZeroScale);
    }
}

TEST_CASE("scaling phi by xi and psi by 1/xi keeps catalog families flat") {
    std::mt19937_64 rng(3);
    std::uniform_int_distribution<long> c(-5, 5);
    for (const auto& f : catalog_families()) {
        for (int k = 0; k < 3; ++k) {
            GaussianRational xi(c(rng), c(rng));
            if (xi.is_zero()) xi = 1;
            CHECK(check_flatness(scale_psi(scale_orbit(f, xi), xi)).is_flat);
        }
    }
    // Scaling φ alone breaks the uniformization family.
    CHECK_FALSE(check_flatness(scale_orbit(catalog::uniformization_disk_rank2(), 2)).is_flat);
}

TEST_CASE("flatness is natural under constant gauges") {
    std::mt19937_64 rng(17);
    std::vector<ConnectionFamily> fams = catalog_families();
    fams.push_back(ConnectionFamily(MatrixOneForm::dz(R::z() * E(2, 1, 2)), MatrixOneForm(2),
                                    MatrixOneForm::dzbar(R::zbar() * E(2, 2, 1))));
    int n_checked = 0;
    for (int k = 0; k < 24; ++k) {
        const auto& f = fams[k % fams.size()];
        auto g = random_invertible(rng, f.rank());
        CHECK(check_flatness(conjugate_constant(f, g)).is_flat == check_flatness(f).is_flat);
        ++n_checked;
    }
    CHECK(n_checked >= 20);
}

TEST_CASE("holomorphic gauge transforms keep flat families flat") {
    RationalFunctionMatrix g{{R::z(), R(-1)}, {R(1), R(0)}};
    auto f = gauge_transform(catalog::manufactured_sl2(), g);
    CHECK(check_flatness(f).is_flat);
    CHECK(f.conn() == MatrixOneForm::dz(g.inverse() * E(2, 2, 1) * g + g.inverse() * g.d_dz()));
}

TEST_CASE("poles must sit at declared punctures") {
    R inv_z(algebra::Poly2(1), algebra::Poly2::z());
    auto phi = MatrixOneForm::dz(inv_z * E(2, 1, 2));
    CHECK_THROWS_AS(ConnectionFamily(phi, MatrixOneForm(2), MatrixOneForm(2)), Error);
    CHECK_NOTHROW(ConnectionFamily(phi, MatrixOneForm(2), MatrixOneForm(2), {GaussianRational(0)}));
    R inv_zbar(algebra::Poly2(1), algebra::Poly2::zbar());
    CHECK_NOTHROW(ConnectionFamily(MatrixOneForm(2), MatrixOneForm::dzbar(inv_zbar * E(2, 1, 1)), MatrixOneForm(2),
                                   {GaussianRational(0)}));
    CHECK(poles_declared(R(algebra::Poly2(1), algebra::Poly2(1) - algebra::Poly2::z() * algebra::Poly2::zbar()), {}));
}

TEST_CASE("type and trace conditions are enforced") {
    CHECK_THROWS_AS(ConnectionFamily(MatrixOneForm::dz(E(2, 1, 1)), MatrixOneForm(2), MatrixOneForm(2)), Error);
    CHECK_THROWS_AS(ConnectionFamily(MatrixOneForm::dzbar(E(2, 1, 2)), MatrixOneForm(2), MatrixOneForm(2)), Error);
    CHECK_THROWS_AS(ConnectionFamily(MatrixOneForm(2), MatrixOneForm(2), MatrixOneForm::dz(E(2, 1, 2))), Error);
}

TEST_CASE("chart inversion carries the Jacobian") {
    R inv_z(algebra::Poly2(1), algebra::Poly2::z());
    auto f = MatrixOneForm::dz(inv_z * E(2, 1, 1));
    // dz/z = −dw/w.
    CHECK(f.invert_chart() == MatrixOneForm::dz(-inv_z * E(2, 1, 1)));
    auto once = MatrixOneForm::dz(R::z() * E(2, 1, 2)).invert_chart();
    CHECK(once.invert_chart() == MatrixOneForm::dz(R::z() * E(2, 1, 2)));
}
