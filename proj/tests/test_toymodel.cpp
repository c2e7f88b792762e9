#include <cmath>
#include <functional>
#include <random>

#include "doctest.h"
#include "nilwkb/error.hpp"
#include "nilwkb/gauge/gauge.hpp"
#include "nilwkb/holonomy/transport.hpp"
#include "nilwkb/toymodel/toymodel.hpp"

using namespace nilwkb;
using namespace nilwkb::toymodel;
using algebra::RationalFunctionMatrix;
using algebra::UPoly;

namespace {

using R = algebra::BiRational;
using Q = GaussianRational;

ErrorKind kind_of(const std::function<void()>& f) {
    try {
        f();
    } catch (const Error& e) {
        return e.kind();
    }
    FAIL("expected an error");
    return ErrorKind::InvalidArgument;
}

ParabolicWeights weights(long a, long da, long b, long db, long c, long dc, long d, long dd) {
    return ParabolicWeights({mpq_class(a, da), mpq_class(b, db), mpq_class(c, dc), mpq_class(d, dd)});
}

GaussianMatrix mat(Q a, Q b, Q c, Q d) { return {{a, b}, {c, d}}; }

R delta(const Q& p) {
    R z = R::z();
    return z * (z - R(1)) * (z - R(p));
}

// Brute force over all 24 permutations, independent of the σ(1) shortcut.
bool inequality_one_brute(const std::array<mpq_class, 4>& r) {
    std::array<int, 4> s{0, 1, 2, 3};
    do {
        mpq_class rest = r[s[1]] + r[s[2]] + r[s[3]];
        if (!(r[s[0]] < rest && rest < 1 + r[s[0]])) return false;
    } while (std::next_permutation(s.begin(), s.end()));
    return true;
}

bool inequality_two_brute(const std::array<mpq_class, 4>& r) {
    std::array<int, 3> s{0, 1, 2};
    do {
        if (!(r[s[0]] + r[3] < r[s[1]] + r[s[2]])) return false;
    } while (std::next_permutation(s.begin(), s.end()));
    return true;
}

// Homogeneous bracket and the cross ratio that sends (0, 1, ∞, w) to w.
Q bracket(const Line& a, const Line& b) { return a[0] * b[1] - a[1] * b[0]; }
Q cross_ratio(const std::array<Line, 4>& l) {
    return bracket(l[3], l[0]) * bracket(l[1], l[2]) / (bracket(l[3], l[2]) * bracket(l[1], l[0]));
}

Q small_q(std::mt19937_64& rng, int lo, int hi) {
    std::uniform_int_distribution<long> d(lo, hi);
    return {mpq_class(d(rng), 2), mpq_class(d(rng), 3)};
}

} // namespace

TEST_CASE("weight inequalities on the reference weights") {
    auto good = check_weight_inequalities(weights(1, 4, 1, 4, 1, 4, 1, 8));
    CHECK(good.all_pass());
    for (const auto& f : good.families) CHECK(f.witnesses.empty());

    auto sum_one = check_weight_inequalities(weights(1, 4, 1, 4, 1, 4, 1, 4));
    CHECK(good.families[0].pass);
    CHECK_FALSE(sum_one.families[2].pass);
    CHECK_FALSE(sum_one.all_pass());

    auto lopsided = check_weight_inequalities(weights(1, 3, 1, 8, 1, 8, 1, 16));
    CHECK_FALSE(lopsided.families[0].pass);
    CHECK_FALSE(lopsided.families[0].witnesses.empty());
}

TEST_CASE("weights outside (0, 1/2) and bad input are rejected") {
    CHECK(kind_of([] { weights(1, 2, 1, 4, 1, 4, 1, 8); }) == ErrorKind::InvalidWeights);
    CHECK(kind_of([] { weights(0, 1, 1, 4, 1, 4, 1, 8); }) == ErrorKind::InvalidWeights);
    CHECK(kind_of([] { ParabolicWeights::parse("1/4,1/4,1/4"); }) == ErrorKind::ParseError);
    auto w = ParabolicWeights::parse("1/4,1/4,1/4,1/8");
    CHECK(w.rho[3] == mpq_class(1, 8));
}

TEST_CASE("weight inequalities agree with a permutation brute force") {
    std::mt19937_64 rng(20240611);
    std::uniform_int_distribution<long> num(1, 23);
    int agree = 0;
    for (int trial = 0; trial < 200; ++trial) {
        std::array<mpq_class, 4> r;
        for (auto& x : r) x = mpq_class(num(rng), 48);
        ParabolicWeights w(r);
        auto rep = check_weight_inequalities(w);
        CHECK(rep.families[0].pass == inequality_one_brute(r));
        CHECK(rep.families[1].pass == inequality_two_brute(r));
        CHECK(rep.families[2].pass == (r[0] + r[1] + r[2] + r[3] < 1));
        ++agree;
    }
    CHECK(agree >= 20);
}

TEST_CASE("parabolic degrees") {
    auto w = weights(1, 4, 1, 4, 1, 4, 1, 8);
    CHECK(pdeg(0, {true, false, false, true}, w) == mpq_class(-1, 8));
    CHECK(pdeg(-1, {true, true, true, false}, w) == mpq_class(-3, 8));
    auto table = pdeg_table(w);
    CHECK(table.size() == 32);
    for (const auto& e : table) {
        mpq_class expect(e.degree);
        for (int i = 0; i < 4; ++i) expect += e.incidence[i] ? w.rho[i] : mpq_class(-w.rho[i]);
        CHECK(e.value == expect);
    }
}

TEST_CASE("phi_p residues and flags") {
    auto h = build_toy_higgs(ToyKind::PhiP, Q(2));
    auto res = residues(h);
    REQUIRE(res.size() == 4);
    CHECK(res[0].residue == mat(0, 0, Q(mpq_class(1, 2)), 0));
    // Δ'(1) = 1 − p = −1, numerator at 1 is ((1, −1), (1, −1)).
    CHECK(res[1].residue == mat(-1, 1, -1, 1));
    CHECK(!res[2].at.has_value());
    // Δ'(p) = p(p − 1) = 2, numerator at 2 is ((2, −4), (1, −2)).
    CHECK(res[3].residue == mat(1, -2, Q(mpq_class(1, 2)), -1));
    for (int i = 0; i < 4; ++i) {
        const auto& r = res[i].residue;
        const auto& l = h.flags.lines[i];
        CHECK((r[0][0] * l[0] + r[0][1] * l[1]).is_zero());
        CHECK((r[1][0] * l[0] + r[1][1] * l[1]).is_zero());
    }
    REQUIRE(h.flags.w.has_value());
    CHECK(*h.flags.w == Q(2));
    CHECK(same_line(h.flags.lines[3], Line{Q(2), Q(1)}));
}

TEST_CASE("special fields have the declared vanishing residues") {
    auto h0 = build_toy_higgs(ToyKind::Phi0, Q(3));
    CHECK(residues(h0)[0].residue == mat(0, 0, Q(mpq_class(-1, 3)), 0));
    CHECK(residues(h0)[1].residue == mat(0, 0, 0, 0));
    CHECK(residues(h0)[2].residue == mat(0, 0, 0, 0));
    CHECK(*h0.flags.w == Q(0));

    auto h1 = build_toy_higgs(ToyKind::Phi1, Q(3));
    CHECK(residues(h1)[0].residue == mat(0, 0, 0, 0));
    CHECK(residues(h1)[2].residue == mat(0, 0, 0, 0));
    CHECK(*h1.flags.w == Q(1));

    auto hinf = build_toy_higgs(ToyKind::PhiInf, Q(3));
    CHECK(residues(hinf)[0].residue == mat(0, 0, 0, 0));
    CHECK(residues(hinf)[1].residue == mat(0, 0, 0, 0));
    CHECK(residues(hinf)[2].residue == mat(0, -1, 0, 0));
    CHECK_FALSE(hinf.flags.w.has_value());

    CHECK(kind_of([] { build_toy_higgs(ToyKind::PhiP, Q(1)); }) == ErrorKind::BadPuncture);
    CHECK(kind_of([] { build_toy_higgs(ToyKind::Phi0, Q(0)); }) == ErrorKind::BadPuncture);
    CHECK(parse_toy_kind("phi_inf") == ToyKind::PhiInf);
    CHECK(kind_of([] { parse_toy_kind("phi_2"); }) == ErrorKind::ParseError);
}

TEST_CASE("residue and pole-order helpers") {
    R z = R::z();
    CHECK(residue_at(R(1) / z, Q(0)) == Q(1));
    CHECK(residue_at(R(1) / (z * z), Q(0)) == Q(0));
    CHECK(residue_at((z + R(1)) / (z * z), Q(0)) == Q(1));
    CHECK(residue_at(R(1) / ((z - R(2)) * (z - R(2)) * z), Q(2)) == Q(mpq_class(-1, 4)));
    CHECK(pole_order(R(1) / (z * z), Q(0)) == 2);
    CHECK(pole_order(z, Q(0)) == -1);
    // dz has a double pole at ∞, dz² a fourth-order pole.
    CHECK(pole_order_at_infinity(R(1), 1) == 2);
    CHECK(pole_order_at_infinity(R(1), 2) == 4);
    auto q = toy_quadratic_differential(Q(-2), Q(2));
    CHECK(pole_order_at_infinity(q, 2) == 1);
    for (Q at : {Q(0), Q(1), Q(2)}) CHECK(pole_order(q, at) == 1);
}

TEST_CASE("aligning the kernel of phi_p gives c = 2") {
    auto h = build_toy_higgs(ToyKind::PhiP, Q(2));
    auto aligned = aligned_family(h);
    // g = ((z, −1), (1, 0)) moves φ to −E12/Δ and produces g⁻¹dg = −E21 dz.
    CHECK(aligned.phi() == MatrixOneForm::dz(RationalFunctionMatrix{{0, R(-1) / delta(Q(2))}, {0, 0}}));
    CHECK(aligned.conn() == MatrixOneForm::dz(RationalFunctionMatrix{{0, 0}, {R(-1), 0}}));

    auto sec = gauge::secondary_higgs(aligned, {1, 1});
    auto q = gauge::k_differentials(sec.Phi, 2).at(0);
    CHECK(q == toy_quadratic_differential(Q(2), Q(2)));
    CHECK(q == R(2) / delta(Q(2)));
    CHECK(sec.leading_exponent == mpq_class(-1, 2));
}

TEST_CASE("constant-kernel fields hit a fixed point") {
    for (ToyKind k : {ToyKind::Phi0, ToyKind::Phi1, ToyKind::PhiInf}) {
        auto h = build_toy_higgs(k, Q(2));
        auto aligned = aligned_family(h);
        CHECK(aligned.conn() == MatrixOneForm(2));
        CHECK(kind_of([&] { gauge::secondary_higgs(aligned, {1, 1}); }) == ErrorKind::FixedPointDetected);
    }
}

TEST_CASE("custom rank-one fields: property checks") {
    std::mt19937_64 rng(77);
    int done = 0;
    for (int trial = 0; done < 24 && trial < 500; ++trial) {
        Q A = small_q(rng, -3, 3), B = small_q(rng, -3, 3), C = small_q(rng, -3, 3), D = small_q(rng, -3, 3);
        Q p = small_q(rng, -4, 4);
        if ((A * D - B * C).is_zero() || p.is_zero() || p == Q(1)) continue;
        UPoly a({B, A}), b({D, C});
        auto h = build_toy_higgs(ToyKind::Custom, p, a, b);

        // The residue theorem: residues over 0, 1, ∞, p sum to zero.
        auto res = residues(h);
        GaussianMatrix total = mat(0, 0, 0, 0);
        for (const auto& e : res)
            for (int i = 0; i < 2; ++i)
                for (int j = 0; j < 2; ++j) total[i][j] = total[i][j] + e.residue[i][j];
        CHECK(total == mat(0, 0, 0, 0));

        // (a, b) is a Möbius map, so the normalized fourth flag sits at w = p.
        REQUIRE(h.flags.w.has_value());
        CHECK(*h.flags.w == p);
        CHECK(cross_ratio(h.flags.lines) == p);

        auto sec = gauge::secondary_higgs(aligned_family(h), {1, 1});
        auto q = gauge::k_differentials(sec.Phi, 2).at(0);
        Q c = Q(2) * (A * D - B * C);
        CHECK(q == toy_quadratic_differential(c, p));
        for (Q at : {Q(0), Q(1), p}) CHECK(pole_order(q, at) == 1);
        CHECK(pole_order_at_infinity(q, 2) == 1);
        ++done;
    }
    CHECK(done >= 20);
}

TEST_CASE("custom field input checks") {
    CHECK(kind_of([] { build_toy_higgs(ToyKind::Custom, Q(2), UPoly({1, 1}), UPoly({2, 2})); }) ==
          ErrorKind::InvalidArgument);
    CHECK(kind_of([] { build_toy_higgs(ToyKind::Custom, Q(2), UPoly({0, 0, 1}), UPoly({1})); }) ==
          ErrorKind::InvalidArgument);
    // a = z, b = 1 reproduces φ_p.
    auto h = build_toy_higgs(ToyKind::Custom, Q(2), UPoly({0, 1}), UPoly({1}));
    CHECK(h.matrix == build_toy_higgs(ToyKind::PhiP, Q(2)).matrix);
}

TEST_CASE("model connection near a parabolic point") {
    auto m = parabolic_model_connection(mpq_class(1, 4));
    R e(Q(mpq_class(1, 8)));
    CHECK(m.dz_part() == RationalFunctionMatrix{{e / R::z(), 0}, {0, -(e / R::z())}});
    CHECK(m.dzbar_part() == RationalFunctionMatrix{{-(e / R::zbar()), 0}, {0, e / R::zbar()}});

    for (long k : {1, 3, 5, 7}) {
        mpq_class rho(k, 16);
        connection::ConnectionFamily fam(MatrixOneForm(2), parabolic_model_connection(rho), MatrixOneForm(2), {Q(0)});
        holonomy::NumericFamily nf(fam);
        auto s = holonomy::transport(nf, holonomy::ParamPath::circle({0, 0}, 0.5), 1.0);
        double expect = 2.0 * std::cos(2.0 * M_PI * rho.get_d());
        CHECK(std::abs(s.trace - holonomy::cplx(expect, 0)) < 1e-8);
        CHECK(std::abs(s.holonomy(0, 0) - std::exp(holonomy::cplx(0, -2.0 * M_PI * rho.get_d()))) < 1e-8);
    }
    CHECK(kind_of([] { parabolic_model_connection(mpq_class(1, 2)); }) == ErrorKind::InvalidWeights);
}

TEST_CASE("nilpotent cone graph") {
    auto g = nilpotent_cone_graph(Q(2), weights(1, 4, 1, 4, 1, 4, 1, 8));
    CHECK(g.nodes.size() == 9);
    CHECK(g.edges.size() == 8);
    CHECK(g.components.size() == 5);
    CHECK(g.is_affine_d4());
    int vhs = 0;
    for (const auto& n : g.nodes) vhs += n.vhs;
    CHECK(vhs == 5);
    CHECK(g.central_attachments == std::vector<std::string>{"0", "1", "inf", "2"});

    CHECK(kind_of([] { nilpotent_cone_graph(Q(2), weights(1, 4, 1, 4, 1, 4, 1, 4)); }) == ErrorKind::UnstableWeights);
    CHECK(kind_of([] { nilpotent_cone_graph(Q(1), weights(1, 4, 1, 4, 1, 4, 1, 8)); }) == ErrorKind::BadPuncture);

    auto broken = g;
    broken.edges.pop_back();
    CHECK_FALSE(broken.is_affine_d4());
}
