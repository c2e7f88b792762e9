// One PASS/FAIL line per acceptance criterion; exit status is nonzero if any fails.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <limits>
#include <numbers>
#include <random>
#include <sstream>
#include <string>

#include "nilwkb/connection/catalog.hpp"
#include "nilwkb/connection/flatness.hpp"
#include "nilwkb/error.hpp"
#include "nilwkb/gauge/gauge.hpp"
#include "nilwkb/holonomy/fit.hpp"
#include "nilwkb/holonomy/spectral.hpp"
#include "nilwkb/holonomy/transport.hpp"
#include "nilwkb/surface/surface.hpp"
#include "nilwkb/toymodel/toymodel.hpp"

using namespace nilwkb;
using algebra::GaussianRational;
using algebra::MatrixOneForm;
using algebra::Poly2;
using algebra::RationalFunctionMatrix;
using connection::ConnectionFamily;
using connection::catalog::E;
using holonomy::cplx;
using R = algebra::BiRational;

namespace {

// Pinned tolerances and runtime budgets.
constexpr double kA3TraceRel = 1e-6;
constexpr double kA3ResidualFactor = 1e3;
constexpr double kA3Z = 1e-4;
constexpr double kA4TraceRel = 1e-8;
constexpr double kA4Z = 1e-6;
constexpr double kA5Relative = 0.05;
constexpr double kA7Period = 1e-9;
constexpr double kA7Modulus = 1e-6;
constexpr double kA9UnitFactor = 100.0;
constexpr double kA9Antisymmetry = 1e-10;
constexpr int kA9Instances = 24;

struct Outcome {
    bool pass = true;
    std::ostringstream detail;
    void require(bool ok, const std::string& what) {
        if (!ok) {
            pass = false;
            detail << " [failed: " << what << "]";
        }
    }
};

int failures = 0;

void criterion(int id, const char* title, double budget_s, const std::function<void(Outcome&)>& body) {
    Outcome o;
    auto t0 = std::chrono::steady_clock::now();
    try {
        body(o);
    } catch (const std::exception& e) {
        o.require(false, std::string("exception: ") + e.what());
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (budget_s > 0) o.require(secs < budget_s, "runtime budget");
    std::printf("%s A%d %s (%.2fs)%s\n", o.pass ? "PASS" : "FAIL", id, title, secs, o.detail.str().c_str());
    std::fflush(stdout);
    failures += !o.pass;
}

double rel(cplx got, double want) { return std::abs(got - want) / std::abs(want); }

std::vector<double> geometric(double a, double b, int n) { return holonomy::geometric_grid(a, b, n); }

// Property generators (fixed seeds).
GaussianRational small_q(std::mt19937_64& rng, int lo, int hi, int den = 4) {
    std::uniform_int_distribution<long> d(lo, hi);
    return {mpq_class(d(rng), den), mpq_class(d(rng), den)};
}

R linear_entry(std::mt19937_64& rng) { return R(Poly2(small_q(rng, -4, 4)) + Poly2::monomial(1, 0, small_q(rng, -2, 2))); }

RationalFunctionMatrix traceless(std::mt19937_64& rng) {
    R a = linear_entry(rng);
    return RationalFunctionMatrix{{a, linear_entry(rng)}, {linear_entry(rng), -a}};
}

cplx disk_point(std::mt19937_64& rng) {
    std::uniform_real_distribution<double> u(-0.7, 0.7);
    return {u(rng), u(rng)};
}

holonomy::ParamPath polyline(std::mt19937_64& rng, cplx start, int pieces) {
    std::vector<holonomy::Segment> segs;
    for (int k = 0; k < pieces; ++k) {
        cplx next = disk_point(rng);
        segs.push_back(holonomy::LineSegment{start, next});
        start = next;
    }
    return holonomy::ParamPath(segs, false);
}

} // namespace

int main() {
    std::printf("nilwkb acceptance\n");

    criterion(1, "catalog families are exactly flat", 1.0, [](Outcome& o) {
        namespace cat = connection::catalog;
        std::vector<std::pair<std::string, ConnectionFamily>> fams = {
            {"trivial", cat::trivial(2)},
            {"trivial3", cat::trivial(3)},
            {"uniformization2", cat::uniformization_disk_rank2()},
            {"uniformization3", cat::uniformization_disk_rank3()},
            {"manufactured_sl2", cat::manufactured_sl2()},
            {"manufactured_sl3", cat::manufactured_sl3()},
            {"regular_diagonal", cat::regular_diagonal()}};
        for (auto k : {toymodel::ToyKind::PhiP, toymodel::ToyKind::Phi0, toymodel::ToyKind::Phi1, toymodel::ToyKind::PhiInf})
            fams.emplace_back(toymodel::to_string(k), toymodel::skeleton_family(toymodel::build_toy_higgs(k, GaussianRational(2))));
        for (const auto& [name, f] : fams) {
            auto rep = connection::check_flatness(f);
            bool zero = rep.is_flat;
            for (const auto& r : rep.residuals) zero &= r.value.is_zero();
            o.require(zero, name);
        }
        o.detail << " families=" << fams.size();
    });

    criterion(2, "secondary field of the manufactured SL2 family", 1.0, [](Outcome& o) {
        auto f = connection::catalog::manufactured_sl2();
        auto s = gauge::secondary_higgs(f, {1, 1});
        o.require(s.m == 2, "m = 2");
        o.require(s.Phi == MatrixOneForm::dz(E(2, 1, 2) + E(2, 2, 1)), "Phi = ((0,1),(1,0))dz");
        auto q = gauge::k_differentials(s.Phi, 2).at(0);
        o.require(q == R(2), "Tr Phi^2 = 2");
        o.require(gauge::gauge_conjugate(gauge::reassemble(s, f), gauge::inverse_profile(s.profile)) == f,
                  "ungauging reproduces the input");
        o.detail << " m=" << s.m << " trPhi2=" << q.to_string();
    });

    criterion(3, "rank-2 nilpotent WKB: 2cosh(eps^-1/2), p = 1/2, Z = period", 30.0, [](Outcome& o) {
        auto f = connection::catalog::manufactured_sl2();
        auto path = holonomy::ParamPath::line({0, 0}, {1, 0});
        auto samples = holonomy::transport_grid(holonomy::NumericFamily(f), path, geometric(0.25, 5e-4, 12));
        double worst = 0;
        for (const auto& s : samples) worst = std::max(worst, rel(s.trace, 2.0 * std::cosh(std::pow(s.epsilon, -0.5))));
        o.require(worst <= kA3TraceRel, "trace relative error");
        auto fit = holonomy::wkb_fit(samples, {mpq_class(1), mpq_class(1, 2), mpq_class(1, 3)});
        o.require(fit.exponent_exact == mpq_class(1, 2), "selected p = 1/2");
        double best = 0, other = std::numeric_limits<double>::infinity();
        for (const auto& c : fit.candidates) {
            if (c.exponent == mpq_class(1, 2))
                best = c.residual;
            else
                other = std::min(other, c.residual);
        }
        o.require(other >= kA3ResidualFactor * best, "residual factor vs p = 1 and 1/3");
        o.require(std::abs(fit.Z - 1.0) <= kA3Z, "Z = 1");
        auto s = gauge::secondary_higgs(f, {1, 1});
        cplx period = holonomy::period(holonomy::ScaledForm{s.Phi, 1.0}, path);
        o.require(std::abs(fit.Z - period) <= kA3Z, "Z = period(Phi)");
        o.detail << " max_rel=" << worst << " Z=" << fit.Z.real() << " period=" << period.real()
                 << " residual_ratio=" << other / best;
    });

    criterion(4, "regular WKB baseline: 2cosh(1/eps), p = 1, Z = 1", 10.0, [](Outcome& o) {
        holonomy::NumericFamily fam(connection::catalog::regular_diagonal(), {{"phi", 1.0 / (2.0 * std::numbers::pi)}});
        auto samples = holonomy::transport_grid(fam, holonomy::ParamPath::circle({0, 0}, 1.0), geometric(0.5, 0.05, 12));
        double worst = 0;
        for (const auto& s : samples) worst = std::max(worst, rel(s.trace, 2.0 * std::cosh(1.0 / s.epsilon)));
        o.require(worst <= kA4TraceRel, "trace relative error");
        auto fit = holonomy::wkb_fit(samples, {mpq_class(1), mpq_class(1, 2)});
        o.require(fit.exponent_exact == 1, "p = 1");
        o.require(std::abs(fit.Z - 1.0) <= kA4Z, "Z = 1");
        o.detail << " max_rel=" << worst << " Z-1=" << std::abs(fit.Z - 1.0);
    });

    criterion(5, "higher rank: m = 3, Tr Phi^3 = 3, cyclic, exponent near 2/3", 0, [](Outcome& o) {
        auto f = connection::catalog::manufactured_sl3();
        auto s = gauge::secondary_higgs(f, {1, 1, 1});
        o.require(s.m == 3, "m = 3");
        auto kd = gauge::k_differentials(s.Phi, 3);
        o.require(kd[0].is_zero(), "Tr Phi^2 = 0");
        o.require(kd[1] == R(3), "Tr Phi^3 = 3");
        o.require(gauge::is_m_cyclic(s.Phi, s.profile, 3), "3-cyclic");
        auto samples = holonomy::transport_grid(holonomy::NumericFamily(f), holonomy::ParamPath::line({1, 0}, {0, 0}),
                                                geometric(0.1, 1e-3, 12));
        auto fit = holonomy::wkb_fit(samples, holonomy::default_exponents(3));
        o.require(std::abs(fit.free_exponent - 2.0 / 3.0) <= kA5Relative * 2.0 / 3.0, "free exponent within 5%");
        o.detail << " free_exponent=" << fit.free_exponent;
    });

    criterion(6, "staircase genus table", 1.0, [](Outcome& o) {
        using surface::StaircaseStyle;
        for (int n = 1; n <= 5; ++n) {
            o.require(surface::validate(surface::staircase(2 * n, StaircaseStyle::Left)).genus == n, "left 2n");
            o.require(surface::validate(surface::staircase(2 * n - 1, StaircaseStyle::Right)).genus == n, "right 2n-1");
            for (auto [count, st] : {std::pair{2 * n + 1, StaircaseStyle::Left}, std::pair{2 * n, StaircaseStyle::Right}}) {
                auto r = surface::validate(surface::half_staircase(count, st));
                int poles = 0;
                bool at_folds = true;
                for (const auto& c : r.vertex_classes)
                    if (c.angle_pi == 1) {
                        ++poles;
                        at_folds &= c.corners.size() == 1 && c.corners[0].polygon == 0;
                    }
                o.require(r.genus == n, "half staircase genus");
                o.require(poles == 2 && at_folds, "two simple poles at the folds of the first rectangle");
            }
        }
        auto six = surface::validate(surface::staircase(6, StaircaseStyle::Left));
        o.require(six.F == 6 && six.chi == -4 && six.genus == 3, "six faces: chi = -4, genus 3");
        o.detail << " six-face V=" << six.V << " E=" << six.E << " F=" << six.F << " chi=" << six.chi;
    });

    criterion(7, "WKB loops and periods on flat surfaces", 0, [](Outcome& o) {
        auto torus = surface::flat_torus();
        surface::LoopOptions real;
        real.convention = surface::Convention::Real;
        auto l0 = surface::find_wkb_loop(torus, {0, {0.3, 0.4}}, 0.0, real);
        o.require(std::abs(l0.period_Z - 1.0) <= kA7Period, "theta = 0 gives Z = 1");
        auto l1 = surface::find_wkb_loop(torus, {0, {0.3, 0.4}}, std::atan(0.5));
        o.require(std::abs(std::abs(l1.period_Z) - std::sqrt(5.0)) <= kA7Modulus, "|Z| = sqrt 5");
        auto half = surface::half_staircase(3, surface::StaircaseStyle::Left);
        auto v = surface::find_wkb_loop(half, {1, {1.5, 0.5}}, std::numbers::pi / 2);
        o.require(v.is_wkb, "vertical loop is WKB");
        o.require(surface::lift_check(half, v), "lift_check");
        o.detail << " Z0=" << l0.period_Z.real() << " |Z1|=" << std::abs(l1.period_Z) << " vertical Z=("
                 << v.period_Z.real() << "," << v.period_Z.imag() << ")";
    });

    criterion(8, "parabolic toy model", 1.0, [](Outcome& o) {
        using namespace toymodel;
        ParabolicWeights w({mpq_class(1, 4), mpq_class(1, 4), mpq_class(1, 4), mpq_class(1, 8)});
        o.require(check_weight_inequalities(w).all_pass(), "weights pass all three families");
        for (auto k : {ToyKind::PhiP, ToyKind::Phi0, ToyKind::Phi1, ToyKind::PhiInf}) {
            auto h = build_toy_higgs(k, GaussianRational(2)); // verifies the invariants itself
            o.require((h.matrix * h.matrix).is_zero() && h.matrix.trace().is_zero(), "nilpotent and traceless");
            auto res = residues(h);
            for (int i = 0; i < 4; ++i) {
                const auto& r = res[i].residue;
                bool zero = true, kills = true;
                for (int a = 0; a < 2; ++a) {
                    zero &= r[a][0].is_zero() && r[a][1].is_zero();
                    kills &= (r[a][0] * h.flags.lines[i][0] + r[a][1] * h.flags.lines[i][1]).is_zero();
                }
                o.require(zero == h.vanishing_residue[i], "declared vanishing residues");
                o.require(kills, "residue kills the flag");
            }
        }
        // Hand-computed parabolic degrees: deg + 2·(sum over met flags) − 7/8.
        auto table = pdeg_table(w);
        const mpq_class rho[4] = {mpq_class(1, 4), mpq_class(1, 4), mpq_class(1, 4), mpq_class(1, 8)};
        bool table_ok = table.size() == 32;
        for (const auto& e : table) {
            mpq_class met = 0;
            for (int i = 0; i < 4; ++i)
                if (e.incidence[i]) met += rho[i];
            table_ok &= e.value == e.degree + 2 * met - mpq_class(7, 8);
        }
        o.require(table_ok, "pdeg table");
        o.require(pdeg(0, {true, false, false, true}, w) == mpq_class(-1, 8), "pdeg example -1/8");
        o.require(pdeg(-1, {true, true, true, false}, w) == mpq_class(-3, 8), "pdeg example -3/8");
        auto g = nilpotent_cone_graph(GaussianRational(2), w);
        o.require(g.nodes.size() == 9 && g.edges.size() == 8 && g.is_affine_d4(), "cone graph 9/8 affine D4");
    });

    criterion(9, "invariant suites", 0, [](Outcome& o) {
        int gauge_ok = 0, transport_ok = 0, period_ok = 0, gb_ok = 0;
        {
            std::mt19937_64 rng(9001);
            std::uniform_int_distribution<long> num(-7, 7), den(1, 6);
            for (int k = 0; k < kA9Instances; ++k) {
                int n = 2 + k % 3;
                gauge::GaugeProfile p;
                for (int i = 0; i < n; ++i) p.exponents.push_back(mpq_class(num(rng), den(rng)));
                for (auto& e : p.exponents) e.canonicalize();
                RationalFunctionMatrix dz(n, n), dzb(n, n);
                for (int i = 0; i < n; ++i)
                    for (int j = 0; j < n; ++j) {
                        dz(i, j) = linear_entry(rng);
                        dzb(i, j) = R(small_q(rng, -3, 3)) * R::zbar();
                    }
                dz(n - 1, n - 1) = dzb(n - 1, n - 1) = R(0);
                for (int i = 0; i + 1 < n; ++i) {
                    dz(n - 1, n - 1) -= dz(i, i);
                    dzb(n - 1, n - 1) -= dzb(i, i);
                }
                ConnectionFamily f(MatrixOneForm::dz(dz), MatrixOneForm(dz, dzb), MatrixOneForm::dzbar(dzb));
                gauge_ok += gauge::gauge_conjugate(gauge::gauge_conjugate(f, p), gauge::inverse_profile(p)) == f;
            }
        }
        {
            std::mt19937_64 rng(9002);
            std::uniform_real_distribution<double> ue(0.2, 1.0);
            for (int k = 0; k < kA9Instances; ++k) {
                holonomy::NumericFamily fam(ConnectionFamily(MatrixOneForm::dz(traceless(rng)),
                                                             MatrixOneForm::dz(traceless(rng)),
                                                             MatrixOneForm::dzbar(traceless(rng))));
                auto g1 = polyline(rng, disk_point(rng), 2);
                auto g2 = polyline(rng, g1.point(1.0), 1);
                double eps = ue(rng);
                auto h1 = holonomy::transport(fam, g1, eps), h2 = holonomy::transport(fam, g2, eps);
                auto h = holonomy::transport(fam, g1.then(g2), eps);
                double err = h.est_error + h2.est_error * h1.holonomy.norm() + h1.est_error * h2.holonomy.norm();
                bool ok = (h.holonomy - h2.holonomy * h1.holonomy).norm() <= kA9UnitFactor * err;
                for (const auto* s : {&h1, &h2, &h})
                    ok &= std::abs(s->holonomy.determinant() - 1.0) <= kA9UnitFactor * s->est_error;
                transport_ok += ok;
            }
        }
        {
            std::mt19937_64 rng(9003);
            int attempts = 0;
            while (period_ok < kA9Instances && attempts++ < 10 * kA9Instances) {
                // Φ = ((0, 1), (a + bz, 0))dz with a + bz nonvanishing on the disk.
                auto q = R(Poly2(small_q(rng, 4, 8)) + Poly2::monomial(1, 0, small_q(rng, -2, 2)));
                holonomy::ScaledForm phi{MatrixOneForm::dz(E(2, 1, 2) + q * E(2, 2, 1))};
                auto path = polyline(rng, disk_point(rng), 3);
                std::optional<holonomy::EigenTrack> fwd;
                try {
                    fwd.emplace(phi, path);
                } catch (const Error& e) {
                    if (e.kind() == ErrorKind::TieAtStart) continue;
                    throw;
                }
                holonomy::TrackOptions rev;
                rev.seed = std::vector<cplx>{-fwd->value(0, 1.0)};
                cplx sum = holonomy::period(*fwd) + holonomy::period(phi, path.reversed(), rev);
                if (std::abs(sum) > kA9Antisymmetry) break;
                ++period_ok;
            }
        }
        {
            std::mt19937_64 rng(9004);
            std::uniform_int_distribution<int> count(1, 12), eighths(2, 24), coin(0, 1);
            for (int k = 0; k < kA9Instances; ++k) {
                int c = count(rng);
                auto st = coin(rng) ? surface::StaircaseStyle::Left : surface::StaircaseStyle::Right;
                surface::PolygonSurface s;
                if (coin(rng)) {
                    s = surface::half_staircase(c, st);
                } else {
                    std::vector<double> w(c + 1), h(c + 1);
                    for (auto& x : w) x = eighths(rng) / 8.0;
                    for (auto& x : h) x = eighths(rng) / 8.0;
                    s = surface::staircase(c, st, w, h);
                }
                auto r = surface::validate(s);
                gb_ok += r.order_sum() == 4 * r.genus - 4;
            }
        }
        o.require(gauge_ok == kA9Instances, "gauge round trip");
        o.require(transport_ok == kA9Instances, "transport multiplicativity and unimodularity");
        o.require(period_ok == kA9Instances, "period antisymmetry");
        o.require(gb_ok == kA9Instances, "Gauss-Bonnet");
        o.detail << " gauge=" << gauge_ok << " transport=" << transport_ok << " period=" << period_ok
                 << " gauss_bonnet=" << gb_ok << " of " << kA9Instances;
    });

    std::printf("%d criterion failure(s)\n", failures);
    return failures == 0 ? 0 : 1;
}
