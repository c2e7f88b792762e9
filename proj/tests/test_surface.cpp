#include <cmath>
#include <functional>
#include <random>

#include "doctest.h"
#include "nilwkb/error.hpp"
#include "nilwkb/surface/surface.hpp"

using namespace nilwkb;
using namespace nilwkb::surface;

namespace {

ErrorKind kind_of(const std::function<void()>& f) {
    try {
        f();
    } catch (const Error& e) {
        return e.kind();
    }
    FAIL("expected an error");
    return ErrorKind::InvalidArgument;
}

std::vector<std::vector<cplx>> unit_square() { return {{{0, 0}, {1, 0}, {1, 1}, {0, 1}}}; }

int pole_count(const SingularityReport& r) {
    int n = 0;
    for (const auto& c : r.vertex_classes) n += c.angle_pi == 1;
    return n;
}

} // namespace

TEST_CASE("flat torus validates as genus one") {
    auto r = validate(flat_torus());
    CHECK(r.V == 1);
    CHECK(r.E == 2);
    CHECK(r.F == 1);
    CHECK(r.chi == 0);
    CHECK(r.genus == 1);
    CHECK(r.singularities().empty());
    CHECK(r.exact_angles);
}

TEST_CASE("staircase genus table") {
    for (int n = 1; n <= 5; ++n) {
        CHECK(validate(staircase(2 * n, StaircaseStyle::Left)).genus == n);
        CHECK(validate(staircase(2 * n - 1, StaircaseStyle::Right)).genus == n);
        auto hl = validate(half_staircase(2 * n + 1, StaircaseStyle::Left));
        auto hr = validate(half_staircase(2 * n, StaircaseStyle::Right));
        CHECK(hl.genus == n);
        CHECK(hr.genus == n);
        CHECK(pole_count(hl) == 2);
        CHECK(pole_count(hr) == 2);
    }
    auto six = validate(staircase(6, StaircaseStyle::Left));
    CHECK(six.V == 2);
    CHECK(six.E == 12);
    CHECK(six.F == 6);
    CHECK(six.chi == -4);
    CHECK(six.genus == 3);
}

TEST_CASE("simple poles sit at the fold centres of the first rectangle") {
    auto s = half_staircase(5, StaircaseStyle::Left);
    auto r = validate(s);
    std::vector<cplx> poles;
    for (const auto& c : r.vertex_classes)
        if (c.angle_pi == 1) {
            REQUIRE(c.corners.size() == 1);
            CHECK(c.corners[0].polygon == 0);
            poles.push_back(s.vertex(c.corners[0].polygon, c.corners[0].vertex));
        }
    REQUIRE(poles.size() == 2);
    CHECK(std::abs(poles[0] - cplx(0.5, 0)) < 1e-15);
    CHECK(std::abs(poles[1] - cplx(0.5, 1)) < 1e-15);
    auto rr = validate(half_staircase(4, StaircaseStyle::Right));
    for (const auto& c : rr.vertex_classes)
        if (c.angle_pi == 1) CHECK(c.corners[0].polygon == 0);
}

TEST_CASE("validation errors") {
    CHECK(kind_of([] { validate(PolygonSurface(unit_square(), {{{0, 0}, {0, 2}, 1}})); }) == ErrorKind::UnmatchedEdge);
    CHECK(kind_of([] { PolygonSurface(unit_square(), {{{0, 0}, {0, 2}, 1}, {{0, 2}, {0, 1}, 1}}); }) ==
          ErrorKind::UnmatchedEdge);
    std::vector<std::vector<cplx>> rect = {{{0, 0}, {2, 0}, {2, 1}, {0, 1}}};
    CHECK(kind_of([&] { validate(PolygonSurface(rect, {{{0, 0}, {0, 1}, 1}, {{0, 2}, {0, 3}, 1}})); }) ==
          ErrorKind::GluingLengthMismatch);
    std::vector<std::vector<cplx>> tri = {{{0, 0}, {1, 0}, {0, 1}}};
    CHECK(kind_of([&] { PolygonSurface(tri, {{{0, 1}, {0, 1}, 1}}); }) == ErrorKind::InvalidArgument);
    std::vector<std::vector<cplx>> cw = {{{0, 0}, {0, 1}, {1, 1}, {1, 0}}};
    CHECK(kind_of([&] { PolygonSurface(cw, {}); }) == ErrorKind::InvalidArgument);
    // A sheared parallelogram is a torus even though its angles are not exact quarter turns.
    std::vector<std::vector<cplx>> skew = {{{0, 0}, {2, 0}, {2.5, 1}, {0.5, 1}}};
    auto r = validate(PolygonSurface(skew, {{{0, 0}, {0, 2}, 1}, {{0, 1}, {0, 3}, 1}}));
    CHECK_FALSE(r.exact_angles);
    CHECK(r.genus == 1);
    // Gluing the sides with a half-turn instead needs equal (not opposite) edge vectors.
    CHECK(kind_of([&] { validate(PolygonSurface(skew, {{{0, 0}, {0, 2}, -1}, {{0, 1}, {0, 3}, 1}})); }) ==
          ErrorKind::GluingLengthMismatch);
}

TEST_CASE("trace_flow on the torus") {
    auto t = flat_torus();
    auto h = trace_flow(t, {0, {0.3, 0.4}}, 0.0, 10.0);
    CHECK(h.terminated == Termination::ClosedUp);
    CHECK(h.total_length == doctest::Approx(1.0).epsilon(1e-12));
    auto d = trace_flow(t, {0, {0.3, 0.4}}, std::atan(0.5), 10.0);
    CHECK(d.terminated == Termination::ClosedUp);
    CHECK(d.total_length == doctest::Approx(std::sqrt(5.0)).epsilon(1e-12));
    CHECK(d.pieces.size() == 4);
    // Straight through the single regular vertex.
    auto diag = trace_flow(t, {0, {0.5, 0.5}}, M_PI / 4, 10.0);
    CHECK(diag.terminated == Termination::ClosedUp);
    CHECK(diag.total_length == doctest::Approx(std::sqrt(2.0)).epsilon(1e-12));
    auto cut = trace_flow(t, {0, {0.3, 0.4}}, 0.1, 0.25);
    CHECK(cut.terminated == Termination::MaxLength);
    CHECK(cut.total_length == doctest::Approx(0.25));
    CHECK(kind_of([&] { trace_flow(t, {0, {1.3, 0.4}}, 0.0, 1.0); }) == ErrorKind::InvalidArgument);
}

TEST_CASE("trace_flow stops at a cone point") {
    auto s = staircase(3, StaircaseStyle::Left);
    auto r = validate(s);
    REQUIRE(r.vertex_classes.size() == 1);
    CHECK(r.vertex_classes[0].angle_pi == 6);
    auto hit = trace_flow(s, {0, {0.5, 0.5}}, std::arg(cplx(-0.5, -0.5)), 10.0);
    CHECK(hit.terminated == Termination::ConePoint);
    CHECK(hit.total_length == doctest::Approx(std::sqrt(0.5)));
    // A 3π corner on a half-translation staircase.
    auto h = half_staircase(3, StaircaseStyle::Left);
    auto hr = validate(h);
    bool found = false;
    for (const auto& c : hr.vertex_classes) {
        if (c.angle_pi != 3) continue;
        for (const auto& k : c.corners) {
            if (k.polygon != 1) continue;
            cplx target = h.vertex(k.polygon, k.vertex);
            cplx from(1.5, 0.5);
            auto tr = trace_flow(h, {1, from}, std::arg(target - from), 10.0);
            CHECK(tr.terminated == Termination::ConePoint);
            CHECK(std::abs(tr.end.position - target) < 1e-9);
            found = true;
        }
    }
    CHECK(found);
}

TEST_CASE("find_wkb_loop examples") {
    auto t = flat_torus();
    LoopOptions real;
    real.convention = Convention::Real;
    auto l0 = find_wkb_loop(t, {0, {0.3, 0.4}}, 0.0, real);
    CHECK(std::abs(l0.period_Z - 1.0) < 1e-9);
    CHECK(l0.is_wkb);
    CHECK(l0.margin > 0);
    CHECK(kind_of([&] { find_wkb_loop(t, {0, {0.3, 0.4}}, 0.0); }) == ErrorKind::ConnectorNotTransverse);

    double th = std::atan(0.5);
    auto l1 = find_wkb_loop(t, {0, {0.3, 0.4}}, th);
    CHECK(std::abs(std::abs(l1.period_Z) - std::sqrt(5.0)) < 1e-6);
    CHECK(std::arg(l1.period_Z) == doctest::Approx(th).epsilon(1e-9));
    CHECK(lift_check(t, l1));

    auto h = half_staircase(3, StaircaseStyle::Left);
    auto v = find_wkb_loop(h, {1, {1.5, 0.5}}, M_PI / 2);
    CHECK(v.is_wkb);
    CHECK(std::abs(v.period_Z - cplx(0, 2)) < 1e-9);
    CHECK(lift_check(h, v));

    // Through the folds the leaf turns back down, so it is not a WKB loop.
    CHECK(kind_of([&] { find_wkb_loop(h, {0, {0.25, 0.5}}, M_PI / 2); }) == ErrorKind::ConnectorNotTransverse);
    // Irrational slope never returns within a short budget on the torus... but a tiny budget forces the error.
    LoopOptions tiny;
    tiny.max_length = 0.5;
    CHECK(kind_of([&] { find_wkb_loop(t, {0, {0.3, 0.4}}, th, tiny); }) == ErrorKind::NoRecurrenceWithinBudget);
}

TEST_CASE("lift_check parity") {
    auto h = half_staircase(3, StaircaseStyle::Left);
    int fold = -1;
    for (std::size_t i = 0; i < h.identifications().size(); ++i)
        if (h.identifications()[i].sign == -1) fold = static_cast<int>(i);
    REQUIRE(fold >= 0);
    WkbLoop one;
    one.crossings = {0, fold};
    CHECK_FALSE(lift_check(h, one));
    one.crossings = {fold, fold};
    CHECK(lift_check(h, one));
    auto tr = trace_flow(h, {0, {0.25, 0.5}}, M_PI / 2, 1.2);
    WkbLoop part;
    part.crossings = tr.crossings;
    CHECK_FALSE(lift_check(h, part));
    CHECK(tr.end.parity == -1);
}

TEST_CASE("property: Gauss-Bonnet bookkeeping and translation invariance") {
    std::mt19937_64 rng(31337);
    std::uniform_int_distribution<int> count(1, 12), eighths(2, 24), style(0, 1), half(0, 2);
    int checked = 0;
    for (int trial = 0; trial < 40; ++trial) {
        int k = count(rng);
        auto st = style(rng) ? StaircaseStyle::Left : StaircaseStyle::Right;
        PolygonSurface s;
        if (half(rng) == 0) {
            s = half_staircase(k, st);
        } else {
            std::vector<double> w(k + 1), hgt(k + 1);
            for (auto& x : w) x = eighths(rng) / 8.0;
            for (auto& x : hgt) x = eighths(rng) / 8.0;
            s = staircase(k, st, w, hgt);
        }
        auto r = validate(s);
        CHECK(r.order_sum() == 4 * r.genus - 4);
        CHECK(r.chi == r.V - r.E + r.F);
        int p = std::uniform_int_distribution<int>(0, r.F - 1)(rng);
        auto moved = validate(s.translated(p, cplx(eighths(rng) * 0.37, -eighths(rng) * 1.3)));
        CHECK(moved.V == r.V);
        CHECK(moved.genus == r.genus);
        REQUIRE(moved.vertex_classes.size() == r.vertex_classes.size());
        for (std::size_t c = 0; c < r.vertex_classes.size(); ++c)
            CHECK(moved.vertex_classes[c].angle_pi == r.vertex_classes[c].angle_pi);
        ++checked;
    }
    CHECK(checked >= 20);
}

TEST_CASE("property: flow length additivity") {
    std::mt19937_64 rng(99);
    std::uniform_real_distribution<double> u(0.05, 0.95), ang(0.05, 1.5), len(0.5, 6.0);
    int checked = 0;
    for (int trial = 0; trial < 24; ++trial) {
        auto s = trial % 2 ? staircase(4, StaircaseStyle::Left) : half_staircase(5, StaircaseStyle::Right);
        FlowStart start{0, {u(rng), u(rng)}};
        double th = ang(rng), a = len(rng), b = len(rng);
        auto whole = trace_flow(s, start, th, a + b);
        auto first = trace_flow(s, start, th, a);
        if (first.terminated != Termination::MaxLength) continue;
        auto second = continue_flow(s, start, first.end, th, b);
        CHECK(second.terminated == whole.terminated);
        CHECK(second.end.polygon == whole.end.polygon);
        CHECK(std::abs(second.end.position - whole.end.position) < 1e-9);
        CHECK(first.total_length + second.total_length == doctest::Approx(whole.total_length).epsilon(1e-12));
        CHECK(first.pieces.size() + second.pieces.size() == whole.pieces.size() + 1);
        ++checked;
    }
    CHECK(checked >= 20);
}
