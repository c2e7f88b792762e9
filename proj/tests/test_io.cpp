#include <random>

#include "doctest.h"
#include "nilwkb/connection/catalog.hpp"
#include "nilwkb/io/catalog_files.hpp"
#include "nilwkb/io/json_io.hpp"

using namespace nilwkb;
using namespace nilwkb::io;
using algebra::Poly2;

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

Poly2 random_poly(std::mt19937_64& rng) {
    std::uniform_int_distribution<long> c(-9, 9), d(1, 7), e(0, 2);
    Poly2 p;
    for (int k = 0; k < 3; ++k)
        p += Poly2::monomial(static_cast<int>(e(rng)), static_cast<int>(e(rng)),
                             GaussianRational(mpq_class(c(rng), d(rng)), mpq_class(c(rng), d(rng))));
    return p;
}

} // namespace

TEST_CASE("rational functions round-trip bit-exactly") {
    std::mt19937_64 rng(4242);
    int done = 0;
    for (int trial = 0; trial < 60; ++trial) {
        Poly2 den = random_poly(rng);
        if (den.is_zero()) continue;
        BiRational f(random_poly(rng), den);
        Json j = to_json(f);
        BiRational back = birational_from_json(Json::parse(j.dump()));
        CHECK(back == f);
        CHECK(to_json(back).dump() == j.dump());
        ++done;
    }
    CHECK(done >= 20);
    CHECK(birational_from_json(Json("3/4")) == BiRational(GaussianRational(mpq_class(3, 4))));
}

TEST_CASE("families, paths and surfaces round-trip") {
    for (const auto& f : {connection::catalog::manufactured_sl3(), connection::catalog::uniformization_disk_rank2(),
                          connection::catalog::regular_diagonal()}) {
        Json j = to_json(f);
        CHECK(j["schema"] == kSchema);
        CHECK(family_from_json(j) == f);
        CHECK(family_from_json(j).punctures() == f.punctures());
    }
    // Non-standard exponent profiles travel through the "terms" list.
    auto g = gauge::gauge_conjugate(connection::catalog::manufactured_sl2(), gauge::sl2_profile());
    Json gj = to_json(g);
    CHECK(gj.contains("terms"));
    CHECK(family_from_json(gj) == g);

    auto path = holonomy::ParamPath({holonomy::LineSegment{{1, 0}, {0, 1}}, holonomy::ArcSegment{{0, 0}, 1.0, M_PI / 2, M_PI}},
                                    false);
    Json pj = to_json(path);
    CHECK(to_json(path_from_json(pj)).dump() == pj.dump());
    CHECK(pj["segments"][1]["type"] == "arc");

    auto s = surface::half_staircase(3, surface::StaircaseStyle::Left);
    Json sj = to_json(s);
    CHECK(to_json(surface_from_json(sj)).dump() == sj.dump());
    CHECK(surface::validate(surface_from_json(sj)).genus == 1);
}

TEST_CASE("family files use defaults and reject bad input") {
    Json j = Json::parse(R"({"rank": 2, "phi": {"dz": [["0", "1"], ["0", "0"]]}})");
    auto f = family_from_json(j);
    CHECK(f.is_standard());
    CHECK(f.conn().is_zero());
    Json shifted = Json::parse(R"({"rank": 2, "phi": {"dz": [["0", "1"], ["0", "0"]]}, "exponents": [["-1/2", "phi"]]})");
    CHECK(family_from_json(shifted).terms().front().exponent == mpq_class(-1, 2));

    CHECK(kind_of([] { family_from_json(Json::parse(R"({"phi": null})")); }) == ErrorKind::ParseError);
    CHECK(kind_of([] { family_from_json(Json::parse(R"({"rank": 2, "phi": {"dz": [["0"]]}})")); }) ==
          ErrorKind::ParseError);
    CHECK(kind_of([] { birational_from_json(Json::parse(R"({"num": [[0, 0, "1", "0"]], "den": []})")); }) ==
          ErrorKind::ParseError);
    CHECK(kind_of([] { path_from_json(Json::parse(R"({"segments": [{"type": "spiral"}]})")); }) == ErrorKind::ParseError);
    CHECK(kind_of([] {
              surface_from_json(Json::parse(R"({"polygons": [[[0,0],[1,0],[1,1],[0,1]]],
                  "identifications": [[[0,0],[0,2],2],[[0,1],[0,3],1]]})"));
          }) == ErrorKind::ParseError);
    // A textual sign is accepted.
    auto torus = surface_from_json(Json::parse(R"({"polygons": [[[0,0],[1,0],[1,1],[0,1]]],
        "identifications": [[[0,0],[0,2],"+1"],[[0,1],[0,3],"+1"]]})"));
    CHECK(surface::validate(torus).genus == 1);
}

TEST_CASE("catalog documents are all readable") {
    int families = 0;
    for (const auto& [name, doc] : catalog_documents()) {
        if (name.starts_with("paths/"))
            path_from_json(doc);
        else if (name.starts_with("surfaces/"))
            surface::validate(surface_from_json(doc));
        else {
            CHECK(connection::check_flatness(family_from_json(doc)).is_flat);
            ++families;
        }
    }
    CHECK(families >= 10);
}
