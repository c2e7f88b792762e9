#include "nilwkb/io/catalog_files.hpp"

#include <cmath>

#include "nilwkb/connection/catalog.hpp"

namespace nilwkb::io {

namespace cat = connection::catalog;

std::vector<std::pair<std::string, Json>> catalog_documents() {
    std::vector<std::pair<std::string, Json>> docs;
    auto family = [&](const std::string& name, const ConnectionFamily& f) { docs.emplace_back(name + ".json", to_json(f)); };
    family("trivial", cat::trivial(2));
    family("trivial_rank3", cat::trivial(3));
    family("uniformization", cat::uniformization_disk_rank2());
    family("uniformization_rank3", cat::uniformization_disk_rank3());
    family("manufactured_sl2", cat::manufactured_sl2());
    family("manufactured_sl3", cat::manufactured_sl3());
    family("regular_diagonal", cat::regular_diagonal());

    const GaussianRational p(2);
    for (auto kind : {toymodel::ToyKind::PhiP, toymodel::ToyKind::Phi0, toymodel::ToyKind::Phi1, toymodel::ToyKind::PhiInf}) {
        auto h = toymodel::build_toy_higgs(kind, p);
        family(std::string("toy_") + toymodel::to_string(kind), toymodel::skeleton_family(h));
    }
    family("toy_phi_p_aligned", toymodel::aligned_family(toymodel::build_toy_higgs(toymodel::ToyKind::PhiP, p)));

    docs.emplace_back("paths/segment.json", to_json(holonomy::ParamPath::line({0, 0}, {1, 0})));
    docs.emplace_back("paths/segment_reversed.json", to_json(holonomy::ParamPath::line({1, 0}, {0, 0})));
    docs.emplace_back("paths/unit_circle.json", to_json(holonomy::ParamPath::circle({0, 0}, 1.0)));

    docs.emplace_back("surfaces/torus.json", to_json(surface::flat_torus()));
    docs.emplace_back("surfaces/staircase_left_6.json", to_json(surface::staircase(6, surface::StaircaseStyle::Left)));
    docs.emplace_back("surfaces/half_staircase_left_3.json",
                      to_json(surface::half_staircase(3, surface::StaircaseStyle::Left)));
    return docs;
}

} // namespace nilwkb::io
