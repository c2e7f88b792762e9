#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "json.hpp"
#include "nilwkb/connection/flatness.hpp"
#include "nilwkb/error.hpp"
#include "nilwkb/gauge/gauge.hpp"
#include "nilwkb/holonomy/fit.hpp"
#include "nilwkb/holonomy/path.hpp"
#include "nilwkb/surface/surface.hpp"
#include "nilwkb/toymodel/toymodel.hpp"

namespace nilwkb::io {

// Insertion-ordered so that emitted documents keep a stable, readable layout.
using Json = nlohmann::ordered_json;
inline constexpr const char* kSchema = "nilwkb/1";

using algebra::BiRational;
using algebra::GaussianRational;
using algebra::MatrixOneForm;
using algebra::RationalFunctionMatrix;
using connection::ConnectionFamily;

// ["re", "im"] with exact rational strings; a bare string or integer reads as real.
Json to_json(const GaussianRational& q);
GaussianRational gaussian_from_json(const Json& j);

// {"num": [[i, j, "re", "im"], …], "den": […]}
Json to_json(const BiRational& f);
BiRational birational_from_json(const Json& j);

Json to_json(const RationalFunctionMatrix& m);
RationalFunctionMatrix matrix_from_json(const Json& j, int rank);

// {"dz": matrix, "dzbar": matrix}; a missing part or null reads as zero.
Json to_json(const MatrixOneForm& f);
MatrixOneForm form_from_json(const Json& j, int rank);

Json to_json(const ConnectionFamily& f);
ConnectionFamily family_from_json(const Json& j);

Json to_json(const connection::FlatnessReport& r);
Json to_json(const gauge::NilpotentType& t);
Json to_json(const gauge::GaugeProfile& p);
Json to_json(const gauge::SecondaryData& s);

Json to_json(const holonomy::ParamPath& p);
holonomy::ParamPath path_from_json(const Json& j);
Json to_json(const holonomy::WkbFit& f);

Json to_json(const surface::PolygonSurface& s);
surface::PolygonSurface surface_from_json(const Json& j);
Json to_json(const surface::SingularityReport& r);
Json to_json(const surface::FlatTrajectory& t);
Json to_json(const surface::WkbLoop& l);

Json to_json(const toymodel::WeightReport& r);
Json to_json(const std::vector<toymodel::PdegEntry>& table);
Json to_json(const toymodel::ToyHiggsField& h);
Json to_json(const std::vector<toymodel::ResidueEntry>& res);
Json to_json(const toymodel::ConeGraph& g);

Json error_json(const Error& e);

// Two-space indentation and a trailing newline.
std::string dump(const Json& j);
Json read_json_file(const std::filesystem::path& p);
void write_text_file(const std::filesystem::path& p, const std::string& text);

} // namespace nilwkb::io
