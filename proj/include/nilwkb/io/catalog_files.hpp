#pragma once

#include <string>
#include <utility>
#include <vector>

#include "nilwkb/io/json_io.hpp"

namespace nilwkb::io {

// Every shipped catalog document as (relative path, JSON). Families live at the
// top level, paths under paths/, surfaces under surfaces/.
std::vector<std::pair<std::string, Json>> catalog_documents();

} // namespace nilwkb::io
