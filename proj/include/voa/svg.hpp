#pragma once

#include <string>

#include "voa/families.hpp"

namespace voa {

// Single-panel line chart of a scan table: one polyline per column, linear
// axes with tick labels, and a legend. Pure function of the table: the same
// table always serializes to the same bytes (no timestamps, no randomness).
std::string to_svg(const ScanTable& table);

}  // namespace voa
