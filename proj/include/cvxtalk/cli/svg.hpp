#pragma once

#include <string>

#include "cvxtalk/cli/table.hpp"

namespace cvxtalk::cli {

/// Line chart of every column against the first one. Values are quantized
/// through the CSV number format first, so a table read back from its CSV
/// renders to the same bytes. Non-finite points break the polyline.
std::string render_svg(const SweepTable& table, const std::string& title);

}  // namespace cvxtalk::cli
