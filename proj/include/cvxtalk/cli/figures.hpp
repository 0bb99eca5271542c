#pragma once

#include <string>
#include <vector>

#include "cvxtalk/cli/table.hpp"

namespace cvxtalk::cli {

inline constexpr const char* kToolVersion = "cvxtalk 0.1.0";

struct Curve {
    std::string name;  // written as <figure>_<name>.csv
    SweepTable table;
};

/// fig2_left ... fig8, in order.
const std::vector<std::string>& figure_ids();
bool is_figure_id(const std::string& id);
std::string figure_description(const std::string& id);

/// Every curve of a figure with its caption parameters. Deterministic; the
/// table metadata carries no timestamp. Throws std::invalid_argument for an
/// unknown id.
std::vector<Curve> build_figure(const std::string& id);

}  // namespace cvxtalk::cli
