#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace cvxtalk::cli {

struct CheckResult {
    std::string name;
    bool passed = true;
    double worst = 0.0;  // worst residual (or margin) seen
    double tolerance = 0.0;
    int samples = 0;
};

struct ValidateOptions {
    std::uint64_t seed = 7;
    int samples = 1000;
    /// Test hook: deliberately corrupts one closed form ("ln_xtalk", "eps_max",
    /// "v_opt", "conditional_blocks") so the failure path can be exercised.
    std::string mutate;
    bool color = false;
};

/// Names accepted by ValidateOptions::mutate.
const std::vector<std::string>& mutation_names();

/// Runs the oracle suite; one line per check on `out`. Deterministic in seed.
std::vector<CheckResult> run_validation(const ValidateOptions& opt, std::ostream& out);

}  // namespace cvxtalk::cli
