#pragma once

#include <stdexcept>
#include <string>

#include <json.hpp>

#include "cvxtalk/scenario.hpp"

namespace cvxtalk::cli {

/// Malformed or invalid configuration. `line` is 1-based, 0 when unknown.
class ConfigError : public std::runtime_error {
public:
    ConfigError(const std::string& field, int line, const std::string& what);

    const std::string& field() const { return field_; }
    int line() const { return line_; }

private:
    std::string field_;
    int line_;
};

class IoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// dB to linear transmittance, T = 10^(dB/10).
double from_db(double db);

/// Parses a scenario document:
///   {v | ln0, t_c, T1 | T1_db, T2 | T2_db, eps, crosstalk_variant, compensation}
/// `compensation` is "none" | "interference" | "feedforward" or an object with
/// `type` and optional parameters (numbers or "auto"). Runs
/// ScenarioConfig::validate and reports its failures as ConfigError.
ScenarioConfig parse_config(const std::string& text);

ScenarioConfig load_config(const std::string& path);

/// Resolved configuration as JSON (linear transmittances, unset values as "auto").
nlohmann::ordered_json config_to_json(const ScenarioConfig& config);

}  // namespace cvxtalk::cli
