#pragma once

#include <iosfwd>
#include <string>

#include "cvxtalk/cli/validate.hpp"

namespace cvxtalk::cli {

enum ExitCode : int {
    kExitOk = 0,
    kExitValidationFailed = 1,
    kExitConfigError = 2,
    kExitNumericError = 3,
    kExitIoError = 4,
};

int cmd_ln(const std::string& config_path, std::ostream& out, std::ostream& err);

struct SweepOptions {
    std::string config_path;
    std::string param;  // v, ln0, t_c, eps, T1_db, T2_db, t_r, t_a, phi
    double from = 0.0;
    double to = 1.0;
    int steps = 11;
    std::string format = "csv";  // csv | json
    std::string output;          // empty: standard output
    std::string plot;            // optional SVG path
};

/// Names accepted by SweepOptions::param.
const std::vector<std::string>& sweep_params();

int cmd_sweep(const SweepOptions& opt, std::ostream& out, std::ostream& err);

/// Writes <out_dir>/<figure>_<curve>.csv and, if `svg`, a matching .svg per curve.
int cmd_figure(const std::string& id, const std::string& out_dir, bool svg, std::ostream& out, std::ostream& err);

int cmd_optimize(const std::string& config_path, const std::string& target, std::ostream& out, std::ostream& err);

int cmd_validate(const ValidateOptions& opt, std::ostream& out, std::ostream& err);

}  // namespace cvxtalk::cli
