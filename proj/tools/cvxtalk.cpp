// cvxtalk: scenario evaluation, sweeps, figure data, optimizers and the
// self-validation suite.

#include <cstdlib>
#include <iostream>

#include <unistd.h>

#include <CLI11.hpp>

#include "cvxtalk/cli/commands.hpp"
#include "cvxtalk/cli/figures.hpp"

using namespace cvxtalk::cli;

int main(int argc, char** argv) {
    CLI::App app{"Cross-talk compensation toolkit for distributed TMSV entanglement"};
    app.set_version_flag("--version", kToolVersion);
    app.require_subcommand(1);

    std::string config_path;

    auto* ln = app.add_subcommand("ln", "Evaluate one scenario and print the report as JSON");
    ln->add_option("config", config_path, "Scenario JSON file")->required();

    SweepOptions sweep;
    auto* sw = app.add_subcommand("sweep", "Sweep one parameter on a uniform grid");
    sw->add_option("config", sweep.config_path, "Scenario JSON file")->required();
    sw->add_option("--param", sweep.param, "Parameter to sweep")->required()->check(CLI::IsMember(sweep_params()));
    sw->add_option("--from", sweep.from, "Grid start")->required();
    sw->add_option("--to", sweep.to, "Grid end")->required();
    sw->add_option("--steps", sweep.steps, "Number of grid points (>= 2)")->capture_default_str();
    sw->add_option("--out", sweep.format, "Output format")->check(CLI::IsMember({"csv", "json"}))->capture_default_str();
    sw->add_option("-o,--output", sweep.output, "Output file (default: standard output)");
    sw->add_option("--plot", sweep.plot, "Also write an SVG line plot");

    std::string figure_id, out_dir = ".";
    bool no_svg = false;
    auto* fig = app.add_subcommand("figure", "Write the curves of one figure as CSV (+ SVG)");
    fig->add_option("id", figure_id, "Figure id")->required()->check(CLI::IsMember(figure_ids()));
    fig->add_option("--out-dir", out_dir, "Output directory")->capture_default_str();
    fig->add_flag("--no-svg", no_svg, "Skip the SVG plots");

    std::string target;
    auto* opt = app.add_subcommand("optimize", "Optimize V, t_r or t_A for a scenario");
    opt->add_option("config", config_path, "Scenario JSON file")->required();
    opt->add_option("--target", target, "v | tr | ta")->required()->check(CLI::IsMember({"v", "tr", "ta"}));

    ValidateOptions vopt;
    auto* val = app.add_subcommand("validate", "Run the oracle self-validation suite");
    val->add_option("--seed", vopt.seed, "RNG seed")->capture_default_str();
    val->add_option("--samples", vopt.samples, "Random samples per check")->capture_default_str();
    val->add_option("--mutate", vopt.mutate, "Corrupt one closed form (test hook)")
        ->check(CLI::IsMember(mutation_names()))
        ->group("");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kExitConfigError;
    }

    if (*ln) return cmd_ln(config_path, std::cout, std::cerr);
    if (*sw) return cmd_sweep(sweep, std::cout, std::cerr);
    if (*fig) return cmd_figure(figure_id, out_dir, !no_svg, std::cout, std::cerr);
    if (*opt) return cmd_optimize(config_path, target, std::cout, std::cerr);
    vopt.color = std::getenv("NO_COLOR") == nullptr && isatty(STDOUT_FILENO);
    return cmd_validate(vopt, std::cout, std::cerr);
}
