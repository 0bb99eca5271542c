#include "cvxtalk/cli/commands.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <numbers>
#include <sstream>

#include "cvxtalk/cli/config.hpp"
#include "cvxtalk/cli/figures.hpp"
#include "cvxtalk/cli/svg.hpp"
#include "cvxtalk/cli/table.hpp"
#include "cvxtalk/errors.hpp"
#include "cvxtalk/optimize_scenario.hpp"
#include "cvxtalk/scenario.hpp"

namespace cvxtalk::cli {

namespace {

using oj = nlohmann::ordered_json;

// Maps library and CLI exceptions onto the exit-code contract.
int guarded(std::ostream& err, const std::function<int()>& body) {
    try {
        return body();
    } catch (const ConfigError& e) {
        err << "config error: " << e.what() << '\n';
        return kExitConfigError;
    } catch (const IoError& e) {
        err << "i/o error: " << e.what() << '\n';
        return kExitIoError;
    } catch (const NumericError& e) {
        err << "numeric error: " << e.what() << '\n';
        return kExitNumericError;
    } catch (const DomainError& e) {
        err << "config error: " << e.what() << '\n';
        return kExitConfigError;
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << '\n';
        return kExitConfigError;
    } catch (const std::filesystem::filesystem_error& e) {
        err << "i/o error: " << e.what() << '\n';
        return kExitIoError;
    }
}

oj json_number(double x) { return std::isfinite(x) ? oj(x) : oj(format_value(x)); }

oj matrix_json(const CovarianceMatrix& g) {
    oj rows = oj::array();
    for (Eigen::Index r = 0; r < g.matrix().rows(); ++r) {
        oj row = oj::array();
        for (Eigen::Index c = 0; c < g.matrix().cols(); ++c) row.push_back(g(r, c));
        rows.push_back(std::move(row));
    }
    return rows;
}

oj ln_json(const LnValue& ln) { return {{"value", ln.value}, {"nu_min", ln.nu_min}}; }

void write_file(const std::string& path, const std::string& content) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw IoError("cannot open '" + path + "' for writing");
    f << content;
    f.close();
    if (!f) throw IoError("write failed for '" + path + "'");
}

std::string utc_timestamp() {
    const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&now, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

ScenarioConfig with_param(ScenarioConfig c, const std::string& param, double x) {
    if (param == "v") {
        c.v = x;
        c.ln0.reset();
    } else if (param == "ln0") {
        c.ln0 = x;
        c.v.reset();
    } else if (param == "t_c") {
        c.crosstalk.t_c = x;
    } else if (param == "eps") {
        c.channel.epsilon = x;
    } else if (param == "T1_db") {
        c.channel.T1 = from_db(x);
    } else if (param == "T2_db") {
        c.channel.T2 = from_db(x);
    } else if (param == "t_r" || param == "phi") {
        InterferenceCompensation ic;
        if (const auto* cur = std::get_if<InterferenceCompensation>(&c.compensation)) ic = *cur;
        (param == "t_r" ? ic.t_r : ic.phi) = x;
        c.compensation = ic;
    } else if (param == "t_a") {
        FeedforwardCompensation ff;
        if (const auto* cur = std::get_if<FeedforwardCompensation>(&c.compensation)) ff = *cur;
        ff.t_a = x;
        c.compensation = ff;
    } else {
        throw std::invalid_argument("unknown sweep parameter '" + param + "'");
    }
    return c;
}

}  // namespace

const std::vector<std::string>& sweep_params() {
    static const std::vector<std::string> p = {"v", "ln0", "t_c", "eps", "T1_db", "T2_db", "t_r", "t_a", "phi"};
    return p;
}

int cmd_ln(const std::string& config_path, std::ostream& out, std::ostream& err) {
    return guarded(err, [&] {
        const ScenarioConfig config = load_config(config_path);
        const PairReport r = run(config);
        oj j;
        j["config"] = config_to_json(config);
        oj resolved = oj::object();
        for (const auto& [k, v] : r.resolved) resolved[k] = json_number(v);
        j["resolved"] = resolved;
        j["ln_pair1"] = ln_json(r.ln_pair1);
        j["ln_pair2"] = r.ln_pair2 ? ln_json(*r.ln_pair2) : oj(nullptr);
        if (!r.phase_mode.empty()) j["phase_mode"] = r.phase_mode;
        j["cm_initial"] = matrix_json(r.cm_initial);
        j["cm_after_channel"] = matrix_json(r.cm_after_channel);
        j["cm_final"] = matrix_json(r.cm_final);
        out << j.dump(2) << '\n';
        return kExitOk;
    });
}

int cmd_sweep(const SweepOptions& opt, std::ostream& out, std::ostream& err) {
    return guarded(err, [&] {
        if (std::find(sweep_params().begin(), sweep_params().end(), opt.param) == sweep_params().end()) {
            throw std::invalid_argument("unknown sweep parameter '" + opt.param + "'");
        }
        if (opt.steps < 2) throw std::invalid_argument("--steps must be >= 2");
        if (opt.format != "csv" && opt.format != "json") throw std::invalid_argument("--out must be csv or json");
        if (!std::isfinite(opt.from) || !std::isfinite(opt.to)) throw std::invalid_argument("--from/--to must be finite");
        const ScenarioConfig base = load_config(opt.config_path);

        std::vector<double> xs(opt.steps), ln1(opt.steps), ln2(opt.steps);
        int warnings = 0;
        for (int i = 0; i < opt.steps; ++i) {
            xs[i] = i == opt.steps - 1 ? opt.to : opt.from + (opt.to - opt.from) * i / (opt.steps - 1);
            try {
                const PairReport r = run(with_param(base, opt.param, xs[i]));
                ln1[i] = r.ln_pair1.value;
                ln2[i] = r.ln_pair2 ? r.ln_pair2->value : std::nan("");
            } catch (const std::exception& e) {
                ++warnings;
                ln1[i] = ln2[i] = std::nan("");
                err << "warning: " << opt.param << " = " << format_value(xs[i]) << ": " << e.what() << '\n';
            }
        }

        SweepTable t;
        t.add_column(opt.param, xs);
        t.add_column("ln_pair1", ln1);
        t.add_column("ln_pair2", ln2);
        int best = -1;
        for (int i = 0; i < opt.steps; ++i) {
            if (std::isfinite(ln1[i]) && (best < 0 || ln1[i] > ln1[best])) best = i;
        }
        t.meta = oj{{"tool", kToolVersion},
                    {"timestamp", utc_timestamp()},
                    {"config", config_to_json(base)},
                    {"param", opt.param},
                    {"argmax_ln_pair1", best >= 0 ? json_number(xs[best]) : oj(nullptr)},
                    {"warnings", warnings}};

        std::ostringstream body;
        if (opt.format == "csv") {
            write_csv(body, t);
        } else {
            body << table_to_json(t).dump(2) << '\n';
        }
        if (opt.output.empty()) {
            out << body.str();
        } else {
            write_file(opt.output, body.str());
        }
        if (!opt.plot.empty()) write_file(opt.plot, render_svg(t, "LN vs " + opt.param));
        if (warnings > 0) err << warnings << " point(s) failed and were recorded as nan\n";
        return kExitOk;
    });
}

int cmd_figure(const std::string& id, const std::string& out_dir, bool svg, std::ostream& out, std::ostream& err) {
    return guarded(err, [&] {
        if (!is_figure_id(id)) {
            std::string known;
            for (const auto& f : figure_ids()) known += (known.empty() ? "" : ", ") + f;
            throw std::invalid_argument("unknown figure '" + id + "' (known: " + known + ")");
        }
        const auto curves = build_figure(id);
        std::error_code ec;
        std::filesystem::create_directories(out_dir, ec);
        if (ec) throw IoError("cannot create '" + out_dir + "': " + ec.message());
        for (const auto& c : curves) {
            const std::string stem = (std::filesystem::path(out_dir) / (id + "_" + c.name)).string();
            std::ostringstream csv;
            write_csv(csv, c.table);
            write_file(stem + ".csv", csv.str());
            out << stem << ".csv\n";
            if (svg) {
                write_file(stem + ".svg", render_svg(c.table, id + " " + c.name));
                out << stem << ".svg\n";
            }
        }
        return kExitOk;
    });
}

int cmd_optimize(const std::string& config_path, const std::string& target, std::ostream& out, std::ostream& err) {
    return guarded(err, [&] {
        const ScenarioConfig config = load_config(config_path);
        oj j{{"target", target}};
        ScalarMaximum m;
        if (target == "v") {
            m = optimize_v(config);
        } else if (target == "tr") {
            Pair pair = Pair::First;
            if (const auto* c = std::get_if<InterferenceCompensation>(&config.compensation)) pair = c->target_pair;
            m = optimize_tr(config, pair);
            j["pair"] = static_cast<int>(pair);
        } else if (target == "ta") {
            m = optimize_ta(config);
        } else {
            throw std::invalid_argument("unknown --target '" + target + "' (expected v, tr or ta)");
        }
        j["argmax"] = m.argmax;
        j["value"] = m.value;
        out << j.dump(2) << '\n';
        return kExitOk;
    });
}

int cmd_validate(const ValidateOptions& opt, std::ostream& out, std::ostream& err) {
    return guarded(err, [&] {
        const auto results = run_validation(opt, out);
        int failed = 0;
        for (const auto& r : results) failed += r.passed ? 0 : 1;
        out << (failed == 0 ? "all " + std::to_string(results.size()) + " checks passed"
                            : std::to_string(failed) + " of " + std::to_string(results.size()) + " checks failed")
            << '\n';
        return failed == 0 ? kExitOk : kExitValidationFailed;
    });
}

}  // namespace cvxtalk::cli
