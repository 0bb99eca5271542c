#include "cvxtalk/scenario.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "cvxtalk/errors.hpp"
#include "cvxtalk/optimize_scenario.hpp"

namespace cvxtalk {

namespace {

void field_check(bool ok, const char* field, const std::string& what) {
    if (!ok) throw DomainError(std::string("field '") + field + "': " + what);
}

void check_unit_interval(const std::optional<double>& x, const char* field) {
    if (x) field_check(*x >= 0.0 && *x <= 1.0, field, "must lie in [0, 1]");
}

int index_of(const std::vector<int>& labels, int label) {
    for (std::size_t i = 0; i < labels.size(); ++i) {
        if (labels[i] == label) return static_cast<int>(i);
    }
    throw IndexError("feedforward_localize: internal mode label lost");
}

}  // namespace

void ScenarioConfig::validate() const {
    field_check(v.has_value() != ln0.has_value(), "v", "exactly one of 'v' and 'ln0' must be given");
    if (v) field_check(std::isfinite(*v) && *v >= 1.0, "v", "unphysical variance (need V >= 1)");
    if (ln0) field_check(std::isfinite(*ln0) && *ln0 >= 0.0, "ln0", "must be >= 0");
    field_check(crosstalk.t_c >= 0.0 && crosstalk.t_c <= 1.0, "t_c", "must lie in [0, 1]");
    field_check(channel.T1 > 0.0 && channel.T1 <= 1.0, "T1", "must lie in (0, 1]");
    field_check(channel.T2 > 0.0 && channel.T2 <= 1.0, "T2", "must lie in (0, 1]");
    field_check(std::isfinite(channel.epsilon) && channel.epsilon >= 0.0, "eps", "must be >= 0");
    if (const auto* c = std::get_if<InterferenceCompensation>(&compensation)) {
        if (c->phi) field_check(std::isfinite(*c->phi), "phi", "must be finite");
        check_unit_interval(c->t_r, "t_r");
    } else if (const auto* f = std::get_if<FeedforwardCompensation>(&compensation)) {
        check_unit_interval(f->t_a, "t_a");
        check_unit_interval(f->t_b, "t_b");
    }
}

double ScenarioConfig::variance() const { return v ? *v : variance_for_ln(ln0.value()); }

CovarianceMatrix build_two_pair_state(double v) {
    const CovarianceMatrix pair = tmsv_pair(v);
    // tensor() gives (A1, B1, A2, B2).
    return reduce(tensor(pair, pair), {0, 2, 1, 3});
}

CovarianceMatrix apply_crosstalk(const CovarianceMatrix& gamma, double t_c) {
    if (gamma.n_modes() != 4) throw DimensionError("apply_crosstalk: expected a four-mode state");
    return apply_map(gamma, beam_splitter_map(4, mode::B1, mode::B2, t_c));
}

CovarianceMatrix apply_channels(const CovarianceMatrix& gamma, const ChannelPair& channel) {
    if (gamma.n_modes() != 4) throw DimensionError("apply_channels: expected a four-mode state");
    const CovarianceMatrix g = lossy_noisy_channel(gamma, mode::B1, channel.T1, channel.epsilon);
    return lossy_noisy_channel(g, mode::B2, channel.T2, channel.epsilon);
}

CovarianceMatrix interference_compensate(const CovarianceMatrix& gamma, double phi, double t_r) {
    if (gamma.n_modes() != 4) throw DimensionError("interference_compensate: expected a four-mode state");
    const SymplecticMap s = beam_splitter_map(4, mode::B1, mode::B2, t_r) * phase_shift_map(4, mode::B2, phi);
    return apply_map(gamma, s);
}

CovarianceMatrix feedforward_localize(const CovarianceMatrix& gamma, double t_a, double t_b) {
    if (gamma.n_modes() != 4) throw DimensionError("feedforward_localize: expected a four-mode state");
    // Ancillae: vacuum 4 enters A2's splitter, vacuum 5 enters B2's.
    constexpr int kCA = mode::A2, kCB = mode::B2, kDA = 4, kDB = 5;
    CovarianceMatrix g = tensor(gamma, CovarianceMatrix::vacuum(2));
    g = apply_map(g, beam_splitter_map(6, mode::A2, kDA, t_a) * beam_splitter_map(6, mode::B2, kDB, t_b));

    std::vector<int> labels = {0, 1, 2, 3, 4, 5};
    const std::pair<int, Quadrature> detections[] = {
        {kCA, Quadrature::X}, {kDA, Quadrature::P}, {kCB, Quadrature::X}, {kDB, Quadrature::P}};
    for (const auto& [label, quad] : detections) {
        const int at = index_of(labels, label);
        g = homodyne_condition(g, at, quad);
        labels.erase(labels.begin() + at);
    }
    return g;  // remaining labels: A1, B1
}

CovarianceMatrix distributed_state(const ScenarioConfig& config) {
    config.validate();
    const CovarianceMatrix initial = build_two_pair_state(config.variance());
    return apply_channels(apply_crosstalk(initial, config.crosstalk.effective_coupling()), config.channel);
}

LnValue pair_ln(const CovarianceMatrix& gamma, Pair pair) {
    if (gamma.n_modes() != 4) throw DimensionError("pair_ln: expected a four-mode state");
    return pair == Pair::First ? log_negativity(reduce(gamma, {mode::A1, mode::B1}))
                               : log_negativity(reduce(gamma, {mode::A2, mode::B2}));
}

PairReport run(const ScenarioConfig& config) {
    config.validate();
    const double v = config.variance();
    const CovarianceMatrix initial = build_two_pair_state(v);
    const CovarianceMatrix channel =
        apply_channels(apply_crosstalk(initial, config.crosstalk.effective_coupling()), config.channel);

    PairReport report{pair_ln(channel, Pair::First), pair_ln(channel, Pair::Second), initial, channel, channel,
                      {{"v", v}, {"t_c_effective", config.crosstalk.effective_coupling()}}, ""};

    if (const auto* c = std::get_if<InterferenceCompensation>(&config.compensation)) {
        double phi = std::numbers::pi;
        double t_r = 0.0;
        if (c->phi) {
            phi = *c->phi;
            report.phase_mode = "fixed";
        } else if (c->optimize_phase) {
            report.phase_mode = "optimized";
        } else {
            report.phase_mode = "pi";
        }
        auto objective_tr = [&](double phase) {
            ScenarioConfig fixed = config;
            auto comp = *c;
            comp.phi = phase;
            fixed.compensation = comp;
            return optimize_tr(fixed, c->target_pair);
        };
        if (report.phase_mode == "optimized") {
            ScalarProblem p;
            p.lo = 0.0;
            p.hi = 2.0 * std::numbers::pi;
            p.tol = 1e-8;
            p.objective = [&](double phase) {
                if (c->t_r) return pair_ln(interference_compensate(channel, phase, *c->t_r), c->target_pair).value;
                return objective_tr(phase).value;
            };
            phi = maximize_scalar(p).argmax;
        }
        t_r = c->t_r ? *c->t_r : objective_tr(phi).argmax;
        report.cm_final = interference_compensate(channel, phi, t_r);
        report.ln_pair1 = pair_ln(report.cm_final, Pair::First);
        report.ln_pair2 = pair_ln(report.cm_final, Pair::Second);
        report.resolved["phi"] = phi;
        report.resolved["t_r"] = t_r;
    } else if (const auto* f = std::get_if<FeedforwardCompensation>(&config.compensation)) {
        double t_a = 0.0;
        double t_b = f->t_b.value_or(1.0);
        if (f->grid_search && (!f->t_a || !f->t_b)) {
            const auto best = feedforward_grid_search(config);
            t_a = f->t_a.value_or(best.t_a);
            t_b = f->t_b.value_or(best.t_b);
        } else if (f->t_a) {
            t_a = *f->t_a;
        } else {
            ScenarioConfig pinned = config;
            auto comp = *f;
            comp.t_b = t_b;
            pinned.compensation = comp;
            t_a = optimize_ta(pinned).argmax;
        }
        report.cm_final = feedforward_localize(channel, t_a, t_b);
        report.ln_pair1 = log_negativity(report.cm_final);
        report.ln_pair2.reset();
        report.resolved["t_a"] = t_a;
        report.resolved["t_b"] = t_b;
    }
    return report;
}

}  // namespace cvxtalk
