#include "cvxtalk/optimize_scenario.hpp"

#include <algorithm>
#include <numbers>

#include "cvxtalk/errors.hpp"

namespace cvxtalk {

ScalarMaximum optimize_v(const ScenarioConfig& config) {
    config.validate();
    const double t_c = config.crosstalk.effective_coupling();
    const double hi = std::min(v_max(t_c, config.channel.epsilon) - 1e-6, kVarianceCap);
    auto objective = [&](double v) {
        ScenarioConfig c = config;
        c.v = v;
        c.ln0.reset();
        return pair_ln(distributed_state(c), Pair::First).value;
    };
    if (!(hi > 1.0)) {
        // Entanglement cannot survive for any V > 1.
        return {1.0, objective(1.0)};
    }
    ScalarProblem p;
    p.objective = objective;
    p.lo = 1.0;
    p.hi = hi;
    return maximize_scalar(p);
}

ScalarMaximum optimize_tr(const ScenarioConfig& config, Pair pair) {
    const CovarianceMatrix channel = distributed_state(config);
    double phi = std::numbers::pi;
    if (const auto* c = std::get_if<InterferenceCompensation>(&config.compensation); c && c->phi) {
        phi = *c->phi;
    }
    ScalarProblem p;
    p.objective = [&](double t_r) { return pair_ln(interference_compensate(channel, phi, t_r), pair).value; };
    return maximize_scalar(p);
}

ScalarMaximum optimize_ta(const ScenarioConfig& config) {
    const CovarianceMatrix channel = distributed_state(config);
    double t_b = 1.0;
    if (const auto* f = std::get_if<FeedforwardCompensation>(&config.compensation); f && f->t_b) {
        t_b = *f->t_b;
    }
    ScalarProblem p;
    p.objective = [&](double t_a) { return log_negativity(feedforward_localize(channel, t_a, t_b)).value; };
    return maximize_scalar(p);
}

FeedforwardGridResult feedforward_grid_search(const ScenarioConfig& config, int points) {
    if (points < 2) throw DomainError("feedforward_grid_search: need at least 2 points per axis");
    const CovarianceMatrix channel = distributed_state(config);
    FeedforwardGridResult best{0.0, 0.0, -1.0};
    for (int i = 0; i < points; ++i) {
        const double t_a = static_cast<double>(i) / (points - 1);
        for (int j = 0; j < points; ++j) {
            const double t_b = static_cast<double>(j) / (points - 1);
            const double ln = log_negativity(feedforward_localize(channel, t_a, t_b)).value;
            if (ln > best.value) best = {t_a, t_b, ln};
        }
    }
    return best;
}

}  // namespace cvxtalk
