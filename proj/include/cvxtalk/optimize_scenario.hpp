#pragma once

// Optimizers bound to the scenario pipeline objectives.

#include "cvxtalk/optimize.hpp"
#include "cvxtalk/scenario.hpp"

namespace cvxtalk {

inline constexpr double kVarianceCap = 1e5;

/// V maximizing the uncompensated LN(A1B1), on [1, min(v_max - 1e-6, 1e5)].
ScalarMaximum optimize_v(const ScenarioConfig& config);

/// t_r maximizing LN of `pair` after interference compensation. The phase is the
/// configured one when fixed, pi otherwise.
ScalarMaximum optimize_tr(const ScenarioConfig& config, Pair pair);

/// t_A maximizing the conditional LN(A1B1); t_B is the configured one, or 1.
ScalarMaximum optimize_ta(const ScenarioConfig& config);

struct FeedforwardGridResult {
    double t_a = 0.0;
    double t_b = 0.0;
    double value = 0.0;
};

/// Exhaustive search of the conditional LN(A1B1) on a points x points grid over [0, 1]^2.
FeedforwardGridResult feedforward_grid_search(const ScenarioConfig& config, int points = 41);

}  // namespace cvxtalk
