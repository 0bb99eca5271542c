#pragma once

// End-to-end construction of the four-mode distribution experiment:
// two TMSV pairs (A1,B1), (A2,B2) -> beam-splitter cross talk between B1 and B2
// -> lossy/noisy channels on B1, B2 -> optional compensation -> per-pair LN.

#include <map>
#include <optional>
#include <string>
#include <variant>

#include "cvxtalk/closed_forms.hpp"
#include "cvxtalk/entanglement.hpp"
#include "cvxtalk/gaussian.hpp"

namespace cvxtalk {

namespace mode {
inline constexpr int A1 = 0;
inline constexpr int A2 = 1;
inline constexpr int B1 = 2;
inline constexpr int B2 = 3;
}  // namespace mode

struct NoCompensation {};

/// Phase shift on B2 followed by a beam splitter t_r on (B1, B2).
/// Unset fields are resolved automatically by `run`.
struct InterferenceCompensation {
    std::optional<double> phi;  // auto: pi (or numeric search if optimize_phase)
    std::optional<double> t_r;  // auto: maximizes LN of target_pair
    Pair target_pair = Pair::First;
    bool optimize_phase = false;
};

/// Generalized heterodyne on A2 (split t_a) and B2 (split t_b), x on the
/// transmitted ports C_A, C_B and p on the reflected ports D_A, D_B.
struct FeedforwardCompensation {
    std::optional<double> t_a;  // auto: maximizes LN(A1B1) at the resolved t_b
    std::optional<double> t_b;  // auto: 1 (x homodyne on B2)
    bool grid_search = false;   // auto (t_a, t_b) by exhaustive 2-D grid instead
};

using Compensation = std::variant<NoCompensation, InterferenceCompensation, FeedforwardCompensation>;

struct ScenarioConfig {
    std::optional<double> v;    // exactly one of v / ln0
    std::optional<double> ln0;
    CrosstalkModel crosstalk;
    ChannelPair channel;
    Compensation compensation;

    void validate() const;    // throws DomainError naming the offending field
    double variance() const;  // V, from v or ln0
};

struct PairReport {
    LnValue ln_pair1;
    std::optional<LnValue> ln_pair2;  // absent for feed-forward
    CovarianceMatrix cm_initial;
    CovarianceMatrix cm_after_channel;
    CovarianceMatrix cm_final;
    std::map<std::string, double> resolved;
    std::string phase_mode;  // "fixed", "pi" or "optimized" for interference, else empty
};

/// Two TMSV pairs in mode order A1, A2, B1, B2.
CovarianceMatrix build_two_pair_state(double v);

/// Beam splitter t_c on (B1, B2).
CovarianceMatrix apply_crosstalk(const CovarianceMatrix& gamma, double t_c);

/// Channel (T1, eps) on B1 and (T2, eps) on B2.
CovarianceMatrix apply_channels(const CovarianceMatrix& gamma, const ChannelPair& channel);

CovarianceMatrix interference_compensate(const CovarianceMatrix& gamma, double phi, double t_r);

/// Conditional A1B1 state after the four homodyne detections on the split A2, B2.
CovarianceMatrix feedforward_localize(const CovarianceMatrix& gamma, double t_a, double t_b);

/// Source, cross talk and channels; the state every compensation acts on.
CovarianceMatrix distributed_state(const ScenarioConfig& config);

/// LN of the pair (A_k, B_k) of a four-mode state.
LnValue pair_ln(const CovarianceMatrix& gamma, Pair pair);

PairReport run(const ScenarioConfig& config);

}  // namespace cvxtalk
