#pragma once

// Analytic expressions for TMSV distribution through a cross-talk coupling
// followed by lossy, noisy channels. All logarithmic negativities are in bits
// and clamped at zero at the outermost level. Functions under `approx`
// are series expansions and are never used as ground truth.

#include <limits>

namespace cvxtalk {

/// Returned where an expression diverges (e.g. lossless noiseless asymptote).
inline constexpr double kDivergent = std::numeric_limits<double>::infinity();

enum class CrosstalkVariant { TwoMode, ThreeMode };

/// Coupling transmittance between neighbouring signal modes (1 = no cross talk).
/// The three-mode variant enters every formula as t_c^2.
struct CrosstalkModel {
    double t_c = 1.0;
    CrosstalkVariant variant = CrosstalkVariant::TwoMode;

    double effective_coupling() const { return variant == CrosstalkVariant::ThreeMode ? t_c * t_c : t_c; }
};

/// Transmittances of the channels carrying B1 and B2, and excess noise (SNU,
/// referred to the channel output) common to both.
struct ChannelPair {
    double T1 = 1.0;
    double T2 = 1.0;
    double epsilon = 0.0;

    void validate() const;  // throws DomainError
};

enum class Pair { First = 1, Second = 2 };

/// Conditional A1B1 covariance entries after the generalized heterodyne on
/// A2, B2 (eps = 0). Matrix layout (x_A1, p_A1, x_B1, p_B1):
/// [[a_x, 0, c_x, 0], [0, a_p, 0, c_p], [c_x, 0, b_x, 0], [0, c_p, 0, b_p]].
struct ConditionalBlocks {
    double a_x, a_p, b_x, b_p, c_x, c_p;
};

/// t_a, t_b are the transmissions toward the x detectors C_A, C_B.
ConditionalBlocks conditional_blocks(double v, double t_c, double T1, double T2, double t_a, double t_b);

/// lim_{V->inf} LN without cross talk: -log2[(1 - T(1 - eps)) / (1 + T)].
double ln_no_xtalk_asymptote(double T, double eps);

/// LN of one pair after cross talk and its channel (T, eps).
double ln_xtalk(double v, double t_c, double T, double eps);
double ln_xtalk(double v, const CrosstalkModel& xt, double T, double eps);

/// Entanglement-breaking excess noise 1 + t_c - (1 - t_c) V; independent of T.
double eps_max(double t_c, double v);

/// Largest variance that keeps entanglement, (1 + t_c - eps) / (1 - t_c); kDivergent at t_c = 1.
double v_max(double t_c, double eps);
double v_max(const CrosstalkModel& xt, double eps);

/// Variance maximizing ln_xtalk. Requires 0 <= eps < 2 t_c; kDivergent at t_c = 1.
double v_opt(double t_c, double T, double eps);

struct TrBounds {
    double low_v = 0.0;   // optimum for V -> 1
    double high_v = 0.0;  // optimum for V -> inf
};

/// Optimal compensating beam-splitter transmittance in the two variance limits
/// (eps = 0); for Pair::Second T1 and T2 swap roles.
TrBounds tr_bounds(double t_c, double T1, double T2, Pair pair = Pair::First);

/// lim_{V->inf} LN with t_r = tr_bounds().high_v.
double ln_interference_asymptote(double t_c, double T1, double T2, Pair pair = Pair::First);

/// Large-V optimal sender splitting for feed-forward localization (t_B = 1, eps = 0).
double ta_opt_asymptote(double T1, double T2);

/// T1 = T2 = 1, eps = 0: LN after homodyne conditioning on both sides.
double ln_hom_perfect(double v, double t_c);
/// T1 = T2 = 1, eps = 0: LN without conditioning, -log2[V - sqrt(t_c (V^2 - 1))].
double ln_unconditioned_perfect(double v, double t_c);

/// lim_{V->inf} of the conditional LN for homodyne (t_A = 0) and balanced
/// heterodyne (t_A = 1/2) sender measurement, t_B = 1, eps = 0.
double ln_hom_asymptote(double t_c, double T1, double T2);
double ln_het_asymptote(double t_c, double T1, double T2);

/// ln_hom_asymptote vanishes for t_c below this value.
double hom_asymptote_threshold(double T1, double T2);

namespace approx {

/// Second-order expansion of ln_xtalk around T = 0.
double ln_xtalk_small_T(double v, double t_c, double T, double eps);

double v_opt_small_xtalk(double t_c, double T, double eps);
double v_opt_small_xtalk_noiseless(double t_c, double T);
double v_opt_strong_loss(double t_c, double T, double eps);

/// ln_xtalk at V_opt for T -> 0.
double ln_opt_strong_loss(double t_c, double T, double eps);
double ln_opt_strong_loss_noiseless(double t_c, double T);
/// ln_xtalk at V_opt for t_c -> 1 and T -> 0.
double ln_opt_weak_xtalk_strong_loss(double t_c, double T, double eps);

}  // namespace approx

}  // namespace cvxtalk
