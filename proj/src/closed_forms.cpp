#include "cvxtalk/closed_forms.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "cvxtalk/errors.hpp"

namespace cvxtalk {

namespace {

constexpr double kLn2 = std::numbers::ln2;

// -log2(x) clamped at zero; x <= 0 is a divergence.
double clamped_neg_log2(double x) {
    if (std::isnan(x)) return x;
    if (x <= 0.0) return kDivergent;
    return std::max(0.0, -std::log2(x));
}

void require(bool ok, const std::string& what) {
    if (!ok) throw DomainError(what);
}

void check_coupling(double t_c, const char* fn) {
    require(t_c >= 0.0 && t_c <= 1.0, std::string(fn) + ": t_c must lie in [0, 1]");
}

void check_transmittance(double T, const char* fn) {
    require(T > 0.0 && T <= 1.0, std::string(fn) + ": transmittance must lie in (0, 1]");
}

void check_noise(double eps, const char* fn) {
    require(eps >= 0.0 && std::isfinite(eps), std::string(fn) + ": excess noise must be >= 0");
}

}  // namespace

void ChannelPair::validate() const {
    check_transmittance(T1, "ChannelPair.T1");
    check_transmittance(T2, "ChannelPair.T2");
    check_noise(epsilon, "ChannelPair.epsilon");
}

double ln_no_xtalk_asymptote(double T, double eps) {
    check_transmittance(T, "ln_no_xtalk_asymptote");
    check_noise(eps, "ln_no_xtalk_asymptote");
    return clamped_neg_log2((1.0 - T * (1.0 - eps)) / (1.0 + T));
}

double ln_xtalk(double v, double t_c, double T, double eps) {
    require(v >= 1.0, "ln_xtalk: V must be >= 1");
    check_coupling(t_c, "ln_xtalk");
    require(T >= 0.0 && T <= 1.0, "ln_xtalk: transmittance must lie in [0, 1]");
    check_noise(eps, "ln_xtalk");
    const double n = eps + v - 1.0;
    const double root = std::sqrt(std::max(0.0, T * T * n * n + (v - 1.0) * (v - 1.0) -
                                  2.0 * T * (v - 1.0) * (eps - 2.0 * t_c * (v + 1.0) + v - 1.0)));
    const double inner = 1.0 + 2.0 * T * (eps + (v - 1.0) * (t_c * v + t_c + 1.0)) + T * T * n * n + v * v -
                         (1.0 + v + T * n) * root;
    const double ln = -0.5 * std::log2(0.5 * inner);
    return std::max(0.0, ln);
}

double ln_xtalk(double v, const CrosstalkModel& xt, double T, double eps) {
    return ln_xtalk(v, xt.effective_coupling(), T, eps);
}

double eps_max(double t_c, double v) {
    check_coupling(t_c, "eps_max");
    require(v >= 1.0, "eps_max: V must be >= 1");
    return 1.0 + t_c - (1.0 - t_c) * v;
}

double v_max(double t_c, double eps) {
    check_coupling(t_c, "v_max");
    check_noise(eps, "v_max");
    if (t_c == 1.0) return kDivergent;
    return (1.0 + t_c - eps) / (1.0 - t_c);
}

double v_max(const CrosstalkModel& xt, double eps) { return v_max(xt.effective_coupling(), eps); }

double v_opt(double t_c, double T, double eps) {
    check_coupling(t_c, "v_opt");
    check_transmittance(T, "v_opt");
    check_noise(eps, "v_opt");
    require(eps < 2.0 * t_c, "v_opt: excess noise must stay below the tolerable level 2 t_c");
    if (t_c == 1.0) return kDivergent;
    const double rc = 1.0 - t_c;
    const double num = rc * (1.0 - T) * (1.0 - T + eps * T) +
                       (T + 1.0) * std::sqrt(rc * t_c * T * (4.0 * t_c - eps * (2.0 - 2.0 * T + eps * T)));
    const double den = rc * (1.0 + T * (4.0 * t_c + T - 2.0));
    return num / den;
}

TrBounds tr_bounds(double t_c, double T1, double T2, Pair pair) {
    check_coupling(t_c, "tr_bounds");
    check_transmittance(T1, "tr_bounds");
    check_transmittance(T2, "tr_bounds");
    if (pair == Pair::Second) std::swap(T1, T2);
    const double rc = 1.0 - t_c;
    return {T1 * t_c / (T1 * t_c + T2 * rc), T2 * t_c / (T2 * t_c + T1 * rc)};
}

double ln_interference_asymptote(double t_c, double T1, double T2, Pair pair) {
    check_coupling(t_c, "ln_interference_asymptote");
    check_transmittance(T1, "ln_interference_asymptote");
    check_transmittance(T2, "ln_interference_asymptote");
    if (pair == Pair::Second) std::swap(T1, T2);
    return clamped_neg_log2((t_c * T2 + T1 * (1.0 - t_c - T2)) / (t_c * T2 + T1 * (1.0 - t_c + T2)));
}

double ta_opt_asymptote(double T1, double T2) {
    check_transmittance(T1, "ta_opt_asymptote");
    check_transmittance(T2, "ta_opt_asymptote");
    const double den = 2.0 + 2.0 * T1 * (1.0 - T2) - 4.0 * T2;
    if (den <= 0.0) return 0.0;  // beyond the pole the homodyne setting is optimal
    return std::max(0.0, 1.0 - (1.0 + T1) * (1.0 - T2) / den);
}

double ln_hom_perfect(double v, double t_c) {
    require(v >= 1.0, "ln_hom_perfect: V must be >= 1");
    check_coupling(t_c, "ln_hom_perfect");
    const double x = t_c * (v * v - 1.0);
    // sqrt(1+x) - sqrt(x) = 1 / (sqrt(1+x) + sqrt(x)).
    return std::max(0.0, std::log2(std::sqrt(1.0 + x) + std::sqrt(x)));
}

double ln_unconditioned_perfect(double v, double t_c) {
    require(v >= 1.0, "ln_unconditioned_perfect: V must be >= 1");
    check_coupling(t_c, "ln_unconditioned_perfect");
    return clamped_neg_log2(v - std::sqrt(t_c * (v * v - 1.0)));
}

double ln_hom_asymptote(double t_c, double T1, double T2) {
    check_coupling(t_c, "ln_hom_asymptote");
    check_transmittance(T1, "ln_hom_asymptote");
    check_transmittance(T2, "ln_hom_asymptote");
    if (t_c == 0.0) return 0.0;
    const double arg = (1.0 - T1) * (T1 * (1.0 - t_c - T2) + t_c * T2) / (t_c * (1.0 + T1) * (1.0 + T1) * T2);
    if (arg <= 0.0) return kDivergent;
    return std::max(0.0, -0.5 * std::log2(arg));
}

double ln_het_asymptote(double t_c, double T1, double T2) {
    check_coupling(t_c, "ln_het_asymptote");
    check_transmittance(T1, "ln_het_asymptote");
    check_transmittance(T2, "ln_het_asymptote");
    const double num = (1.0 - t_c * T1) * (1.0 - t_c * (T1 - T2) - T2);
    const double den = (1.0 + t_c * T1) * (1.0 + t_c * T1) - (1.0 - t_c) * T2 * (1.0 - t_c * T1);
    const double arg = num / den;
    if (arg <= 0.0) return kDivergent;
    return std::max(0.0, -0.5 * std::log2(arg));
}

double hom_asymptote_threshold(double T1, double T2) {
    check_transmittance(T1, "hom_asymptote_threshold");
    check_transmittance(T2, "hom_asymptote_threshold");
    return (1.0 - T1) * (1.0 - T2) / (1.0 - T1 * (1.0 - T2) + 3.0 * T2);
}

ConditionalBlocks conditional_blocks(double v, double t_c, double T1, double T2, double t_a, double t_b) {
    require(v > 1.0, "conditional_blocks: V must be > 1");
    check_coupling(t_c, "conditional_blocks");
    check_transmittance(T1, "conditional_blocks");
    check_transmittance(T2, "conditional_blocks");
    require(t_a >= 0.0 && t_a <= 1.0 && t_b >= 0.0 && t_b <= 1.0, "conditional_blocks: splitting ratios must lie in [0, 1]");
    // The expressions are written in the splitting ratios toward the p detectors.
    const double a = 1.0 - t_a, b = 1.0 - t_b;
    const double rc = 1.0 - t_c, ra = t_a, rb = t_b, s2 = v * v - 1.0, w = v - 1.0;
    const double den_x = t_c * T2 * ra * rb * s2 + (a * w - v) * (T2 * rb * w + 1.0);
    const double den_p = a * w * (T2 * b * (1.0 + t_c - rc * v) - 1.0) - T2 * b * w - 1.0;
    const double k = std::sqrt(t_c * T1) * std::sqrt(s2);
    ConditionalBlocks c{};
    c.a_x = (T2 * rb * w * (v - a * (t_c * v + t_c + w)) + v * (a * w - v)) / den_x;
    c.a_p = (T2 * b * w * (a * w + 1.0 - t_c * ra * (v + 1.0)) + v * (a - a * v - 1.0)) / den_p;
    c.b_x = 1.0 + T1 * w - rc * T1 * ra * s2 / (a + ra * (v - t_c * T2 * rb * s2 / (1.0 + T2 * rb * w)));
    c.b_p = 1.0 + T1 * w - rc * T1 * a * s2 / (ra + a * (v - t_c * T2 * b * s2 / (1.0 + T2 * b * w)));
    c.c_x = k * ((T2 * (1.0 - 2.0 * a) * rb + a) * w - v) / den_x;
    c.c_p = k * (1.0 + (a * (1.0 - 2.0 * T2 * b) + T2 * b) * w) / den_p;
    return c;
}

namespace approx {

double ln_xtalk_small_T(double v, double t_c, double T, double eps) {
    require(v > 1.0, "ln_xtalk_small_T: V must be > 1");
    check_coupling(t_c, "ln_xtalk_small_T");
    check_noise(eps, "ln_xtalk_small_T");
    const double a = 2.0 - eps - (1.0 - t_c) * (v + 1.0);
    const double ln = T * a / kLn2 * (1.0 + 0.5 * T * a - T * t_c * (v + 1.0) / (v - 1.0));
    return std::max(0.0, ln);
}

double v_opt_small_xtalk(double t_c, double T, double eps) {
    check_coupling(t_c, "v_opt_small_xtalk");
    check_transmittance(T, "v_opt_small_xtalk");
    require(eps >= 0.0 && eps <= 2.0, "v_opt_small_xtalk: excess noise must lie in [0, 2]");
    if (t_c == 1.0) return kDivergent;
    return (1.0 - T) * (1.0 - T + eps * T) / ((1.0 + T) * (1.0 + T)) +
           std::sqrt((2.0 - eps) * T * (2.0 + eps * T)) / ((1.0 + T) * std::sqrt(1.0 - t_c));
}

double v_opt_small_xtalk_noiseless(double t_c, double T) {
    check_coupling(t_c, "v_opt_small_xtalk_noiseless");
    check_transmittance(T, "v_opt_small_xtalk_noiseless");
    if (t_c == 1.0) return kDivergent;
    const double q = (1.0 - T) / (1.0 + T);
    return q * q + 2.0 * std::sqrt(T) / ((1.0 + T) * std::sqrt(1.0 - t_c));
}

double v_opt_strong_loss(double t_c, double T, double eps) {
    check_coupling(t_c, "v_opt_strong_loss");
    check_transmittance(T, "v_opt_strong_loss");
    check_noise(eps, "v_opt_strong_loss");
    require(eps < 2.0 * t_c, "v_opt_strong_loss: excess noise must stay below 2 t_c");
    if (t_c == 1.0) return kDivergent;
    return 1.0 + std::sqrt(2.0 * T * t_c * (2.0 * t_c - eps)) / std::sqrt(1.0 - t_c) - (4.0 * t_c - eps) * T;
}

double ln_opt_strong_loss(double t_c, double T, double eps) {
    check_coupling(t_c, "ln_opt_strong_loss");
    require(T >= 0.0 && T <= 1.0, "ln_opt_strong_loss: transmittance must lie in [0, 1]");
    check_noise(eps, "ln_opt_strong_loss");
    require(eps < 2.0 * t_c, "ln_opt_strong_loss: excess noise must stay below 2 t_c");
    const double h = 0.5 * eps;
    const double bracket = t_c - h - 2.0 * std::sqrt(t_c * (1.0 - t_c) * (t_c - h) * T) +
                           (3.0 * t_c * (1.0 - t_c) + h * (1.0 - h)) * T;
    return std::max(0.0, 2.0 * T * bracket / kLn2);
}

double ln_opt_strong_loss_noiseless(double t_c, double T) {
    check_coupling(t_c, "ln_opt_strong_loss_noiseless");
    require(T >= 0.0 && T <= 1.0, "ln_opt_strong_loss_noiseless: transmittance must lie in [0, 1]");
    const double rc = 1.0 - t_c;
    return std::max(0.0, 2.0 * t_c * T * (1.0 - 2.0 * std::sqrt(rc * T) + 3.0 * rc * T) / kLn2);
}

double ln_opt_weak_xtalk_strong_loss(double t_c, double T, double eps) {
    check_coupling(t_c, "ln_opt_weak_xtalk_strong_loss");
    check_transmittance(T, "ln_opt_weak_xtalk_strong_loss");
    require(eps >= 0.0 && eps <= 2.0, "ln_opt_weak_xtalk_strong_loss: excess noise must lie in [0, 2]");
    const double loss_term = 1.0 - T + eps * T;
    const double ln = -std::log2(loss_term / (1.0 + T)) -
                      2.0 * T * std::sqrt((2.0 - eps) * T * (2.0 + eps * T)) /
                          ((1.0 + T) * loss_term * kLn2) * std::sqrt(1.0 - t_c);
    return std::max(0.0, ln);
}

}  // namespace approx

}  // namespace cvxtalk
