#include "cvxtalk/cli/validate.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <ostream>
#include <random>
#include <stdexcept>

#include "cvxtalk/closed_forms.hpp"
#include "cvxtalk/optimize.hpp"
#include "cvxtalk/optimize_scenario.hpp"
#include "cvxtalk/scenario.hpp"

namespace cvxtalk::cli {

namespace {

using Rng = std::mt19937_64;

double uniform(Rng& rng, double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng); }

ScenarioConfig config(double v, double tc, double T1, double T2, double eps = 0.0) {
    ScenarioConfig c;
    c.v = v;
    c.crosstalk.t_c = tc;
    c.channel = {T1, T2, eps};
    return c;
}

Matrix random_symplectic(int n, Rng& rng) {
    SymplecticMap s = SymplecticMap::identity(n);
    for (int layer = 0; layer < 3; ++layer) {
        for (int i = 0; i < n; ++i) s = phase_shift_map(n, i, uniform(rng, 0.0, 2.0 * std::numbers::pi)) * s;
        for (int i = 0; i + 1 < n; ++i) s = beam_splitter_map(n, i, i + 1, uniform(rng, 0.0, 1.0)) * s;
    }
    // Local squeezers make the map active.
    Matrix out = s.matrix();
    for (int i = 0; i < n; ++i) {
        const double r = uniform(rng, -0.6, 0.6);
        out.row(2 * i) *= std::exp(-r);
        out.row(2 * i + 1) *= std::exp(r);
    }
    return out;
}

CovarianceMatrix random_state(int n, Rng& rng) {
    Eigen::VectorXd d(2 * n);
    for (int k = 0; k < n; ++k) d(2 * k) = d(2 * k + 1) = uniform(rng, 1.0, 3.0);
    const Matrix s = random_symplectic(n, rng);
    return CovarianceMatrix(s * d.asDiagonal() * s.transpose());
}

struct Context {
    Rng rng;
    int samples;
    std::string mutate;

    double ln_xtalk_(double v, double tc, double T, double eps) const {
        const double x = ln_xtalk(v, tc, T, eps);
        return mutate == "ln_xtalk" ? x * (1.0 + 1e-3) : x;
    }
    double eps_max_(double tc, double v) const { return eps_max(tc, v) + (mutate == "eps_max" ? 1e-3 : 0.0); }
    double v_opt_(double tc, double T, double eps) const {
        return v_opt(tc, T, eps) * (mutate == "v_opt" ? 1.01 : 1.0);
    }
    ConditionalBlocks blocks_(double v, double tc, double T1, double T2, double ta, double tb) const {
        ConditionalBlocks c = conditional_blocks(v, tc, T1, T2, ta, tb);
        if (mutate == "conditional_blocks") c.c_p *= 1.0 + 1e-6;
        return c;
    }
};

struct Check {
    const char* name;
    double tolerance;
    int (*count)(int samples);  // samples actually drawn
    std::function<double(Context&, int n)> worst;  // returns the worst residual
};

int all(int s) { return s; }
int tenth(int s) { return std::max(s > 0 ? 1 : 0, s / 10); }

double spectrum_invariance(Context& c, int n) {
    double worst = 0.0;
    for (int k = 0; k < n; ++k) {
        const CovarianceMatrix g = random_state(3, c.rng);
        const SymplecticMap s(random_symplectic(3, c.rng));
        const auto a = symplectic_eigenvalues(g), b = symplectic_eigenvalues(apply_map(g, s));
        for (int i = 0; i < 3; ++i) worst = std::max(worst, std::abs(a[i] - b[i]) / a[i]);
    }
    return worst;
}

double spectrum_routes(Context& c, int n) {
    double worst = 0.0;
    for (int k = 0; k < n; ++k) {
        const CovarianceMatrix g = random_state(2, c.rng);
        const Matrix pt = partial_transpose(g.matrix(), {1});
        const auto a = symplectic_eigenvalues(pt), b = symplectic_eigenvalues_direct(pt),
                   d = two_mode_symplectic_eigenvalues(pt);
        for (int i = 0; i < 2; ++i) {
            worst = std::max({worst, std::abs(a[i] - b[i]) / a[i], std::abs(a[i] - d[i]) / a[i]});
        }
    }
    return worst;
}

double conditioning_order(Context& c, int n) {
    double worst = 0.0;
    for (int k = 0; k < n; ++k) {
        const CovarianceMatrix g = random_state(4, c.rng);
        const auto a = homodyne_condition(homodyne_condition(g, 1, Quadrature::X), 2, Quadrature::P);
        const auto b = homodyne_condition(homodyne_condition(g, 3, Quadrature::P), 1, Quadrature::X);
        const double scale = std::max(1.0, a.matrix().cwiseAbs().maxCoeff());
        worst = std::max(worst, (a.matrix() - b.matrix()).cwiseAbs().maxCoeff() / scale);
    }
    return worst;
}

double pseudo_inverse(Context& c, int n) {
    double worst = 0.0;
    std::normal_distribution<double> nd(0.0, 1.0);
    for (int k = 0; k < n; ++k) {
        Eigen::Matrix2d a;
        a << nd(c.rng), nd(c.rng), nd(c.rng), nd(c.rng);
        if (k % 2 == 0) a.col(1).setZero();  // rank one
        const Eigen::Matrix2d m = a * a.transpose();
        worst = std::max(worst, (m * mp_pseudo_inverse(m) * m - m).cwiseAbs().maxCoeff());
    }
    return worst;
}

double closed_form_pipeline(Context& c, int n) {
    double worst = 0.0;
    for (int k = 0; k < n; ++k) {
        const double v = uniform(c.rng, 1.0, 40.0), tc = uniform(c.rng, 0.5, 1.0);
        const double T1 = uniform(c.rng, 0.05, 1.0), T2 = uniform(c.rng, 0.05, 1.0), eps = uniform(c.rng, 0.0, 1.0);
        const CovarianceMatrix g = distributed_state(config(v, tc, T1, T2, eps));
        worst = std::max({worst, std::abs(pair_ln(g, Pair::First).value - c.ln_xtalk_(v, tc, T1, eps)),
                          std::abs(pair_ln(g, Pair::Second).value - c.ln_xtalk_(v, tc, T2, eps))});
    }
    return worst;
}

double eps_threshold(Context& c, int n) {
    double worst = 0.0;
    for (int k = 0; k < n; ++k) {
        const double tc = uniform(c.rng, 0.7, 0.99);
        const double v = uniform(c.rng, 1.5, 0.9 * v_max(tc, 0.0));
        for (double T : {0.1, 0.5, 0.9}) {
            ScalarProblem p;
            p.objective = [&](double e) {
                return signed_log_negativity(pair_ln(distributed_state(config(v, tc, T, T, e)), Pair::First));
            };
            p.lo = 0.0;
            p.hi = 3.0;
            p.tol = 1e-10;
            worst = std::max(worst, std::abs(find_root(p) - c.eps_max_(tc, v)));
        }
    }
    return worst;
}

double v_threshold(Context& c, int n) {
    double worst = 0.0;
    for (int k = 0; k < n; ++k) {
        const double tc = uniform(c.rng, 0.7, 0.95), T = uniform(c.rng, 0.1, 1.0), eps = uniform(c.rng, 0.0, 0.3);
        const double vm = v_max(tc, eps);
        ScalarProblem p;
        p.objective = [&](double v) {
            return signed_log_negativity(pair_ln(distributed_state(config(v, tc, T, T, eps)), Pair::First));
        };
        p.lo = 1.0 + 0.5 * (vm - 1.0);
        p.hi = 2.0 * vm;
        worst = std::max(worst, std::abs(find_root(p) - vm));
    }
    return worst;
}

double optimal_variance(Context& c, int n) {
    double worst = 0.0;
    for (int k = 0; k < n; ++k) {
        const double tc = uniform(c.rng, 0.5, 0.99), T = uniform(c.rng, 0.05, 1.0), eps = uniform(c.rng, 0.0, tc);
        worst = std::max(worst, std::abs(optimize_v(config(2.0, tc, T, T, eps)).argmax - c.v_opt_(tc, T, eps)));
    }
    return worst;
}

double balanced_restoration(Context& c, int n) {
    double worst = 0.0;
    for (int k = 0; k < n; ++k) {
        const double v = uniform(c.rng, 1.0, 40.0), tc = uniform(c.rng, 0.5, 1.0), T = uniform(c.rng, 0.05, 1.0),
                     eps = uniform(c.rng, 0.0, 1.0);
        const auto fixed = interference_compensate(distributed_state(config(v, tc, T, T, eps)), std::numbers::pi, tc);
        const auto clean = distributed_state(config(v, 1.0, T, T, eps));
        for (auto p : {Pair::First, Pair::Second}) {
            worst = std::max(worst, std::abs(pair_ln(fixed, p).value - pair_ln(clean, p).value));
        }
    }
    return worst;
}

double conditional_matrix(Context& c, int n) {
    double worst = 0.0;
    for (int k = 0; k < n; ++k) {
        const double v = uniform(c.rng, 1.1, 20.0), tc = uniform(c.rng, 0.05, 0.95), T1 = uniform(c.rng, 0.05, 1.0),
                     T2 = uniform(c.rng, 0.05, 1.0), ta = uniform(c.rng, 0.0, 1.0), tb = uniform(c.rng, 0.0, 1.0);
        const Matrix g = feedforward_localize(distributed_state(config(v, tc, T1, T2)), ta, tb).matrix();
        const auto b = c.blocks_(v, tc, T1, T2, ta, tb);
        const double d[] = {g(0, 0) - b.a_x, g(1, 1) - b.a_p, g(2, 2) - b.b_x,
                            g(3, 3) - b.b_p, g(0, 2) - b.c_x, g(1, 3) - b.c_p};
        for (double x : d) worst = std::max(worst, std::abs(x) / v);
    }
    return worst;
}

// Returns the largest amount by which conditioning lowered LN (<= 0 is a pass).
double feedforward_dominance(Context& c, int n) {
    double worst = -INFINITY;
    for (int k = 0; k < n; ++k) {
        const double v = uniform(c.rng, 1.0, 40.0), tc = uniform(c.rng, 0.5, 1.0);
        const auto g = distributed_state(
            config(v, tc, uniform(c.rng, 0.05, 1.0), uniform(c.rng, 0.05, 1.0), uniform(c.rng, 0.0, 1.0)));
        const double before = pair_ln(g, Pair::First).value;
        const double after =
            log_negativity(feedforward_localize(g, uniform(c.rng, 0.0, 1.0), uniform(c.rng, 0.0, 1.0))).value;
        worst = std::max(worst, before - after);
    }
    return n > 0 ? std::max(0.0, worst) : 0.0;
}

double three_mode(Context& c, int n) {
    double worst = 0.0;
    for (int k = 0; k < n; ++k) {
        const double v = uniform(c.rng, 1.0, 20.0), tc = uniform(c.rng, 0.5, 1.0), T = uniform(c.rng, 0.05, 1.0),
                     eps = uniform(c.rng, 0.0, 1.0);
        const CrosstalkModel m{tc, CrosstalkVariant::ThreeMode};
        worst = std::max(worst, std::abs(ln_xtalk(v, m, T, eps) - ln_xtalk(v, tc * tc, T, eps)));
    }
    return worst;
}

double local_invariance(Context& c, int n) {
    double worst = 0.0;
    for (int k = 0; k < n; ++k) {
        const CovarianceMatrix g = random_state(2, c.rng);
        const auto h = apply_map(apply_map(g, phase_shift_map(2, 0, uniform(c.rng, 0.0, 6.3))),
                                 phase_shift_map(2, 1, uniform(c.rng, 0.0, 6.3)));
        worst = std::max(worst, std::abs(log_negativity(g).value - log_negativity(h).value));
    }
    return worst;
}

const std::vector<Check>& checks() {
    static const std::vector<Check> list = {
        {"symplectic spectrum invariant under symplectic maps", 1e-9, all, spectrum_invariance},
        {"spectrum routes agree (stable / direct / two-mode)", 1e-9, all, spectrum_routes},
        {"homodyne conditionings commute", 1e-12, all, conditioning_order},
        {"pseudo-inverse M M+ M = M", 1e-10, all, pseudo_inverse},
        {"closed-form LN equals pipeline (both pairs)", 1e-9, all, closed_form_pipeline},
        {"noise threshold equals eps_max at T in {0.1, 0.5, 0.9}", 1e-6, tenth, eps_threshold},
        {"variance threshold equals v_max", 1e-4, tenth, v_threshold},
        {"optimal variance equals v_opt", 1e-4, tenth, optimal_variance},
        {"balanced channels fully compensated", 1e-10, all, balanced_restoration},
        {"conditional matrix equals closed-form blocks", 1e-10, all, conditional_matrix},
        {"conditioning never lowers LN(A1B1)", 1e-9, all, feedforward_dominance},
        {"three-mode variant is t_c^2 substitution", 0.0, all, three_mode},
        {"LN invariant under local phase shifts", 1e-9, all, local_invariance},
    };
    return list;
}

}  // namespace

const std::vector<std::string>& mutation_names() {
    static const std::vector<std::string> names = {"ln_xtalk", "eps_max", "v_opt", "conditional_blocks"};
    return names;
}

std::vector<CheckResult> run_validation(const ValidateOptions& opt, std::ostream& out) {
    if (!opt.mutate.empty() &&
        std::find(mutation_names().begin(), mutation_names().end(), opt.mutate) == mutation_names().end()) {
        throw std::invalid_argument("unknown mutation '" + opt.mutate + "'");
    }
    if (opt.samples < 0) throw std::invalid_argument("samples must be >= 0");
    if (opt.samples == 0) out << "warning: --samples 0, every check passes trivially\n";

    const char* green = opt.color ? "\033[32m" : "";
    const char* red = opt.color ? "\033[31m" : "";
    const char* reset = opt.color ? "\033[0m" : "";

    std::vector<CheckResult> results;
    int index = 0;
    for (const auto& check : checks()) {
        // Each check draws from its own stream so adding one does not shift the others.
        Context ctx{Rng(opt.seed * 1000003ULL + static_cast<std::uint64_t>(index++)), opt.samples, opt.mutate};
        CheckResult r;
        r.name = check.name;
        r.tolerance = check.tolerance;
        r.samples = check.count(opt.samples);
        try {
            r.worst = check.worst(ctx, r.samples);
            r.passed = r.worst <= r.tolerance;
        } catch (const std::exception& e) {
            r.passed = false;
            r.worst = INFINITY;
            out << "  error in '" << check.name << "': " << e.what() << '\n';
        }
        char line[256];
        std::snprintf(line, sizeof line, "%s%s%s  %-56s worst %.3e  tol %.1e  n=%d", r.passed ? green : red,
                      r.passed ? "PASS" : "FAIL", reset, r.name.c_str(), r.worst, r.tolerance, r.samples);
        out << line << '\n';
        results.push_back(r);
    }
    return results;
}

}  // namespace cvxtalk::cli
