#include <algorithm>
#include <cmath>
#include <functional>
#include <random>
#include <string>

#include "doctest.h"

#include "cvxtalk/closed_forms.hpp"
#include "cvxtalk/errors.hpp"
#include "cvxtalk/optimize.hpp"
#include "cvxtalk/optimize_scenario.hpp"
#include "cvxtalk/scenario.hpp"

using namespace cvxtalk;

namespace {

double db(double x) { return std::pow(10.0, x / 10.0); }

ScenarioConfig make_config(double v, double tc, double T1, double T2, double eps = 0.0) {
    ScenarioConfig c;
    c.v = v;
    c.crosstalk.t_c = tc;
    c.channel = {T1, T2, eps};
    return c;
}

ScalarProblem problem(std::function<double(double)> f, double lo = 0.0, double hi = 1.0) {
    ScalarProblem p;
    p.objective = std::move(f);
    p.lo = lo;
    p.hi = hi;
    return p;
}

}  // namespace

TEST_CASE("maximize_scalar basics") {
    const auto m = maximize_scalar(problem([](double x) { return -(x - 0.3) * (x - 0.3); }));
    CHECK(m.argmax == doctest::Approx(0.3).epsilon(1e-10));
    CHECK(std::abs(m.argmax - 0.3) <= 1e-10);

    // Flat objective: the smaller argument wins.
    CHECK(maximize_scalar(problem([](double) { return 1.0; }, 2.0, 5.0)).argmax == 2.0);

    // Maximum at a bracket end.
    const auto end = maximize_scalar(problem([](double x) { return x; }, -1.0, 3.0));
    CHECK(end.argmax <= 3.0);
    CHECK(end.argmax == doctest::Approx(3.0).epsilon(1e-9));
}

TEST_CASE("maximize_scalar dominates its grid and stays in the bracket") {
    auto f = [](double x) { return std::sin(7.0 * x) + 0.3 * std::cos(23.0 * x); };
    const auto p = problem(f, -1.0, 2.0);
    const auto m = maximize_scalar(p);
    CHECK(m.argmax >= p.lo);
    CHECK(m.argmax <= p.hi);
    const double step = (p.hi - p.lo) / (kCoarseGridPoints - 1);
    for (int k = 0; k < kCoarseGridPoints; ++k) CHECK(m.value >= f(p.lo + k * step));
    CHECK(m.value >= f(p.lo));
    CHECK(m.value >= f(p.hi));

    const auto again = maximize_scalar(p);
    CHECK(again.argmax == m.argmax);
    CHECK(again.value == m.value);
}

TEST_CASE("maximize_scalar errors") {
    CHECK_THROWS_WITH_AS(maximize_scalar(problem([](double x) { return x > 0.5 ? NAN : x; })),
                         doctest::Contains("not finite at x = "), NumericError);
    CHECK_THROWS_AS(maximize_scalar(problem([](double x) { return x; }, 1.0, 1.0)), DomainError);
    ScalarProblem none;
    CHECK_THROWS_AS(maximize_scalar(none), DomainError);
}

TEST_CASE("find_root") {
    CHECK(find_root(problem([](double x) { return x - 0.5; })) == doctest::Approx(0.5).epsilon(1e-10));
    CHECK_THROWS_AS(find_root(problem([](double x) { return x * x + 1.0; })), BracketError);

    // LN(eps) crosses zero at 1 + t_c - (1 - t_c) V.
    auto by_eps = [](double eps) {
        ScenarioConfig c = make_config(5.0, 0.9, 0.5, 0.5, eps);
        return signed_log_negativity(pair_ln(distributed_state(c), Pair::First));
    };
    CHECK(std::abs(find_root(problem(by_eps, 0.0, 3.0)) - 1.4) <= 1e-6);

    auto by_v = [](double v) {
        ScenarioConfig c = make_config(v, 0.9, 0.3, 0.3);
        return signed_log_negativity(pair_ln(distributed_state(c), Pair::First));
    };
    CHECK(std::abs(find_root(problem(by_v, 2.0, 40.0)) - 19.0) <= 1e-4);
}

TEST_CASE("LN vs V peaks at 1/sqrt(1 - t_c) for a perfect channel") {
    auto f = [](double v) { return ln_xtalk(v, 0.99, 1.0, 0.0); };
    const auto m = maximize_scalar(problem(f, 1.0, v_max(0.99, 0.0)));
    CHECK(std::abs(m.argmax - 10.0) <= 1e-4);
}

TEST_CASE("optimize_v") {
    CHECK(std::abs(optimize_v(make_config(2.0, 0.99, 1.0, 1.0)).argmax - 10.0) <= 1e-4);

    std::mt19937_64 rng(71);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int k = 0; k < 20; ++k) {
        const double tc = 0.5 + 0.49 * u(rng);
        const double T = 0.05 + 0.95 * u(rng);
        const double eps = tc * u(rng);
        const auto m = optimize_v(make_config(2.0, tc, T, T, eps));
        CHECK(std::abs(m.argmax - v_opt(tc, T, eps)) <= 1e-4);
    }

    // No entanglement possible: v_max <= 1.
    const auto dead = optimize_v(make_config(2.0, 0.5, 0.5, 0.5, 1.6));
    CHECK(dead.argmax == 1.0);
    CHECK(dead.value == 0.0);
}

TEST_CASE("optimize_tr") {
    for (double tc : {0.8, 0.9, 0.95}) {
        ScenarioConfig c = make_config(5.0, tc, 0.4, 0.4, 0.05);
        c.compensation = InterferenceCompensation{};
        CHECK(std::abs(optimize_tr(c, Pair::First).argmax - tc) <= 1e-8);
        CHECK(std::abs(optimize_tr(c, Pair::Second).argmax - tc) <= 1e-8);
    }

    // Unbalanced channels: the optimum sits between the low- and high-V bounds.
    for (double tc : {0.9, 0.8}) {
        ScenarioConfig c = make_config(5.0, tc, db(-10.0), db(-10.5));
        const auto b = tr_bounds(tc, db(-10.0), db(-10.5));
        const double t = optimize_tr(c, Pair::First).argmax;
        CHECK(t >= std::min(b.low_v, b.high_v) - 1e-6);
        CHECK(t <= std::max(b.low_v, b.high_v) + 1e-6);
    }
}

TEST_CASE("optimize_ta approaches balanced heterodyne in deep loss") {
    ScenarioConfig c = make_config(1e4, 0.9, 1e-4, 1e-4);
    c.compensation = FeedforwardCompensation{};
    CHECK(std::abs(optimize_ta(c).argmax - 0.5) <= 1e-3);
}

TEST_CASE("optimum is stable to +-0.05 in the setting") {
    auto check_stable = [](const std::function<double(double)>& f, double at) {
        const double best = f(at);
        for (double d : {-0.05, 0.05}) {
            const double x = std::clamp(at + d, 0.0, 1.0);
            CHECK(std::abs(f(x) - best) < 0.05 * best);
        }
    };
    for (double tc : {0.9, 0.8}) {
        const ScenarioConfig c = make_config(5.0, tc, db(-10.0), db(-10.5));
        const CovarianceMatrix g = distributed_state(c);
        auto f = [&](double t) { return pair_ln(interference_compensate(g, M_PI, t), Pair::First).value; };
        check_stable(f, optimize_tr(c, Pair::First).argmax);
    }
    for (auto [T1, T2] : {std::pair{db(-0.4), db(-0.5)}, std::pair{db(-10.0), db(-10.5)}}) {
        for (double tc : {0.9, 0.8}) {
            ScenarioConfig c = make_config(5.0, tc, T1, T2);
            c.compensation = FeedforwardCompensation{};
            const CovarianceMatrix g = distributed_state(c);
            auto f = [&](double t) { return log_negativity(feedforward_localize(g, t, 1.0)).value; };
            check_stable(f, optimize_ta(c).argmax);
        }
    }
}
