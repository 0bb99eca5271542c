#include "cvxtalk/cli/figures.hpp"

#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <numbers>
#include <stdexcept>

#include "cvxtalk/cli/config.hpp"
#include "cvxtalk/closed_forms.hpp"
#include "cvxtalk/optimize_scenario.hpp"
#include "cvxtalk/scenario.hpp"

namespace cvxtalk::cli {

namespace {

using oj = nlohmann::ordered_json;

std::vector<double> grid(double lo, double hi, int n) {
    std::vector<double> x(n);
    for (int i = 0; i < n; ++i) x[i] = i == n - 1 ? hi : lo + (hi - lo) * i / (n - 1);
    return x;
}

// "0.99" -> "0p99", for file names.
std::string tag(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%g", x);
    std::string s = buf;
    for (char& c : s) {
        if (c == '.') c = 'p';
        if (c == '-') c = 'm';
    }
    return s;
}

ScenarioConfig config(double v, double tc, double T1, double T2, double eps = 0.0) {
    ScenarioConfig c;
    c.v = v;
    c.crosstalk.t_c = tc;
    c.channel = {T1, T2, eps};
    return c;
}

double plain_ln(const ScenarioConfig& c, Pair p) { return pair_ln(distributed_state(c), p).value; }

double interference_opt_ln(const ScenarioConfig& c, Pair p) { return optimize_tr(c, p).value; }

double feedforward_ln(const ScenarioConfig& c, double t_a) {
    return log_negativity(feedforward_localize(distributed_state(c), t_a, 1.0)).value;
}

double feedforward_opt_ln(const ScenarioConfig& c) { return optimize_ta(c).value; }

// Best uncompensated LN over V for the pair's own channel.
double vopt_ln(double tc, double T, double eps = 0.0) {
    if (tc == 1.0) return ln_no_xtalk_asymptote(T, eps);
    return ln_xtalk(v_opt(tc, T, eps), tc, T, eps);
}

Curve make_curve(const std::string& fig, const std::string& name, const oj& params, SweepTable t) {
    t.meta = oj{{"tool", kToolVersion}, {"figure", fig}, {"curve", name}, {"params", params}};
    return {name, std::move(t)};
}

std::vector<double> constant(double y, std::size_t n) { return std::vector<double>(n, y); }

const double kTcFig2[] = {1.0, 0.99, 0.95, 0.9};

std::vector<Curve> fig2_left() {
    std::vector<Curve> out;
    const double T = 0.9;
    const auto ln0 = grid(0.05, 6.0, 120);
    for (double tc : kTcFig2) {
        std::vector<double> v, pipe, closed;
        for (double l : ln0) {
            const double var = variance_for_ln(l);
            v.push_back(var);
            pipe.push_back(plain_ln(config(var, tc, T, T), Pair::First));
            closed.push_back(ln_xtalk(var, tc, T, 0.0));
        }
        SweepTable t;
        t.add_column("ln0", ln0);
        t.add_column("ln", pipe);
        t.add_column("ln_closed_form", closed);
        t.add_column("v", v);
        const double vo = tc < 1.0 ? v_opt(tc, T, 0.0) : kDivergent;
        out.push_back(make_curve("fig2_left", "tc" + tag(tc),
                                 {{"t_c", tc}, {"T1", T}, {"T2", T}, {"eps", 0.0}, {"v_opt", format_value(vo)}},
                                 std::move(t)));
    }
    return out;
}

std::vector<Curve> fig2_right() {
    std::vector<Curve> out;
    const double T = 0.9, v = 5.0;
    const auto eps = grid(0.0, 2.1, 106);
    for (double tc : kTcFig2) {
        std::vector<double> pipe, closed;
        for (double e : eps) {
            pipe.push_back(plain_ln(config(v, tc, T, T, e), Pair::First));
            closed.push_back(ln_xtalk(v, tc, T, e));
        }
        SweepTable t;
        t.add_column("eps", eps);
        t.add_column("ln", pipe);
        t.add_column("ln_closed_form", closed);
        out.push_back(make_curve("fig2_right", "tc" + tag(tc),
                                 {{"t_c", tc}, {"v", v}, {"T1", T}, {"T2", T}, {"eps_max", eps_max(tc, v)}},
                                 std::move(t)));
    }
    return out;
}

std::vector<Curve> fig3(const std::string& id, double tc_lo) {
    std::vector<Curve> out;
    const double T = 0.1;
    const auto tc = grid(tc_lo, 0.999, 100);
    for (double e : {0.0, 0.05, 0.1}) {
        std::vector<double> exact, vo, dashed, dotted;
        for (double t : tc) {
            const double v = v_opt(t, T, e);
            vo.push_back(v);
            exact.push_back(plain_ln(config(v, t, T, T, e), Pair::First));
            dashed.push_back(approx::ln_opt_strong_loss(t, T, e));
            dotted.push_back(approx::ln_opt_weak_xtalk_strong_loss(t, T, e));
        }
        const oj params{{"T1", T}, {"T2", T}, {"eps", e}};
        SweepTable a;
        a.add_column("t_c", tc);
        a.add_column("ln", exact);
        a.add_column("v_opt", vo);
        out.push_back(make_curve(id, "exact_eps" + tag(e), params, std::move(a)));
        SweepTable b;
        b.add_column("t_c", tc);
        b.add_column("ln", dashed);
        out.push_back(make_curve(id, "strong_loss_eps" + tag(e), params, std::move(b)));
        SweepTable c;
        c.add_column("t_c", tc);
        c.add_column("ln", dotted);
        out.push_back(make_curve(id, "weak_xtalk_strong_loss_eps" + tag(e), params, std::move(c)));
    }
    return out;
}

std::vector<Curve> fig5(const std::string& id, Pair pair) {
    std::vector<Curve> out;
    const double v = 5.0, T1 = from_db(-10.0), T2 = from_db(-10.5);
    const double T_own = pair == Pair::First ? T1 : T2;
    const auto tr = grid(0.0, 1.0, 101);
    const int p = static_cast<int>(pair);
    {
        const double clean = plain_ln(config(v, 1.0, T1, T2), pair);
        SweepTable t;
        t.add_column("t_r", tr);
        t.add_column("ln", constant(clean, tr.size()));
        out.push_back(make_curve(id, "no_xtalk", {{"v", v}, {"T1", T1}, {"T2", T2}, {"pair", p}}, std::move(t)));
    }
    for (double tc : {0.9, 0.8}) {
        const CovarianceMatrix g = distributed_state(config(v, tc, T1, T2));
        std::vector<double> ln;
        for (double t : tr) ln.push_back(pair_ln(interference_compensate(g, std::numbers::pi, t), pair).value);
        const auto b = tr_bounds(tc, T1, T2, pair);
        const auto best = optimize_tr(config(v, tc, T1, T2), pair);
        const oj params{{"v", v},
                        {"t_c", tc},
                        {"T1", T1},
                        {"T2", T2},
                        {"pair", p},
                        {"tr_low_v", b.low_v},
                        {"tr_high_v", b.high_v},
                        {"argmax_t_r", best.argmax}};
        SweepTable t;
        t.add_column("t_r", tr);
        t.add_column("ln", ln);
        out.push_back(make_curve(id, "interference_tc" + tag(tc), params, std::move(t)));
        SweepTable base;
        base.add_column("t_r", tr);
        base.add_column("ln", constant(vopt_ln(tc, T_own), tr.size()));
        out.push_back(make_curve(id, "vopt_tc" + tag(tc), {{"t_c", tc}, {"T", T_own}}, std::move(base)));
    }
    return out;
}

std::vector<Curve> fig6(const std::string& id, double T1_db, double T2_db) {
    std::vector<Curve> out;
    const double v = 5.0, T1 = from_db(T1_db), T2 = from_db(T2_db);
    const auto ta = grid(0.0, 1.0, 101);
    for (double tc : {0.9, 0.8}) {
        const CovarianceMatrix g = distributed_state(config(v, tc, T1, T2));
        std::vector<double> ln;
        for (double t : ta) ln.push_back(log_negativity(feedforward_localize(g, t, 1.0)).value);
        const oj params{{"v", v}, {"t_c", tc}, {"T1", T1}, {"T2", T2}, {"t_b", 1.0}};
        SweepTable t;
        t.add_column("t_a", ta);
        t.add_column("ln", ln);
        out.push_back(make_curve(id, "feedforward_tc" + tag(tc), params, std::move(t)));
        SweepTable base;
        base.add_column("t_a", ta);
        base.add_column("ln", constant(vopt_ln(tc, T1), ta.size()));
        out.push_back(make_curve(id, "vopt_tc" + tag(tc), {{"t_c", tc}, {"T", T1}}, std::move(base)));
    }
    return out;
}

std::vector<Curve> fig7(const std::string& id, double T1_db, double T2_db) {
    std::vector<Curve> out;
    const double tc = 0.9, T1 = from_db(T1_db), T2 = from_db(T2_db);
    const auto ln0 = grid(0.5, 8.0, 31);
    const oj params{{"t_c", tc}, {"T1", T1}, {"T2", T2}, {"eps", 0.0}};
    std::vector<double> clean, interf, interf_inf, hom, het, ff_opt;
    const double tr_inf = tr_bounds(tc, T1, T2).high_v;
    for (double l : ln0) {
        const double v = variance_for_ln(l);
        const ScenarioConfig c = config(v, tc, T1, T2);
        clean.push_back(plain_ln(config(v, 1.0, T1, T2), Pair::First));
        interf.push_back(interference_opt_ln(c, Pair::First));
        interf_inf.push_back(pair_ln(interference_compensate(distributed_state(c), std::numbers::pi, tr_inf), Pair::First).value);
        hom.push_back(feedforward_ln(c, 0.0));
        het.push_back(feedforward_ln(c, 0.5));
        ff_opt.push_back(feedforward_opt_ln(c));
    }
    auto add = [&](const std::string& name, const std::vector<double>& y) {
        SweepTable t;
        t.add_column("ln0", ln0);
        t.add_column("ln", y);
        out.push_back(make_curve(id, name, params, std::move(t)));
    };
    add("no_xtalk", clean);
    add("interference", interf);
    add("interference_tr_high_v", interf_inf);
    add("feedforward_hom", hom);
    add("feedforward_het", het);
    add("feedforward_opt", ff_opt);
    add("asymptote_no_xtalk", constant(ln_no_xtalk_asymptote(T1, 0.0), ln0.size()));
    add("asymptote_interference", constant(ln_interference_asymptote(tc, T1, T2), ln0.size()));
    add("asymptote_hom", constant(ln_hom_asymptote(tc, T1, T2), ln0.size()));
    add("asymptote_het", constant(ln_het_asymptote(tc, T1, T2), ln0.size()));
    return out;
}

std::vector<Curve> fig8() {
    std::vector<Curve> out;
    const double ln0 = 4.0, tc = 0.8, ratio = 1.2;
    const double v = variance_for_ln(ln0);
    const auto t2 = grid(0.05, 1.0 / ratio, 60);
    std::vector<double> p1, p2, ff;
    for (double T2 : t2) {
        const ScenarioConfig c = config(v, tc, ratio * T2, T2);
        p1.push_back(interference_opt_ln(c, Pair::First));
        p2.push_back(interference_opt_ln(c, Pair::Second));
        ff.push_back(feedforward_opt_ln(c));
    }
    const oj params{{"ln0", ln0}, {"t_c", tc}, {"T1_over_T2", ratio}, {"eps", 0.0}};
    auto add = [&](const std::string& name, const std::vector<double>& y) {
        SweepTable t;
        t.add_column("T2", t2);
        t.add_column("ln", y);
        out.push_back(make_curve("fig8", name, params, std::move(t)));
    };
    add("interference_pair1", p1);
    add("interference_pair2", p2);
    add("feedforward", ff);
    return out;
}

struct Entry {
    std::string description;
    std::function<std::vector<Curve>()> build;
};

const std::map<std::string, Entry>& registry() {
    static const std::map<std::string, Entry> r = {
        {"fig2_left", {"LN(A1B1) vs LN0, T=0.9, eps=0, t_c in {1, 0.99, 0.95, 0.9}", fig2_left}},
        {"fig2_right", {"LN(A1B1) vs eps, V=5, T=0.9, t_c in {1, 0.99, 0.95, 0.9}", fig2_right}},
        {"fig3_left", {"LN at V_opt vs t_c in [0.9, 0.999], T=0.1, eps in {0, 0.05, 0.1}", [] { return fig3("fig3_left", 0.9); }}},
        {"fig3_right", {"LN at V_opt vs t_c in [0.5, 0.999], T=0.1, eps in {0, 0.05, 0.1}", [] { return fig3("fig3_right", 0.5); }}},
        {"fig5_left", {"LN(A1B1) vs t_r, V=5, T1=-10 dB, T2=-10.5 dB", [] { return fig5("fig5_left", Pair::First); }}},
        {"fig5_right", {"LN(A2B2) vs t_r, V=5, T1=-10 dB, T2=-10.5 dB", [] { return fig5("fig5_right", Pair::Second); }}},
        {"fig6_left", {"conditional LN(A1B1) vs t_A, V=5, T1=-0.4 dB, T2=-0.5 dB", [] { return fig6("fig6_left", -0.4, -0.5); }}},
        {"fig6_right", {"conditional LN(A1B1) vs t_A, V=5, T1=-10 dB, T2=-10.5 dB", [] { return fig6("fig6_right", -10.0, -10.5); }}},
        {"fig7_left", {"methods vs LN0, t_c=0.9, T1=-0.4 dB, T2=-0.5 dB", [] { return fig7("fig7_left", -0.4, -0.5); }}},
        {"fig7_right", {"methods vs LN0, t_c=0.9, T1=-9 dB, T2=-10 dB", [] { return fig7("fig7_right", -9.0, -10.0); }}},
        {"fig8", {"methods vs T2, LN0=4, t_c=0.8, T1/T2=1.2", fig8}},
    };
    return r;
}

}  // namespace

const std::vector<std::string>& figure_ids() {
    static const std::vector<std::string> ids = {"fig2_left",  "fig2_right", "fig3_left", "fig3_right",
                                                 "fig5_left",  "fig5_right", "fig6_left", "fig6_right",
                                                 "fig7_left",  "fig7_right", "fig8"};
    return ids;
}

bool is_figure_id(const std::string& id) { return registry().count(id) != 0; }

std::string figure_description(const std::string& id) {
    const auto it = registry().find(id);
    if (it == registry().end()) throw std::invalid_argument("unknown figure '" + id + "'");
    return it->second.description;
}

std::vector<Curve> build_figure(const std::string& id) {
    const auto it = registry().find(id);
    if (it == registry().end()) throw std::invalid_argument("unknown figure '" + id + "'");
    return it->second.build();
}

}  // namespace cvxtalk::cli
