#include "cvxtalk/optimize.hpp"

#include <cmath>
#include <cstdio>
#include <string>

#include "cvxtalk/errors.hpp"

namespace cvxtalk {

namespace {

std::string fmt_double(double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

double eval_checked(const ScalarProblem& p, double x) {
    const double y = p.objective(x);
    if (!std::isfinite(y)) {
        throw NumericError("objective is not finite at x = " + fmt_double(x) + " (value " + fmt_double(y) + ")");
    }
    return y;
}

// Strictly better, or equal at a smaller argument.
bool better(double y, double x, double best_y, double best_x) {
    return y > best_y || (y == best_y && x < best_x);
}

}  // namespace

void ScalarProblem::validate() const {
    if (!objective) throw DomainError("ScalarProblem: no objective");
    if (!(lo < hi) || !std::isfinite(lo) || !std::isfinite(hi)) {
        throw DomainError("ScalarProblem: need finite lo < hi, got [" + fmt_double(lo) + ", " + fmt_double(hi) + "]");
    }
    if (!(tol > 0.0)) throw DomainError("ScalarProblem: tol must be positive");
    if (max_iter <= 0) throw DomainError("ScalarProblem: max_iter must be positive");
}

ScalarMaximum maximize_scalar(const ScalarProblem& p) {
    p.validate();
    const int n = kCoarseGridPoints;
    const double step = (p.hi - p.lo) / (n - 1);
    auto grid_x = [&](int k) { return k == n - 1 ? p.hi : p.lo + k * step; };

    int best_k = 0;
    ScalarMaximum best{grid_x(0), eval_checked(p, grid_x(0))};
    for (int k = 1; k < n; ++k) {
        const double x = grid_x(k);
        const double y = eval_checked(p, x);
        if (y > best.value) {
            best = {x, y};
            best_k = k;
        }
    }

    // Golden-section refinement over the two cells adjacent to the best grid point.
    constexpr double kInvPhi = 0.6180339887498949;
    double a = grid_x(best_k > 0 ? best_k - 1 : 0);
    double b = grid_x(best_k < n - 1 ? best_k + 1 : n - 1);
    double c = b - kInvPhi * (b - a);
    double d = a + kInvPhi * (b - a);
    double fc = eval_checked(p, c);
    double fd = eval_checked(p, d);
    for (int it = 0; it < p.max_iter && (b - a) > p.tol; ++it) {
        if (fc >= fd) {
            if (better(fc, c, best.value, best.argmax)) best = {c, fc};
            b = d;
            d = c;
            fd = fc;
            c = b - kInvPhi * (b - a);
            fc = eval_checked(p, c);
        } else {
            if (better(fd, d, best.value, best.argmax)) best = {d, fd};
            a = c;
            c = d;
            fc = fd;
            d = a + kInvPhi * (b - a);
            fd = eval_checked(p, d);
        }
    }
    const double mid = 0.5 * (a + b);
    const double fmid = eval_checked(p, mid);
    if (better(fmid, mid, best.value, best.argmax)) best = {mid, fmid};
    if (better(fc, c, best.value, best.argmax)) best = {c, fc};
    if (better(fd, d, best.value, best.argmax)) best = {d, fd};
    return best;
}

double find_root(const ScalarProblem& p) {
    p.validate();
    double a = p.lo;
    double b = p.hi;
    double fa = eval_checked(p, a);
    const double fb = eval_checked(p, b);
    if (fa == 0.0) return a;
    if (fb == 0.0) return b;
    if ((fa > 0.0) == (fb > 0.0)) {
        throw BracketError("find_root: no sign change on [" + fmt_double(a) + ", " + fmt_double(b) +
                           "] (f(lo) = " + fmt_double(fa) + ", f(hi) = " + fmt_double(fb) + ")");
    }
    for (int it = 0; it < p.max_iter && (b - a) > p.tol; ++it) {
        const double m = 0.5 * (a + b);
        const double fm = eval_checked(p, m);
        if (fm == 0.0) return m;
        if ((fm > 0.0) == (fa > 0.0)) {
            a = m;
            fa = fm;
        } else {
            b = m;
        }
    }
    return 0.5 * (a + b);
}

}  // namespace cvxtalk
