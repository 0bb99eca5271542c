#pragma once

#include <functional>

namespace cvxtalk {

/// One-dimensional problem on the bracket [lo, hi].
struct ScalarProblem {
    std::function<double(double)> objective;
    double lo = 0.0;
    double hi = 1.0;
    double tol = 1e-10;  // absolute, on the argument
    int max_iter = 200;

    void validate() const;  // throws DomainError
};

struct ScalarMaximum {
    double argmax = 0.0;
    double value = 0.0;
};

inline constexpr int kCoarseGridPoints = 64;

/// Best of a 64-point grid over [lo, hi], refined by golden-section search in the
/// neighbouring grid cells. Ties go to the smaller argument. Throws NumericError
/// on a non-finite objective value.
ScalarMaximum maximize_scalar(const ScalarProblem& p);

/// Bisection root of a sign-changing objective. Throws BracketError when
/// objective(lo) and objective(hi) have the same sign.
double find_root(const ScalarProblem& p);

}  // namespace cvxtalk

