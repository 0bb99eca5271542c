#pragma once

#include <vector>

#include "cvxtalk/gaussian.hpp"

namespace cvxtalk {

/// Split of the modes of a state into two nonempty, disjoint, exhaustive parties.
class Bipartition {
public:
    /// Throws IndexError if the parties overlap, miss a mode or are empty.
    Bipartition(int n_modes, std::vector<int> party_a, std::vector<int> party_b);

    /// {0} | {1}, the usual cut for a two-mode state.
    static Bipartition pair();

    int n_modes() const { return n_modes_; }
    const std::vector<int>& party_a() const { return party_a_; }
    const std::vector<int>& party_b() const { return party_b_; }

private:
    int n_modes_;
    std::vector<int> party_a_;
    std::vector<int> party_b_;
};

struct LnValue {
    double value = 0.0;    // bits
    double nu_min = 1.0;   // smallest symplectic eigenvalue of the partial transpose
};

/// PT symplectic eigenvalues at or above this are treated as 1 (no entanglement).
inline constexpr double kEntanglementThreshold = 1.0 - 1e-12;

/// Negates the p rows and columns of every mode in `subset`.
Matrix partial_transpose(const Matrix& gamma, const std::vector<int>& subset);

/// sum_k max(0, -log2 nu_k) over the spectrum of the partial transpose w.r.t. party_b.
LnValue log_negativity(const CovarianceMatrix& gamma, const Bipartition& cut);
LnValue log_negativity(const CovarianceMatrix& gamma);  // two-mode state, cut {0}|{1}

/// -log2(nu_min) without the clamp at zero; changes sign where entanglement is lost.
double signed_log_negativity(const LnValue& ln);

/// Logarithmic negativity of a TMSV with variance V: -1/2 log2(2V^2 - 1 - 2V sqrt(V^2 - 1)).
double initial_ln(double v);

/// Inverse of initial_ln: V = cosh(LN0 * ln 2).
double variance_for_ln(double ln0);

}  // namespace cvxtalk
