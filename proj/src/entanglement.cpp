#include "cvxtalk/entanglement.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "cvxtalk/errors.hpp"

namespace cvxtalk {

Bipartition::Bipartition(int n_modes, std::vector<int> party_a, std::vector<int> party_b)
    : n_modes_(n_modes), party_a_(std::move(party_a)), party_b_(std::move(party_b)) {
    if (party_a_.empty() || party_b_.empty()) {
        throw IndexError("Bipartition: both parties must be nonempty");
    }
    std::vector<int> seen(n_modes_, 0);
    for (const auto* party : {&party_a_, &party_b_}) {
        for (int m : *party) {
            if (m < 0 || m >= n_modes_) {
                throw IndexError("Bipartition: mode " + std::to_string(m) + " out of range");
            }
            if (seen[m]++ != 0) {
                throw IndexError("Bipartition: mode " + std::to_string(m) + " assigned twice");
            }
        }
    }
    if (std::find(seen.begin(), seen.end(), 0) != seen.end()) {
        throw IndexError("Bipartition: parties do not cover all modes");
    }
}

Bipartition Bipartition::pair() { return Bipartition(2, {0}, {1}); }

Matrix partial_transpose(const Matrix& gamma, const std::vector<int>& subset) {
    const int n = static_cast<int>(gamma.rows() / 2);
    Matrix out = gamma;
    for (int m : subset) {
        if (m < 0 || m >= n) {
            throw IndexError("partial_transpose: mode " + std::to_string(m) + " out of range");
        }
        out.row(2 * m + 1) *= -1.0;
        out.col(2 * m + 1) *= -1.0;
    }
    return out;
}

LnValue log_negativity(const CovarianceMatrix& gamma, const Bipartition& cut) {
    if (cut.n_modes() != gamma.n_modes()) {
        throw DimensionError("log_negativity: bipartition is for " + std::to_string(cut.n_modes()) +
                             " modes, state has " + std::to_string(gamma.n_modes()));
    }
    const auto nu = symplectic_eigenvalues(partial_transpose(gamma.matrix(), cut.party_b()));
    LnValue out;
    out.nu_min = nu.front();
    for (double v : nu) {
        if (v < kEntanglementThreshold) {
            out.value += -std::log2(v);
        }
    }
    return out;
}

LnValue log_negativity(const CovarianceMatrix& gamma) {
    return log_negativity(gamma, Bipartition::pair());
}

double signed_log_negativity(const LnValue& ln) { return -std::log2(ln.nu_min); }

double initial_ln(double v) {
    if (!(v >= 1.0) || !std::isfinite(v)) {
        throw DomainError("initial_ln: V = " + std::to_string(v) + " (need V >= 1)");
    }
    // (V - sqrt(V^2-1))^2 = 2V^2 - 1 - 2V sqrt(V^2-1), so LN0 = acosh(V) / ln 2.
    return std::acosh(v) / std::numbers::ln2;
}

double variance_for_ln(double ln0) {
    if (!(ln0 >= 0.0) || !std::isfinite(ln0)) {
        throw DomainError("variance_for_ln: LN0 = " + std::to_string(ln0) + " (need LN0 >= 0)");
    }
    return std::cosh(ln0 * std::numbers::ln2);
}

}  // namespace cvxtalk
