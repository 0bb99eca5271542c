#include "cvxtalk/gaussian.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <string>

#include "cvxtalk/errors.hpp"

namespace cvxtalk {

namespace {

void check_mode(int n_modes, int mode, const char* what) {
    if (mode < 0 || mode >= n_modes) {
        throw IndexError(std::string(what) + ": mode " + std::to_string(mode) +
                         " out of range for " + std::to_string(n_modes) + "-mode state");
    }
}

void check_square_even(const Matrix& m, const char* what) {
    if (m.rows() != m.cols() || m.rows() == 0 || m.rows() % 2 != 0) {
        throw DimensionError(std::string(what) + ": expected a non-empty 2N x 2N matrix, got " +
                             std::to_string(m.rows()) + "x" + std::to_string(m.cols()));
    }
}

}  // namespace

Matrix symplectic_form(int n_modes) {
    Matrix omega = Matrix::Zero(2 * n_modes, 2 * n_modes);
    for (int k = 0; k < n_modes; ++k) {
        omega(2 * k, 2 * k + 1) = 1.0;
        omega(2 * k + 1, 2 * k) = -1.0;
    }
    return omega;
}

double physicality_margin(const Matrix& gamma) {
    const int n = static_cast<int>(gamma.rows() / 2);
    Eigen::MatrixXcd h = gamma.cast<std::complex<double>>();
    h += std::complex<double>(0.0, 1.0) * symplectic_form(n).cast<std::complex<double>>();
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(h, Eigen::EigenvaluesOnly);
    if (solver.info() != Eigen::Success) {
        throw NumericError("physicality check: eigensolver did not converge");
    }
    return solver.eigenvalues().minCoeff();
}

// ---------------------------------------------------------------------------
// CovarianceMatrix / SymplecticMap

CovarianceMatrix::CovarianceMatrix(Matrix data) {
    check_square_even(data, "CovarianceMatrix");
    if (!data.allFinite()) {
        throw DomainError("CovarianceMatrix: non-finite entry");
    }
    const double scale = std::max(1.0, data.cwiseAbs().maxCoeff());
    const double asym = (data - data.transpose()).cwiseAbs().maxCoeff();
    if (asym > kSymmetryTol * scale) {
        throw DomainError("CovarianceMatrix: not symmetric (max |g - g^T| = " + std::to_string(asym) +
                          ")");
    }
    data_ = 0.5 * (data + data.transpose());
    const double margin = physicality_margin(data_);
    if (margin < -kPhysicalityTol) {
        throw DomainError("CovarianceMatrix: unphysical, min eig(g + i Omega) = " +
                          std::to_string(margin));
    }
}

CovarianceMatrix CovarianceMatrix::vacuum(int n_modes) {
    if (n_modes <= 0) {
        throw DimensionError("vacuum: n_modes must be positive");
    }
    return CovarianceMatrix(Matrix::Identity(2 * n_modes, 2 * n_modes));
}

Eigen::Matrix2d CovarianceMatrix::block(int i, int j) const {
    check_mode(n_modes(), i, "block");
    check_mode(n_modes(), j, "block");
    return data_.block<2, 2>(2 * i, 2 * j);
}

SymplecticMap::SymplecticMap(Matrix data) {
    check_square_even(data, "SymplecticMap");
    const Matrix omega = symplectic_form(static_cast<int>(data.rows() / 2));
    const Matrix defect = data * omega * data.transpose() - omega;
    // Row-sum (infinity) norm.
    const double err = defect.cwiseAbs().rowwise().sum().maxCoeff();
    if (!(err <= kSymplecticTol)) {
        throw DomainError("SymplecticMap: ||S Omega S^T - Omega||_inf = " + std::to_string(err));
    }
    data_ = std::move(data);
}

SymplecticMap SymplecticMap::identity(int n_modes) {
    if (n_modes <= 0) {
        throw DimensionError("identity: n_modes must be positive");
    }
    return SymplecticMap(Matrix::Identity(2 * n_modes, 2 * n_modes));
}

SymplecticMap SymplecticMap::operator*(const SymplecticMap& rhs) const {
    if (rhs.n_modes() != n_modes()) {
        throw DimensionError("SymplecticMap composition: mode count mismatch");
    }
    return SymplecticMap(data_ * rhs.data_);
}

// ---------------------------------------------------------------------------
// States, maps and channels

CovarianceMatrix tmsv_pair(double v) {
    if (!(v >= 1.0) || !std::isfinite(v)) {
        throw DomainError("tmsv_pair: unphysical variance V = " + std::to_string(v) + " (need V >= 1)");
    }
    const double c = std::sqrt(v * v - 1.0);
    Matrix g(4, 4);
    g << v, 0, c, 0,
         0, v, 0, -c,
         c, 0, v, 0,
         0, -c, 0, v;
    return CovarianceMatrix(std::move(g));
}

CovarianceMatrix tensor(const CovarianceMatrix& a, const CovarianceMatrix& b) {
    const auto na = a.matrix().rows();
    const auto nb = b.matrix().rows();
    Matrix g = Matrix::Zero(na + nb, na + nb);
    g.topLeftCorner(na, na) = a.matrix();
    g.bottomRightCorner(nb, nb) = b.matrix();
    return CovarianceMatrix(std::move(g));
}

SymplecticMap beam_splitter_map(int n_modes, int i, int j, double t) {
    check_mode(n_modes, i, "beam_splitter_map");
    check_mode(n_modes, j, "beam_splitter_map");
    if (i == j) {
        throw IndexError("beam_splitter_map: modes must differ");
    }
    if (!(t >= 0.0 && t <= 1.0)) {
        throw DomainError("beam_splitter_map: transmittance " + std::to_string(t) + " outside [0, 1]");
    }
    const double st = std::sqrt(t);
    const double sr = std::sqrt(1.0 - t);
    Matrix s = Matrix::Identity(2 * n_modes, 2 * n_modes);
    for (int q = 0; q < 2; ++q) {
        const int a = 2 * i + q;
        const int b = 2 * j + q;
        s(a, a) = st;
        s(a, b) = sr;
        s(b, a) = -sr;
        s(b, b) = st;
    }
    return SymplecticMap(std::move(s));
}

SymplecticMap phase_shift_map(int n_modes, int i, double phi) {
    check_mode(n_modes, i, "phase_shift_map");
    Matrix s = Matrix::Identity(2 * n_modes, 2 * n_modes);
    const double c = std::cos(phi);
    const double sn = std::sin(phi);
    s(2 * i, 2 * i) = c;
    s(2 * i, 2 * i + 1) = -sn;
    s(2 * i + 1, 2 * i) = sn;
    s(2 * i + 1, 2 * i + 1) = c;
    return SymplecticMap(std::move(s));
}

CovarianceMatrix apply_map(const CovarianceMatrix& gamma, const SymplecticMap& map) {
    if (gamma.n_modes() != map.n_modes()) {
        throw DimensionError("apply_map: state has " + std::to_string(gamma.n_modes()) +
                             " modes, map acts on " + std::to_string(map.n_modes()));
    }
    const Matrix& s = map.matrix();
    Matrix g = s * gamma.matrix() * s.transpose();
    return CovarianceMatrix(0.5 * (g + g.transpose()));
}

CovarianceMatrix lossy_noisy_channel(const CovarianceMatrix& gamma, int mode, double transmittance,
                                     double excess_noise) {
    check_mode(gamma.n_modes(), mode, "lossy_noisy_channel");
    if (!(transmittance > 0.0 && transmittance <= 1.0)) {
        throw DomainError("lossy_noisy_channel: transmittance " + std::to_string(transmittance) +
                          " outside (0, 1]");
    }
    if (!(excess_noise >= 0.0) || !std::isfinite(excess_noise)) {
        throw DomainError("lossy_noisy_channel: excess noise must be >= 0");
    }
    Matrix g = gamma.matrix();
    const double k = std::sqrt(transmittance);
    g.middleRows(2 * mode, 2) *= k;
    g.middleCols(2 * mode, 2) *= k;
    const double added = 1.0 - transmittance + transmittance * excess_noise;
    g(2 * mode, 2 * mode) += added;
    g(2 * mode + 1, 2 * mode + 1) += added;
    return CovarianceMatrix(std::move(g));
}

CovarianceMatrix reduce(const CovarianceMatrix& gamma, const std::vector<int>& modes) {
    if (modes.empty()) {
        throw IndexError("reduce: empty mode subset");
    }
    std::vector<int> seen;
    for (int m : modes) {
        check_mode(gamma.n_modes(), m, "reduce");
        if (std::find(seen.begin(), seen.end(), m) != seen.end()) {
            throw IndexError("reduce: mode " + std::to_string(m) + " listed twice");
        }
        seen.push_back(m);
    }
    const auto n = static_cast<Eigen::Index>(modes.size());
    Matrix g(2 * n, 2 * n);
    for (Eigen::Index a = 0; a < n; ++a) {
        for (Eigen::Index b = 0; b < n; ++b) {
            g.block<2, 2>(2 * a, 2 * b) = gamma.matrix().block<2, 2>(2 * modes[a], 2 * modes[b]);
        }
    }
    return CovarianceMatrix(std::move(g));
}

// ---------------------------------------------------------------------------
// Symplectic spectra

std::vector<double> symplectic_eigenvalues(const Matrix& gamma) {
    check_square_even(gamma, "symplectic_eigenvalues");
    const int n = static_cast<int>(gamma.rows() / 2);
    Eigen::LLT<Matrix> llt(0.5 * (gamma + gamma.transpose()));
    if (llt.info() != Eigen::Success) {
        throw NumericError("symplectic_eigenvalues: matrix is not positive definite");
    }
    const Matrix l = llt.matrixL();
    const Matrix k = l.transpose() * symplectic_form(n) * l;
    Eigen::JacobiSVD<Matrix> svd(k);
    const Eigen::VectorXd s = svd.singularValues();  // descending, each value twice
    std::vector<double> nu(n);
    for (int i = 0; i < n; ++i) {
        nu[i] = 0.5 * (s(2 * i) + s(2 * i + 1));
    }
    std::sort(nu.begin(), nu.end());
    return nu;
}

std::vector<double> symplectic_eigenvalues(const CovarianceMatrix& gamma) {
    return symplectic_eigenvalues(gamma.matrix());
}

std::vector<double> symplectic_eigenvalues_direct(const Matrix& gamma) {
    check_square_even(gamma, "symplectic_eigenvalues_direct");
    const int n = static_cast<int>(gamma.rows() / 2);
    const Eigen::MatrixXcd m =
        std::complex<double>(0.0, 1.0) * (symplectic_form(n) * gamma).cast<std::complex<double>>();
    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> solver(m, false);
    if (solver.info() != Eigen::Success) {
        throw NumericError("symplectic_eigenvalues_direct: eigensolver did not converge");
    }
    std::vector<double> mags;
    for (Eigen::Index i = 0; i < solver.eigenvalues().size(); ++i) {
        mags.push_back(std::abs(solver.eigenvalues()(i)));
    }
    std::sort(mags.begin(), mags.end());
    std::vector<double> nu;
    for (std::size_t i = 0; i + 1 < mags.size(); i += 2) {
        const double tol = 1e-9 * std::max(1.0, mags[i + 1]);
        if (mags[i + 1] - mags[i] > tol) {
            throw NumericError("symplectic_eigenvalues_direct: unpaired eigenvalue magnitudes");
        }
        nu.push_back(0.5 * (mags[i] + mags[i + 1]));
    }
    return nu;
}

std::vector<double> two_mode_symplectic_eigenvalues(const Matrix& gamma) {
    if (gamma.rows() != 4 || gamma.cols() != 4) {
        throw DimensionError("two_mode_symplectic_eigenvalues: expected a 4x4 matrix");
    }
    const double delta = gamma.block<2, 2>(0, 0).determinant() + gamma.block<2, 2>(2, 2).determinant() +
                         2.0 * gamma.block<2, 2>(0, 2).determinant();
    const double det = gamma.determinant();
    const double disc = std::sqrt(std::max(0.0, delta * delta - 4.0 * det));
    const double plus2 = 0.5 * (delta + disc);
    const double minus2 = plus2 > 0.0 ? det / plus2 : 0.0;
    return {std::sqrt(std::max(0.0, minus2)), std::sqrt(std::max(0.0, plus2))};
}

// ---------------------------------------------------------------------------
// Measurement

Eigen::Matrix2d mp_pseudo_inverse(const Eigen::Matrix2d& m) {
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix2d> solver(0.5 * (m + m.transpose()));
    const Eigen::Vector2d lambda = solver.eigenvalues();
    const double largest = lambda.cwiseAbs().maxCoeff();
    Eigen::Vector2d inv = Eigen::Vector2d::Zero();
    for (int k = 0; k < 2; ++k) {
        if (largest > 0.0 && std::abs(lambda(k)) > 1e-12 * largest) {
            inv(k) = 1.0 / lambda(k);
        }
    }
    const Eigen::Matrix2d u = solver.eigenvectors();
    return u * inv.asDiagonal() * u.transpose();
}

CovarianceMatrix homodyne_condition(const CovarianceMatrix& gamma, int mode, Quadrature q) {
    const int n = gamma.n_modes();
    check_mode(n, mode, "homodyne_condition");
    if (n < 2) {
        throw DimensionError("homodyne_condition: need at least two modes");
    }
    const Eigen::Matrix2d r = q == Quadrature::X ? Eigen::Vector2d(1.0, 0.0).asDiagonal().toDenseMatrix()
                                                 : Eigen::Vector2d(0.0, 1.0).asDiagonal().toDenseMatrix();
    const Eigen::Matrix2d gk = gamma.block(mode, mode);
    const double measured_var = q == Quadrature::X ? gk(0, 0) : gk(1, 1);
    if (!(measured_var > 0.0)) {
        throw DomainError("homodyne_condition: measured quadrature has non-positive variance");
    }

    std::vector<int> rest;
    for (int k = 0; k < n; ++k) {
        if (k != mode) rest.push_back(k);
    }
    const auto m = static_cast<Eigen::Index>(rest.size());
    Matrix g_rest(2 * m, 2 * m);
    Matrix sigma(2 * m, 2);
    for (Eigen::Index a = 0; a < m; ++a) {
        sigma.middleRows<2>(2 * a) = gamma.matrix().block<2, 2>(2 * rest[a], 2 * mode);
        for (Eigen::Index b = 0; b < m; ++b) {
            g_rest.block<2, 2>(2 * a, 2 * b) = gamma.matrix().block<2, 2>(2 * rest[a], 2 * rest[b]);
        }
    }
    Matrix g = g_rest - sigma * mp_pseudo_inverse(r * gk * r) * sigma.transpose();
    return CovarianceMatrix(0.5 * (g + g.transpose()));
}

}  // namespace cvxtalk
