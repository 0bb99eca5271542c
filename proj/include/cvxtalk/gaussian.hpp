#pragma once

// Covariance-matrix algebra for zero-mean Gaussian states.
//
// Conventions: shot-noise units (vacuum quadrature variance = 1) and
// mode-major quadrature ordering (x1, p1, x2, p2, ...).

#include <vector>

#include <Eigen/Dense>

namespace cvxtalk {

using Matrix = Eigen::MatrixXd;

enum class Quadrature { X, P };

/// Omega = direct sum of [[0, 1], [-1, 0]] over n_modes.
Matrix symplectic_form(int n_modes);

/// Smallest eigenvalue of the Hermitian matrix gamma + i*Omega.
double physicality_margin(const Matrix& gamma);

class CovarianceMatrix {
public:
    static constexpr double kSymmetryTol = 1e-12;
    static constexpr double kPhysicalityTol = 1e-9;

    /// Validates shape, symmetry and physicality, then stores (data + data^T)/2.
    /// Throws DimensionError / DomainError.
    explicit CovarianceMatrix(Matrix data);

    static CovarianceMatrix vacuum(int n_modes);

    int n_modes() const { return static_cast<int>(data_.rows() / 2); }
    const Matrix& matrix() const { return data_; }
    double operator()(Eigen::Index row, Eigen::Index col) const { return data_(row, col); }

    /// 2x2 block coupling modes i and j.
    Eigen::Matrix2d block(int i, int j) const;

private:
    Matrix data_;
};

class SymplecticMap {
public:
    static constexpr double kSymplecticTol = 1e-12;

    /// Throws DomainError unless ||S Omega S^T - Omega||_inf <= kSymplecticTol.
    explicit SymplecticMap(Matrix data);

    static SymplecticMap identity(int n_modes);

    int n_modes() const { return static_cast<int>(data_.rows() / 2); }
    const Matrix& matrix() const { return data_; }

    /// Composition; (a * b) applies b first.
    SymplecticMap operator*(const SymplecticMap& rhs) const;

private:
    Matrix data_;
};

/// Two-mode squeezed vacuum [[V I, sqrt(V^2-1) Z], [sqrt(V^2-1) Z, V I]].
CovarianceMatrix tmsv_pair(double v);

/// Block-diagonal concatenation; modes of `a` come first.
CovarianceMatrix tensor(const CovarianceMatrix& a, const CovarianceMatrix& b);

/// x_i' = sqrt(t) x_i + sqrt(1-t) x_j,  x_j' = -sqrt(1-t) x_i + sqrt(t) x_j (same for p).
SymplecticMap beam_splitter_map(int n_modes, int i, int j, double t);

/// Rotation by phi in the (x_i, p_i) plane.
SymplecticMap phase_shift_map(int n_modes, int i, double phi);

CovarianceMatrix apply_map(const CovarianceMatrix& gamma, const SymplecticMap& map);

/// Loss T followed by excess noise eps referred to the output: a variance V
/// on `mode` becomes T (V + eps - 1) + 1; correlations scale with sqrt(T).
CovarianceMatrix lossy_noisy_channel(const CovarianceMatrix& gamma, int mode, double transmittance,
                                     double excess_noise);

/// Partial trace onto `modes`, kept in the order given (so it can also permute).
CovarianceMatrix reduce(const CovarianceMatrix& gamma, const std::vector<int>& modes);

/// Ascending symplectic spectrum of a positive-definite 2N x 2N matrix
/// (a physical covariance matrix or a partial transpose of one).
/// Computed as the singular values of L^T Omega L with gamma = L L^T.
std::vector<double> symplectic_eigenvalues(const Matrix& gamma);
std::vector<double> symplectic_eigenvalues(const CovarianceMatrix& gamma);

/// Same spectrum from |eig(i Omega gamma)|, paired with tolerance 1e-9.
std::vector<double> symplectic_eigenvalues_direct(const Matrix& gamma);

/// Closed form for 4x4 matrices: nu^2 = (D -/+ sqrt(D^2 - 4 det gamma)) / 2 with
/// D = det A + det B + 2 det C.
std::vector<double> two_mode_symplectic_eigenvalues(const Matrix& gamma);

/// Moore-Penrose pseudo-inverse of a symmetric PSD 2x2 matrix; eigenvalues below
/// 1e-12 of the largest one are treated as zero.
Eigen::Matrix2d mp_pseudo_inverse(const Eigen::Matrix2d& m);

/// Conditional state after homodyne detection of quadrature `q` on `mode`:
/// gamma_rest - sigma (R gamma_K R)^MP sigma^T. The measured mode is removed.
CovarianceMatrix homodyne_condition(const CovarianceMatrix& gamma, int mode, Quadrature q);

}  // namespace cvxtalk
