#pragma once

#include <vector>

#include "walkpca/matrix.hpp"
#include "walkpca/processes.hpp"

namespace walkpca::pca {

struct PcaResult {
    std::vector<double> eigenvalues;      // top K, nonincreasing, tiny values clamped to 0
    std::vector<double> explained_ratio;  // eigenvalue / total_variance
    Matrix time_modes;                    // n x K, orthonormal columns
    Matrix projections;                   // n x K, column k = sqrt(lambda_k) * u_k
    double total_variance = 0.0;          // Tr(X̂ X̂ᵀ)
};

struct PcaOptions {
    int n_cap = 5000;  // Gram route is O(n³ + n²d); raise deliberately
};

/// Copy of x with every column shifted to mean zero. Idempotent.
Matrix center(const Matrix& x);

/// X Xᵀ of a centered matrix; rows and columns sum to zero.
Matrix gram(const Matrix& centered);

struct EighResult {
    std::vector<double> eigenvalues;  // nonincreasing, unclamped
    Matrix eigenvectors;              // columns, orthonormal, sign-fixed
};

/// Symmetric eigendecomposition with a fixed sign convention: in each
/// eigenvector the entry of largest magnitude (first index on ties) is
/// positive. Input symmetry is checked to 1e-10 relative.
EighResult eigh_symmetric(const Matrix& g);

/// Trajectory PCA through the n×n Gram matrix of the centered design matrix.
PcaResult pca_trajectory(const Trajectory& traj, int k, const PcaOptions& opts = {});

/// Brute-force oracle through the d×d covariance; small d only.
PcaResult pca_direct(const Trajectory& traj, int k);

}  // namespace walkpca::pca
