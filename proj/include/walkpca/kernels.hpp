#pragma once

#include <cstdint>
#include <vector>

#include "walkpca/matrix.hpp"

namespace walkpca::kernels {

// OpenMP-parallel dense kernels. Every kernel has a serial reference twin
// used by the tests and the benchmark; both variants share the same
// per-element accumulation order, so their results are bitwise identical
// for any thread count.

/// Per-column means over rows.
std::vector<double> column_means(const Matrix& x);
std::vector<double> column_means_serial(const Matrix& x);

/// Subtract per-column means in place.
void center(Matrix& x);
void center_serial(Matrix& x);

/// G = X Xᵀ (n×n) for a row-major n×d input.
Matrix gram(const Matrix& x);
Matrix gram_serial(const Matrix& x);

/// C = Xᵀ X (d×d); intended for small d (the direct PCA oracle).
Matrix covariance(const Matrix& x);
Matrix covariance_serial(const Matrix& x);

/// Y = X Gᵀ where G is a target_dim×d matrix of i.i.d. N(0, 1/target_dim)
/// entries that is never materialized: column c of G is regenerated from
/// the substream (seed, c), so d can exceed what any stored G would allow.
Matrix project_gaussian(const Matrix& x, int target_dim, uint64_t seed);
Matrix project_gaussian_serial(const Matrix& x, int target_dim, uint64_t seed);

/// y = A x for row-major A.
void matvec(const Matrix& a, const double* x, double* y);
void matvec_serial(const Matrix& a, const double* x, double* y);

}  // namespace walkpca::kernels
