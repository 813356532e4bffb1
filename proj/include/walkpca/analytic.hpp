#pragma once

#include <span>
#include <string>
#include <vector>

#include "walkpca/processes.hpp"

namespace walkpca::analytic {

/// Closed-form spectrum for one process family. Eigenvalues are indexed by
/// sorted rank k = 1..K; ratios are normalized by the explicit finite sum
/// over k = 1..n−1, not the infinite-n limit.
struct AnalyticSpectrum {
    std::string process;
    double param = 0.0;  // gamma or alpha; unused for flat
    int n = 0;
    std::vector<double> eigenvalues;
    std::vector<double> ratios;
};

/// k-th eigenvalue of a circulant matrix with the given first row:
/// c0 + c_{n-1} w + c_{n-2} w² + … + c_1 w^{n-1}, w = exp(2πik/n).
/// Imaginary parts cancel for symmetric rows; the real part is returned.
double circulant_eigenvalue(std::span<const double> first_row, int k);

/// The same sum evaluated at an arbitrary angle; the symbol of the matrix.
/// For a symmetric circulant the sorted spectrum samples this at θ = πk/n,
/// because the ±frequency modes pair up under sorting.
double circulant_symbol(std::span<const double> first_row, double theta);

/// Flat-walk Gram eigenvalue at sorted rank k: ½ [1 − cos(πk/n)]⁻¹.
double flat_eigenvalue(int k, int n);

/// Tr(S⁻¹S⁻ᵀ) = n(n+1)/2; the uncentered trace.
double flat_trace(int n);

/// Infinite-n explained variance ratio 6/(π²k²).
double flat_variance_ratio(int k);

/// Momentum-walk eigenvalue at sorted rank k.
double momentum_eigenvalue(int k, int n, double gamma);

enum class OuMode { Exact, Approx };

/// OU eigenvalue, verbatim forms:
/// exact  [1 + (1−α)² − 2(1−α)cos(2πk/n)]⁻¹
/// approx [4π²k²(1−α)/n² + α²]⁻¹
double ou_eigenvalue(int k, int n, double alpha, OuMode mode);

/// OU eigenvalue at sorted rank k (symbol at θ = πk/n); this is what sorted
/// empirical spectra are compared against.
double ou_rank_eigenvalue(int k, int n, double alpha);

/// √(2λ/n) cos(πkt/n) sampled at t = 1..n.
std::vector<double> lissajous_projection(int k, int n, double lambda_k);

/// r_c = 1/√(α(2−α)); where a high-dimensional OU walk gets trapped.
double critical_radius(double alpha);

/// n_c = (α(2−α))⁻¹ = r_c²; steps until the walk departs from flat behavior.
double mixing_steps(double alpha);

/// Dispatch over the family formulas; flat, momentum and OU only.
AnalyticSpectrum predicted_spectrum(const ProcessSpec& spec, int n, int k);

}  // namespace walkpca::analytic
