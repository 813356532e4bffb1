#pragma once

#include "walkpca/matrix.hpp"
#include "walkpca/rng.hpp"

namespace walkpca {

enum class NoiseKind { Isotropic, FactorCovariance };

/// Zero-mean Gaussian step noise with covariance trace normalized to 1.
/// Isotropic: i.i.d. coordinates with variance 1/d. Factor: ξ = F z with z
/// standard normal and F stored after Frobenius normalization, so the
/// covariance is F Fᵀ with unit trace. Immutable; callers own their streams.
class NoiseModel {
  public:
    NoiseKind kind() const { return kind_; }
    int dim() const { return dim_; }
    const Matrix& factor() const { return factor_; }

    /// One draw into out[0..dim).
    void sample(GaussianStream& stream, double* out) const;

    friend NoiseModel make_isotropic(int d);
    friend NoiseModel make_factor_covariance(const Matrix& factor);

  private:
    NoiseModel() = default;
    NoiseKind kind_ = NoiseKind::Isotropic;
    int dim_ = 0;
    double coord_std_ = 0.0;  // isotropic: 1/sqrt(d)
    Matrix factor_;           // d x m, normalized
};

NoiseModel make_isotropic(int d);
NoiseModel make_factor_covariance(const Matrix& factor);

}  // namespace walkpca
