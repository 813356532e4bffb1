#include "walkpca/noise.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

#include "walkpca/kernels.hpp"

namespace walkpca {

NoiseModel make_isotropic(int d) {
    if (d < 1) throw std::invalid_argument("make_isotropic: dimension must be >= 1");
    NoiseModel m;
    m.kind_ = NoiseKind::Isotropic;
    m.dim_ = d;
    m.coord_std_ = 1.0 / std::sqrt(static_cast<double>(d));
    return m;
}

NoiseModel make_factor_covariance(const Matrix& factor) {
    if (factor.rows < 1 || factor.cols < 1)
        throw std::invalid_argument("make_factor_covariance: empty factor");
    double frob2 = 0.0;
    for (double v : factor.data) frob2 += v * v;
    if (frob2 == 0.0)
        throw std::invalid_argument("make_factor_covariance: degenerate covariance (all-zero factor)");
    NoiseModel m;
    m.kind_ = NoiseKind::FactorCovariance;
    m.dim_ = factor.rows;
    m.factor_ = factor;
    const double inv = 1.0 / std::sqrt(frob2);  // Tr(FFᵀ) = ‖F‖_F²
    for (double& v : m.factor_.data) v *= inv;
    return m;
}

void NoiseModel::sample(GaussianStream& stream, double* out) const {
    if (kind_ == NoiseKind::Isotropic) {
        for (int i = 0; i < dim_; i++) out[i] = stream.next() * coord_std_;
        return;
    }
    thread_local std::vector<double> z;
    z.resize(static_cast<size_t>(factor_.cols));
    stream.fill(z.data(), z.size());
    kernels::matvec(factor_, z.data(), out);
}

}  // namespace walkpca
