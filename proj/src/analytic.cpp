#include "walkpca/analytic.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace walkpca::analytic {

namespace {

constexpr double kPi = std::numbers::pi;

void check_ou_alpha(double alpha) {
    if (!(alpha > 0.0 && alpha < 2.0))
        throw std::domain_error("analytic: alpha must be in (0, 2)");
}

}  // namespace

double circulant_symbol(std::span<const double> first_row, double theta) {
    // Bands are folded to their signed distance (an entry at column j also
    // represents the band at j - n), so the symbol extends the eigenvalue
    // formula off the grid: at theta = 2*pi*k/n it coincides with
    // circulant_eigenvalue, and between grid points it is the banded
    // Toeplitz symbol the circulant converges to.
    const size_t n = first_row.size();
    if (n == 0) throw std::invalid_argument("circulant_symbol: empty row");
    double sum = first_row[0];
    for (size_t j = 1; j < n; j++) {
        const size_t dist = std::min(j, n - j);
        sum += first_row[n - j] * std::cos(theta * static_cast<double>(dist));
    }
    return sum;
}

double circulant_eigenvalue(std::span<const double> first_row, int k) {
    const int n = static_cast<int>(first_row.size());
    if (k < 0 || k > n - 1) throw std::domain_error("circulant_eigenvalue: k out of range");
    // c0 + c_{n-1} w + c_{n-2} w^2 + ... + c_1 w^{n-1}; imaginary parts cancel.
    double sum = first_row[0];
    for (int j = 1; j < n; j++)
        sum += first_row[n - j] * std::cos(2.0 * kPi * k * static_cast<double>(j) / n);
    return sum;
}

double flat_eigenvalue(int k, int n) {
    if (k < 1 || k > n) throw std::domain_error("flat_eigenvalue: need 1 <= k <= n");
    return 0.5 / (1.0 - std::cos(kPi * k / n));
}

double flat_trace(int n) {
    if (n < 1) throw std::domain_error("flat_trace: need n >= 1");
    return 0.5 * static_cast<double>(n) * (static_cast<double>(n) + 1.0);
}

double flat_variance_ratio(int k) {
    if (k < 1) throw std::domain_error("flat_variance_ratio: need k >= 1");
    return 6.0 / (kPi * kPi * static_cast<double>(k) * static_cast<double>(k));
}

double momentum_eigenvalue(int k, int n, double gamma) {
    if (k < 1 || k > n) throw std::domain_error("momentum_eigenvalue: need 1 <= k <= n");
    if (!(gamma >= 0.0 && gamma < 1.0))
        throw std::domain_error("momentum_eigenvalue: gamma must be in [0, 1)");
    const double theta = kPi * k / n;
    const double denom = 1.0 + gamma + gamma * gamma -
                         (1.0 + gamma) * (1.0 + gamma) * std::cos(theta) +
                         gamma * std::cos(2.0 * theta);
    return 0.5 / denom;
}

double ou_eigenvalue(int k, int n, double alpha, OuMode mode) {
    check_ou_alpha(alpha);
    if (k < 1 || k > n - 1) throw std::domain_error("ou_eigenvalue: need 1 <= k <= n-1");
    const double c = 1.0 - alpha;
    if (mode == OuMode::Exact)
        return 1.0 / (1.0 + c * c - 2.0 * c * std::cos(2.0 * kPi * k / n));
    const double kk = static_cast<double>(k);
    return 1.0 / (4.0 * kPi * kPi * kk * kk * c / (static_cast<double>(n) * n) + alpha * alpha);
}

double ou_rank_eigenvalue(int k, int n, double alpha) {
    check_ou_alpha(alpha);
    if (k < 1 || k > n - 1) throw std::domain_error("ou_rank_eigenvalue: need 1 <= k <= n-1");
    const double c = 1.0 - alpha;
    return 1.0 / (1.0 + c * c - 2.0 * c * std::cos(kPi * k / n));
}

std::vector<double> lissajous_projection(int k, int n, double lambda_k) {
    if (k < 1 || k > n) throw std::domain_error("lissajous_projection: need 1 <= k <= n");
    if (!(lambda_k > 0.0)) throw std::domain_error("lissajous_projection: lambda must be > 0");
    std::vector<double> series(n);
    const double amp = std::sqrt(2.0 * lambda_k / n);
    for (int t = 1; t <= n; t++)
        series[t - 1] = amp * std::cos(kPi * k * t / n);
    return series;
}

double critical_radius(double alpha) {
    check_ou_alpha(alpha);
    return 1.0 / std::sqrt(alpha * (2.0 - alpha));
}

double mixing_steps(double alpha) {
    check_ou_alpha(alpha);
    return 1.0 / (alpha * (2.0 - alpha));
}

AnalyticSpectrum predicted_spectrum(const ProcessSpec& spec, int n, int k) {
    if (n < 2) throw std::invalid_argument("predicted_spectrum: need n >= 2");
    if (k < 1 || k > n - 1)
        throw std::invalid_argument("predicted_spectrum: need 1 <= K <= n-1");

    AnalyticSpectrum out;
    out.process = process_kind_name(spec.kind);
    out.n = n;

    double (*value)(int, int, double) = nullptr;
    switch (spec.kind) {
        case ProcessKind::Flat:
            value = [](int kk, int nn, double) { return flat_eigenvalue(kk, nn); };
            break;
        case ProcessKind::Momentum:
            out.param = spec.gamma;
            value = [](int kk, int nn, double g) { return momentum_eigenvalue(kk, nn, g); };
            break;
        case ProcessKind::OrnsteinUhlenbeck:
            out.param = spec.alpha;
            value = [](int kk, int nn, double a) { return ou_rank_eigenvalue(kk, nn, a); };
            break;
        default:
            throw std::invalid_argument(
                "predicted_spectrum: no closed form for process " + process_kind_name(spec.kind));
    }

    double sum = 0.0;
    for (int j = 1; j <= n - 1; j++) sum += value(j, n, out.param);
    out.eigenvalues.resize(k);
    out.ratios.resize(k);
    for (int j = 1; j <= k; j++) {
        out.eigenvalues[j - 1] = value(j, n, out.param);
        out.ratios[j - 1] = out.eigenvalues[j - 1] / sum;
    }
    return out;
}

}  // namespace walkpca::analytic
