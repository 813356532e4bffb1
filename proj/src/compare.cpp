#include "walkpca/compare.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace walkpca::compare {

namespace {

double median_of(std::vector<double> v) {
    std::sort(v.begin(), v.end());
    const size_t n = v.size();
    return n % 2 == 1 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

constexpr double kFlatSpectrumRangeRatio = 2.0;

}  // namespace

SpectrumMetrics spectrum_error_ratios(std::span<const double> empirical_ratios,
                                      std::span<const double> predicted_ratios,
                                      int k_lo, int k_hi) {
    if (k_lo < 1 || k_hi < k_lo) throw std::invalid_argument("spectrum_error: empty k range");
    if (static_cast<size_t>(k_hi) > empirical_ratios.size() ||
        static_cast<size_t>(k_hi) > predicted_ratios.size())
        throw std::invalid_argument("spectrum_error: k range exceeds provided spectra");

    SpectrumMetrics m;
    m.k_lo = k_lo;
    m.k_hi = k_hi;
    double pred_min = predicted_ratios[k_lo - 1], pred_max = pred_min;
    for (int k = k_lo; k <= k_hi; k++) {
        const double pred = predicted_ratios[k - 1];
        if (!(pred > 0.0)) throw std::domain_error("spectrum_error: predicted ratio must be > 0");
        pred_min = std::min(pred_min, pred);
        pred_max = std::max(pred_max, pred);
        m.per_k_rel_error.push_back(std::fabs(empirical_ratios[k - 1] - pred) / pred);
    }
    m.median_rel_error = median_of(m.per_k_rel_error);
    m.max_rel_error = *std::max_element(m.per_k_rel_error.begin(), m.per_k_rel_error.end());
    m.sorted_bias_expected = pred_max / pred_min < kFlatSpectrumRangeRatio;
    return m;
}

SpectrumMetrics spectrum_error_absolute(std::span<const double> empirical_eigenvalues,
                                        std::span<const double> predicted_eigenvalues,
                                        int k_lo, int k_hi) {
    return spectrum_error_ratios(empirical_eigenvalues, predicted_eigenvalues, k_lo, k_hi);
}

SpectrumMetrics spectrum_error(std::span<const double> empirical_eigenvalues,
                               double empirical_total,
                               const analytic::AnalyticSpectrum& predicted,
                               int k_lo, int k_hi) {
    if (!(empirical_total > 0.0))
        throw std::invalid_argument("spectrum_error: empirical total must be > 0");
    std::vector<double> emp(empirical_eigenvalues.size());
    for (size_t i = 0; i < emp.size(); i++) emp[i] = empirical_eigenvalues[i] / empirical_total;
    return spectrum_error_ratios(emp, predicted.ratios, k_lo, k_hi);
}

double projection_match(std::span<const double> empirical_proj, int k, int n, double lambda_k) {
    if (static_cast<int>(empirical_proj.size()) != n)
        throw std::invalid_argument("projection_match: series length must equal n");
    const std::vector<double> curve = analytic::lissajous_projection(k, n, lambda_k);
    double sa = 0.0, sb = 0.0;
    for (int i = 0; i < n; i++) {
        sa += empirical_proj[i];
        sb += curve[i];
    }
    const double ma = sa / n, mb = sb / n;
    double cov = 0.0, va = 0.0, vb = 0.0;
    for (int i = 0; i < n; i++) {
        const double da = empirical_proj[i] - ma;
        const double db = curve[i] - mb;
        cov += da * db;
        va += da * da;
        vb += db * db;
    }
    if (va <= 0.0 || vb <= 0.0)
        throw std::domain_error("projection_match: zero-variance series");
    return std::fabs(cov / std::sqrt(va * vb));
}

int count_zero_crossings(std::span<const double> series) {
    if (series.size() < 2) throw std::invalid_argument("count_zero_crossings: need length >= 2");
    int crossings = 0;
    int last_sign = 0;
    for (double v : series) {
        if (v == 0.0) continue;
        const int sign = v > 0.0 ? 1 : -1;
        if (last_sign != 0 && sign != last_sign) crossings++;
        last_sign = sign;
    }
    return crossings;
}

double plateau_estimate(std::span<const double> distance_series, double tail_fraction) {
    if (!(tail_fraction > 0.0 && tail_fraction <= 1.0))
        throw std::invalid_argument("plateau_estimate: tail_fraction must be in (0, 1]");
    const size_t n = distance_series.size();
    if (n == 0) throw std::invalid_argument("plateau_estimate: empty series");
    const size_t count = std::min(
        n, static_cast<size_t>(std::ceil(tail_fraction * static_cast<double>(n))));
    double sum = 0.0;
    for (size_t i = n - count; i < n; i++) sum += distance_series[i];
    return sum / static_cast<double>(count);
}

std::vector<double> iterate_average_error(const Trajectory& traj,
                                          std::span<const double> minimum) {
    const int n = traj.n(), d = traj.d();
    if (static_cast<int>(minimum.size()) != d)
        throw std::invalid_argument("iterate_average_error: minimum dimension mismatch");
    std::vector<double> running(d, 0.0);
    std::vector<double> out(n);
    for (int t = 0; t < n; t++) {
        const double* row = traj.states.row(t);
        double s = 0.0;
        const double inv = 1.0 / (t + 1);
        for (int j = 0; j < d; j++) {
            running[j] += row[j];
            const double diff = running[j] * inv - minimum[j];
            s += diff * diff;
        }
        out[t] = std::sqrt(s);
    }
    return out;
}

}  // namespace walkpca::compare
