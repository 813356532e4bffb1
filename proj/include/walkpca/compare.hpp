#pragma once

#include <span>
#include <vector>

#include "walkpca/analytic.hpp"
#include "walkpca/processes.hpp"

namespace walkpca::compare {

struct SpectrumMetrics {
    int k_lo = 1, k_hi = 1;
    std::vector<double> per_k_rel_error;  // indexed k_lo..k_hi
    double median_rel_error = 0.0;
    double max_rel_error = 0.0;
    // True when the predicted spectrum over the range is nearly flat, in
    // which case sorting the sampled eigenvalues inflates the low ranks and
    // the per-k deviation is expected rather than a mismatch.
    bool sorted_bias_expected = false;
};

/// Per-k |emp − pred| / pred on ratio-normalized spectra. Empirical ratios
/// are eigenvalue / empirical_total; predicted ratios come with the
/// spectrum. Comparing ratios makes the metric invariant under common
/// rescaling of either side.
SpectrumMetrics spectrum_error(std::span<const double> empirical_eigenvalues,
                               double empirical_total,
                               const analytic::AnalyticSpectrum& predicted,
                               int k_lo, int k_hi);

/// Same on raw ratio vectors (CLI path, where both sides arrive as ratios).
SpectrumMetrics spectrum_error_ratios(std::span<const double> empirical_ratios,
                                      std::span<const double> predicted_ratios,
                                      int k_lo, int k_hi);

/// Per-k |emp − pred| / pred on the eigenvalues themselves. Valid whenever
/// both sides share the unit-trace noise normalization; unlike the ratio
/// form it does not inherit a distortion from the tail of the predicted
/// spectrum, which matters for walks that have not reached stationarity.
SpectrumMetrics spectrum_error_absolute(std::span<const double> empirical_eigenvalues,
                                        std::span<const double> predicted_eigenvalues,
                                        int k_lo, int k_hi);

/// |Pearson correlation| between an empirical projection series and the
/// matching Lissajous curve; sign-invariant by construction.
double projection_match(std::span<const double> empirical_proj, int k, int n, double lambda_k);

/// Adjacent strict sign changes, ignoring exact zeros.
int count_zero_crossings(std::span<const double> series);

/// Mean of the last ceil(tail_fraction * n) values.
double plateau_estimate(std::span<const double> distance_series, double tail_fraction);

/// Element t = ‖(1/t) Σ_{s≤t} x_s − minimum‖, via a running sum.
std::vector<double> iterate_average_error(const Trajectory& traj,
                                          std::span<const double> minimum);

struct PlateauReport {
    double estimate = 0.0;
    double predicted = 0.0;
    double rel_dev = 0.0;
};

struct ComparisonReport {
    SpectrumMetrics spectrum;           // ratio-normalized comparison
    SpectrumMetrics spectrum_absolute;  // eigenvalue-level comparison
    std::vector<double> projection_corr;  // per k, 1-based
    std::vector<int> zero_crossings;      // per k, 1-based
    bool has_plateau = false;
    PlateauReport plateau;
    bool has_averaging = false;
    std::vector<double> averaging_series;
    double averaging_mixing_steps = 0.0;
};

}  // namespace walkpca::compare
