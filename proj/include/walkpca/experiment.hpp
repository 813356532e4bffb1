#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "walkpca/compare.hpp"
#include "walkpca/processes.hpp"

namespace walkpca {

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct DivergenceError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// One experiment: a process (optionally swept over gamma/alpha), a seed
/// list, and the analyses to run. Parsed from a flat JSON document with
/// "version": 1; unknown keys are rejected by name.
struct ExperimentConfig {
    std::string name = "experiment";
    ProcessKind process = ProcessKind::Flat;
    int n = 1000;
    int d = 100;
    std::vector<double> gammas;  // momentum sweep
    std::vector<double> alphas;  // OU sweep
    double decay_rate = 1.0;
    DecayTarget decay_applies_to = DecayTarget::Var;
    double lr = 1e-3;
    std::string noise = "isotropic";  // isotropic | factor_random_square
    uint64_t factor_seed = 1;
    std::vector<uint64_t> seeds = {1};
    int k = 50;           // PCA components; 0 disables PCA
    int stride = 1;
    int project_dim = 0;  // 0 disables the random projection
    uint64_t project_seed = 1;
    int proj_components = 6;
    std::vector<std::pair<int, int>> pairs;  // tableau component pairs
    bool compare_enabled = true;
    int k_lo = 1, k_hi = 20;
    double tail_fraction = 0.2;
    int burn_in = 0;
    bool averaging = false;
    int sgd_fit_window = 100;
    bool decayed_walk = false;  // after an SGD run, walk with the fitted rate
    int decayed_walk_n = 1000;
    int decayed_walk_d = 10000;
    int decayed_walk_k = 8;
    std::string out_dir = "out";

    void validate() const;
};

ExperimentConfig parse_config(const std::string& json_text);
ExperimentConfig load_config(const std::filesystem::path& path);

struct SeedResult {
    uint64_t seed = 0;
    std::vector<double> eigenvalues;
    std::vector<double> ratios;
    double total_variance = 0.0;
    compare::ComparisonReport report;
    // SGD runs only
    double sgd_fit_rate = 0.0;
    double sgd_fit_rate_per_step = 0.0;
    double sgd_fit_r2 = 0.0;
    // averaging runs only
    double averaging_ratio = 0.0;  // error(100 n_c) / error(10 n_c)
};

struct ParamResult {
    double param = 0.0;  // gamma or alpha; 0 for flat / sgd / decayed
    std::string tag;
    std::vector<SeedResult> seeds;
    std::vector<double> mean_ratios;
    std::vector<double> mean_eigenvalues;
    compare::SpectrumMetrics mean_spectrum_metrics;  // when comparison ran
    bool has_mean_metrics = false;
};

struct ExperimentResult {
    std::vector<ParamResult> params;
};

/// Runs every (param, seed) combination, writes the artifact files under
/// out_dir, and returns the in-memory summary. Deterministic for a given
/// config, including across thread counts.
ExperimentResult run_experiment(const ExperimentConfig& config,
                                const std::filesystem::path& out_dir);

}  // namespace walkpca
