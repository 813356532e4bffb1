#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "walkpca/matrix.hpp"
#include "walkpca/noise.hpp"

namespace walkpca {

enum class ProcessKind { Flat, Momentum, OrnsteinUhlenbeck, DecayedStep, LinRegSgd };

enum class DecayTarget { Std, Var };

std::string process_kind_name(ProcessKind kind);
ProcessKind process_kind_from_name(const std::string& name);

/// Which stochastic process to run and its parameters. Use the named
/// constructors; they validate the parameter ranges.
struct ProcessSpec {
    ProcessKind kind = ProcessKind::Flat;
    double gamma = 0.0;                          // momentum coefficient, [0, 1)
    double alpha = 0.0;                          // potential strength, (0, 2)
    double decay_rate = 1.0;                     // per-step decay, (0, 1]
    DecayTarget decay_applies_to = DecayTarget::Var;
    double lr = 1e-3;                            // SGD learning rate, > 0
    uint64_t target_seed = 0;                    // SGD hidden-target seed
    std::vector<double> initial_state;           // empty = origin

    static ProcessSpec flat();
    static ProcessSpec momentum(double gamma);
    static ProcessSpec ornstein_uhlenbeck(double alpha);
    static ProcessSpec decayed_step(double rate, DecayTarget target = DecayTarget::Var);
    static ProcessSpec linreg_sgd(double lr, uint64_t target_seed = 0);

    void validate() const;
};

struct TrajectoryMeta {
    std::string process = "flat";
    uint64_t seed = 0;
    int stride = 1;
    bool implicit_origin = true;  // x0 = 0 precedes the stored rows and is not a row
};

/// An n-step, d-dimensional state sequence; row t of states is x_{t+1}.
struct Trajectory {
    Matrix states;  // n x d
    TrajectoryMeta meta;

    int n() const { return states.rows; }
    int d() const { return states.cols; }
};

/// Run the recurrence for n steps. One noise draw per step, in step order,
/// so processes that reduce to each other (gamma=0, alpha->0 is disallowed,
/// rate=1) match the flat walk bitwise on the same seed.
Trajectory simulate(const ProcessSpec& spec, int n, const NoiseModel& noise, uint64_t seed);

struct SgdRun {
    Trajectory trajectory;            // rows are the weight iterates
    std::vector<double> losses;       // per-step loss, length n
};

/// One-output linear regression on synthetic Gaussian data: hidden target W
/// drawn once from target stream, per step draw x ~ N(0, I), take one
/// gradient step on ½(W_est·x − W·x)². Weights start at the origin unless
/// initial_weights is given.
SgdRun simulate_linreg_sgd(int d, double lr, int n, uint64_t seed,
                           std::span<const double> initial_weights = {});

/// The hidden target W the SGD run converges to, for a given (d, seed).
std::vector<double> linreg_hidden_target(int d, uint64_t seed);

/// ‖x_t − x_{t−1}‖ for t = 1..n with x₀ = 0 (length n).
std::vector<double> step_norms(const Trajectory& traj);

/// ‖x_t‖ for t = 1..n.
std::vector<double> distance_from_origin(const Trajectory& traj);

struct DecayFit {
    double rate;       // per-index multiplicative rate e^slope
    double r_squared;  // 0 when the series has no variance
};

/// Least-squares fit of log(series) against index. All values must be > 0.
DecayFit fit_exponential_decay(std::span<const double> series);

/// Means of consecutive windows (tail shorter than `window` is dropped);
/// used to tame per-step noise before fitting a decay rate.
std::vector<double> block_means(std::span<const double> series, int window);

}  // namespace walkpca
