#include "walkpca/processes.hpp"

#include <cmath>
#include <stdexcept>

namespace walkpca {

std::string process_kind_name(ProcessKind kind) {
    switch (kind) {
        case ProcessKind::Flat: return "flat";
        case ProcessKind::Momentum: return "momentum";
        case ProcessKind::OrnsteinUhlenbeck: return "ou";
        case ProcessKind::DecayedStep: return "decayed_step";
        case ProcessKind::LinRegSgd: return "linreg_sgd";
    }
    throw std::logic_error("unreachable");
}

ProcessKind process_kind_from_name(const std::string& name) {
    if (name == "flat") return ProcessKind::Flat;
    if (name == "momentum") return ProcessKind::Momentum;
    if (name == "ou") return ProcessKind::OrnsteinUhlenbeck;
    if (name == "decayed_step") return ProcessKind::DecayedStep;
    if (name == "linreg_sgd") return ProcessKind::LinRegSgd;
    throw std::invalid_argument("unknown process kind: " + name);
}

ProcessSpec ProcessSpec::flat() { return ProcessSpec{}; }

ProcessSpec ProcessSpec::momentum(double gamma) {
    ProcessSpec s;
    s.kind = ProcessKind::Momentum;
    s.gamma = gamma;
    s.validate();
    return s;
}

ProcessSpec ProcessSpec::ornstein_uhlenbeck(double alpha) {
    ProcessSpec s;
    s.kind = ProcessKind::OrnsteinUhlenbeck;
    s.alpha = alpha;
    s.validate();
    return s;
}

ProcessSpec ProcessSpec::decayed_step(double rate, DecayTarget target) {
    ProcessSpec s;
    s.kind = ProcessKind::DecayedStep;
    s.decay_rate = rate;
    s.decay_applies_to = target;
    s.validate();
    return s;
}

ProcessSpec ProcessSpec::linreg_sgd(double lr, uint64_t target_seed) {
    ProcessSpec s;
    s.kind = ProcessKind::LinRegSgd;
    s.lr = lr;
    s.target_seed = target_seed;
    s.validate();
    return s;
}

void ProcessSpec::validate() const {
    switch (kind) {
        case ProcessKind::Flat:
            break;
        case ProcessKind::Momentum:
            if (!(gamma >= 0.0 && gamma < 1.0))
                throw std::invalid_argument("ProcessSpec: gamma must be in [0, 1)");
            break;
        case ProcessKind::OrnsteinUhlenbeck:
            // alpha = 0 is admitted for simulation (it is exactly the flat
            // walk); the closed-form predictions require alpha in (0, 2).
            if (!(alpha >= 0.0 && alpha < 2.0))
                throw std::invalid_argument("ProcessSpec: alpha must be in [0, 2)");
            break;
        case ProcessKind::DecayedStep:
            if (!(decay_rate > 0.0 && decay_rate <= 1.0))
                throw std::invalid_argument("ProcessSpec: decay_rate must be in (0, 1]");
            break;
        case ProcessKind::LinRegSgd:
            if (!(lr > 0.0)) throw std::invalid_argument("ProcessSpec: lr must be > 0");
            break;
    }
}

namespace {

[[noreturn]] void throw_nonfinite(const std::string& process, int step) {
    throw std::runtime_error("non-finite state at step " + std::to_string(step + 1) +
                             " (process " + process + "); aborting simulation");
}

double row_sum(const double* row, int d) {
    double s = 0.0;
    for (int j = 0; j < d; j++) s += row[j];
    return s;
}

}  // namespace

Trajectory simulate(const ProcessSpec& spec, int n, const NoiseModel& noise, uint64_t seed) {
    spec.validate();
    if (spec.kind == ProcessKind::LinRegSgd)
        throw std::invalid_argument("simulate: use simulate_linreg_sgd for the SGD process");
    if (n < 2) throw std::invalid_argument("simulate: need n >= 2 steps");
    const int d = noise.dim();
    if (!spec.initial_state.empty() && static_cast<int>(spec.initial_state.size()) != d)
        throw std::invalid_argument("simulate: initial_state dimension does not match noise model");

    Trajectory traj;
    traj.states = Matrix(n, d);
    traj.meta.process = process_kind_name(spec.kind);
    traj.meta.seed = seed;

    std::vector<double> state(d, 0.0);
    if (!spec.initial_state.empty()) state = spec.initial_state;
    std::vector<double> velocity;
    if (spec.kind == ProcessKind::Momentum) velocity.assign(d, 0.0);
    std::vector<double> xi(d, 0.0);

    GaussianStream stream(seed);
    const double keep = 1.0 - spec.alpha;  // OU contraction
    // Decay multiplier for the t-th draw (1-based): rate^t on the std, or
    // rate^(t/2) when the decay applies to the variance.
    const double decay_step =
        spec.decay_applies_to == DecayTarget::Std ? spec.decay_rate : std::sqrt(spec.decay_rate);
    double decay_scale = 1.0;

    for (int t = 0; t < n; t++) {
        noise.sample(stream, xi.data());
        switch (spec.kind) {
            case ProcessKind::Flat:
                for (int j = 0; j < d; j++) state[j] += xi[j];
                break;
            case ProcessKind::Momentum:
                for (int j = 0; j < d; j++) {
                    velocity[j] = spec.gamma * velocity[j] + xi[j];
                    state[j] += velocity[j];
                }
                break;
            case ProcessKind::OrnsteinUhlenbeck:
                for (int j = 0; j < d; j++) state[j] = keep * state[j] + xi[j];
                break;
            case ProcessKind::DecayedStep:
                decay_scale *= decay_step;
                for (int j = 0; j < d; j++) state[j] += decay_scale * xi[j];
                break;
            case ProcessKind::LinRegSgd:
                break;  // handled above
        }
        double* row = traj.states.row(t);
        for (int j = 0; j < d; j++) row[j] = state[j];
        if (!std::isfinite(row_sum(row, d))) throw_nonfinite(traj.meta.process, t);
    }
    return traj;
}

std::vector<double> linreg_hidden_target(int d, uint64_t seed) {
    std::vector<double> target(d);
    GaussianStream target_stream(derive_stream(seed, 0x7a72676574ull));
    target_stream.fill(target.data(), target.size());
    return target;
}

SgdRun simulate_linreg_sgd(int d, double lr, int n, uint64_t seed,
                           std::span<const double> initial_weights) {
    if (d < 1) throw std::invalid_argument("simulate_linreg_sgd: d must be >= 1");
    if (!(lr > 0.0)) throw std::invalid_argument("simulate_linreg_sgd: lr must be > 0");
    if (n < 2) throw std::invalid_argument("simulate_linreg_sgd: need n >= 2 steps");
    if (!initial_weights.empty() && static_cast<int>(initial_weights.size()) != d)
        throw std::invalid_argument("simulate_linreg_sgd: initial_weights dimension mismatch");

    const std::vector<double> target = linreg_hidden_target(d, seed);

    SgdRun run;
    run.trajectory.states = Matrix(n, d);
    run.trajectory.meta.process = process_kind_name(ProcessKind::LinRegSgd);
    run.trajectory.meta.seed = seed;
    run.losses.resize(n);

    std::vector<double> w(d, 0.0);
    if (!initial_weights.empty()) w.assign(initial_weights.begin(), initial_weights.end());
    std::vector<double> x(d);
    GaussianStream input_stream(seed);

    for (int t = 0; t < n; t++) {
        input_stream.fill(x.data(), x.size());
        double pred = 0.0, truth = 0.0;
        for (int j = 0; j < d; j++) {
            pred += w[j] * x[j];
            truth += target[j] * x[j];
        }
        const double residual = pred - truth;
        run.losses[t] = 0.5 * residual * residual;
        const double g = lr * residual;
        for (int j = 0; j < d; j++) w[j] -= g * x[j];
        double* row = run.trajectory.states.row(t);
        double sum = 0.0;
        for (int j = 0; j < d; j++) {
            row[j] = w[j];
            sum += w[j];
        }
        if (!std::isfinite(sum) || !std::isfinite(run.losses[t]))
            throw_nonfinite(run.trajectory.meta.process, t);
    }
    return run;
}

std::vector<double> step_norms(const Trajectory& traj) {
    const int n = traj.n(), d = traj.d();
    std::vector<double> norms(n);
    for (int t = 0; t < n; t++) {
        const double* cur = traj.states.row(t);
        const double* prev = t > 0 ? traj.states.row(t - 1) : nullptr;
        double s = 0.0;
        for (int j = 0; j < d; j++) {
            const double diff = prev ? cur[j] - prev[j] : cur[j];
            s += diff * diff;
        }
        norms[t] = std::sqrt(s);
    }
    return norms;
}

std::vector<double> distance_from_origin(const Trajectory& traj) {
    const int n = traj.n(), d = traj.d();
    std::vector<double> dist(n);
    for (int t = 0; t < n; t++) {
        const double* row = traj.states.row(t);
        double s = 0.0;
        for (int j = 0; j < d; j++) s += row[j] * row[j];
        dist[t] = std::sqrt(s);
    }
    return dist;
}

DecayFit fit_exponential_decay(std::span<const double> series) {
    const size_t n = series.size();
    if (n < 2) throw std::invalid_argument("fit_exponential_decay: need at least 2 values");
    double mean_t = 0.0, mean_y = 0.0;
    std::vector<double> logs(n);
    for (size_t i = 0; i < n; i++) {
        if (!(series[i] > 0.0))
            throw std::domain_error("fit_exponential_decay: series values must be > 0");
        logs[i] = std::log(series[i]);
        mean_t += static_cast<double>(i);
        mean_y += logs[i];
    }
    mean_t /= static_cast<double>(n);
    mean_y /= static_cast<double>(n);
    double stt = 0.0, sty = 0.0, syy = 0.0;
    for (size_t i = 0; i < n; i++) {
        const double dt = static_cast<double>(i) - mean_t;
        const double dy = logs[i] - mean_y;
        stt += dt * dt;
        sty += dt * dy;
        syy += dy * dy;
    }
    const double slope = sty / stt;
    double r2 = 0.0;
    if (syy > 0.0) {
        double ss_res = 0.0;
        for (size_t i = 0; i < n; i++) {
            const double fit = mean_y + slope * (static_cast<double>(i) - mean_t);
            const double r = logs[i] - fit;
            ss_res += r * r;
        }
        r2 = 1.0 - ss_res / syy;
    }
    return DecayFit{std::exp(slope), r2};
}

std::vector<double> block_means(std::span<const double> series, int window) {
    if (window < 1) throw std::invalid_argument("block_means: window must be >= 1");
    std::vector<double> out;
    const size_t blocks = series.size() / static_cast<size_t>(window);
    out.reserve(blocks);
    for (size_t b = 0; b < blocks; b++) {
        double s = 0.0;
        for (int i = 0; i < window; i++) s += series[b * window + i];
        out.push_back(s / window);
    }
    return out;
}

}  // namespace walkpca
