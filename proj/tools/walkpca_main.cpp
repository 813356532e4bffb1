// walkpca — simulate high-dimensional stochastic walks, run trajectory PCA,
// and compare empirical spectra and projections against closed-form
// predictions. Subcommands compose through files:
//   simulate -> trajectory file -> pca -> spectrum csv -> compare -> report
#include <CLI11.hpp>
#include <cstdio>
#include <exception>
#include <filesystem>
#include <fstream>
#include <json.hpp>
#include <string>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "walkpca/analytic.hpp"
#include "walkpca/csv.hpp"
#include "walkpca/experiment.hpp"
#include "walkpca/pca.hpp"
#include "walkpca/trajectory_io.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace walkpca;

namespace {

constexpr int kExitConfig = 2;
constexpr int kExitDivergence = 3;
constexpr int kExitIo = 4;

struct SimulateArgs {
    std::string process = "flat";
    int n = 1000;
    int d = 100;
    double gamma = 0.9;
    double alpha = 0.01;
    double decay_rate = 0.995;
    std::string decay_target = "var";
    double lr = 1e-3;
    std::string noise = "isotropic";
    uint64_t factor_seed = 1;
    std::string out;
};

struct PcaArgs {
    std::string input;
    int k = 50;
    int n_cap = 5000;
    int components = 0;
    std::string out;
    std::string projections_out;
};

struct PredictArgs {
    std::string process = "flat";
    int n = 1000;
    int k = 50;
    double gamma = 0.9;
    double alpha = 0.01;
    std::string out;
};

struct CompareArgs {
    std::string empirical;
    std::string predicted;
    std::string k_range = "1:20";
    std::string projections;
    std::string distance;
    double alpha = 0.0;
    double tail_fraction = 0.2;
    std::string out;
};

struct ProjectArgs {
    std::string input;
    int target_dim = 0;
    uint64_t proj_seed = 1;
    std::string out;
};

std::pair<int, int> parse_k_range(const std::string& text) {
    const auto colon = text.find(':');
    if (colon == std::string::npos)
        throw ConfigError("--k-range expects lo:hi, got '" + text + "'");
    const int lo = std::stoi(text.substr(0, colon));
    const int hi = std::stoi(text.substr(colon + 1));
    if (lo < 1 || hi < lo) throw ConfigError("--k-range expects 1 <= lo <= hi");
    return {lo, hi};
}

ProcessSpec spec_from_args(const SimulateArgs& a) {
    const ProcessKind kind = process_kind_from_name(a.process);
    switch (kind) {
        case ProcessKind::Flat: return ProcessSpec::flat();
        case ProcessKind::Momentum: return ProcessSpec::momentum(a.gamma);
        case ProcessKind::OrnsteinUhlenbeck: return ProcessSpec::ornstein_uhlenbeck(a.alpha);
        case ProcessKind::DecayedStep:
            return ProcessSpec::decayed_step(
                a.decay_rate, a.decay_target == "std" ? DecayTarget::Std : DecayTarget::Var);
        case ProcessKind::LinRegSgd: return ProcessSpec::linreg_sgd(a.lr);
    }
    throw std::logic_error("unreachable");
}

int cmd_simulate(const SimulateArgs& a, uint64_t seed) {
    const ProcessSpec spec = spec_from_args(a);
    Trajectory traj;
    if (spec.kind == ProcessKind::LinRegSgd) {
        traj = simulate_linreg_sgd(a.d, a.lr, a.n, seed).trajectory;
    } else {
        NoiseModel noise = make_isotropic(a.d);
        if (a.noise == "factor_random_square") {
            Matrix factor(a.d, a.d);
            GaussianStream stream(derive_stream(a.factor_seed, 0xfac702ull));
            stream.fill(factor.data.data(), factor.size());
            noise = make_factor_covariance(factor);
        } else if (a.noise != "isotropic") {
            throw ConfigError("unknown noise '" + a.noise + "'");
        }
        traj = simulate(spec, a.n, noise, seed);
    }
    io::write_trajectory(traj, a.out);
    return 0;
}

int cmd_pca(const PcaArgs& a) {
    const Trajectory traj = io::read_trajectory(a.input);
    pca::PcaOptions opts;
    opts.n_cap = a.n_cap;
    const auto res = pca::pca_trajectory(traj, a.k, opts);
    csv::write_spectrum(a.out, res.eigenvalues, res.explained_ratio);
    if (!a.projections_out.empty()) {
        const int comp = a.components > 0 ? std::min(a.components, a.k) : std::min(a.k, 6);
        csv::write_projections(a.projections_out,
                               csv::ProjectionsView(res.projections.data.data(),
                                                    res.projections.rows, res.projections.cols,
                                                    comp));
    }
    return 0;
}

int cmd_predict(const PredictArgs& a) {
    ProcessSpec spec;
    const ProcessKind kind = process_kind_from_name(a.process);
    switch (kind) {
        case ProcessKind::Flat: spec = ProcessSpec::flat(); break;
        case ProcessKind::Momentum: spec = ProcessSpec::momentum(a.gamma); break;
        case ProcessKind::OrnsteinUhlenbeck: spec = ProcessSpec::ornstein_uhlenbeck(a.alpha); break;
        default: throw ConfigError("predict: no closed form for process '" + a.process + "'");
    }
    const auto pred = analytic::predicted_spectrum(spec, a.n, a.k);
    csv::write_spectrum(a.out, pred.eigenvalues, pred.ratios);
    return 0;
}

int cmd_compare(const CompareArgs& a) {
    const auto emp = csv::read_spectrum(a.empirical);
    const auto pred = csv::read_spectrum(a.predicted);
    const auto [lo, hi] = parse_k_range(a.k_range);
    compare::ComparisonReport report;
    report.spectrum =
        compare::spectrum_error_ratios(emp.explained_ratio, pred.explained_ratio, lo, hi);

    if (!a.projections.empty()) {
        const auto cols = csv::read_columns(a.projections);
        const int n = static_cast<int>(cols[0].size());
        for (size_t c = 1; c < cols.size(); c++) {
            const int k = static_cast<int>(c);
            const double lambda =
                k <= static_cast<int>(emp.eigenvalue.size()) ? emp.eigenvalue[k - 1] : 1.0;
            report.projection_corr.push_back(compare::projection_match(cols[c], k, n, lambda));
            report.zero_crossings.push_back(compare::count_zero_crossings(cols[c]));
        }
    }
    if (!a.distance.empty()) {
        if (!(a.alpha > 0.0 && a.alpha < 2.0))
            throw ConfigError("compare: --alpha in (0,2) is required with --distance");
        const auto dist = csv::read_series(a.distance);
        report.has_plateau = true;
        report.plateau.estimate = compare::plateau_estimate(dist, a.tail_fraction);
        report.plateau.predicted = analytic::critical_radius(a.alpha);
        report.plateau.rel_dev =
            std::fabs(report.plateau.estimate - report.plateau.predicted) /
            report.plateau.predicted;
    }

    json out;
    out["spectrum"] = json{{"per_k", report.spectrum.per_k_rel_error},
                           {"median_rel_error", report.spectrum.median_rel_error},
                           {"max_rel_error", report.spectrum.max_rel_error},
                           {"sorted_bias_expected", report.spectrum.sorted_bias_expected},
                           {"k_lo", report.spectrum.k_lo},
                           {"k_hi", report.spectrum.k_hi}};
    if (!report.projection_corr.empty())
        out["projection"] = json{{"per_k_corr", report.projection_corr},
                                 {"zero_crossings", report.zero_crossings}};
    if (report.has_plateau)
        out["plateau"] = json{{"estimate", report.plateau.estimate},
                              {"predicted", report.plateau.predicted},
                              {"rel_dev", report.plateau.rel_dev}};
    if (a.out.empty()) {
        std::printf("%s\n", out.dump(2).c_str());
    } else {
        std::ofstream f(a.out, std::ios::trunc);
        if (!f) throw std::runtime_error("cannot open " + a.out);
        f << out.dump(2) << '\n';
    }
    return 0;
}

int cmd_project(const ProjectArgs& a) {
    const Trajectory traj = io::read_trajectory(a.input);
    io::write_trajectory(io::random_project(traj, a.target_dim, a.proj_seed), a.out);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Trajectory PCA toolkit for high-dimensional stochastic walks"};
    app.require_subcommand(1);
    app.fallthrough();

    uint64_t global_seed = 1;
    std::string out_dir;
    int threads = 0;
    app.add_option("--seed", global_seed, "Default seed for subcommands that take one");
    app.add_option("--out-dir", out_dir, "Output directory for run/compare artifacts");
    app.add_option("--threads", threads, "OpenMP thread count (0 = library default)");

    SimulateArgs sim;
    auto* simulate_cmd = app.add_subcommand("simulate", "Run a stochastic process");
    simulate_cmd->add_option("--process", sim.process, "flat|momentum|ou|decayed_step|linreg_sgd");
    simulate_cmd->add_option("--n", sim.n, "Steps")->check(CLI::PositiveNumber);
    simulate_cmd->add_option("--d", sim.d, "State dimension")->check(CLI::PositiveNumber);
    simulate_cmd->add_option("--gamma", sim.gamma, "Momentum coefficient");
    simulate_cmd->add_option("--alpha", sim.alpha, "Potential strength");
    simulate_cmd->add_option("--decay-rate", sim.decay_rate, "Per-step decay rate");
    simulate_cmd->add_option("--decay-target", sim.decay_target, "std|var");
    simulate_cmd->add_option("--lr", sim.lr, "SGD learning rate");
    simulate_cmd->add_option("--noise", sim.noise, "isotropic|factor_random_square");
    simulate_cmd->add_option("--factor-seed", sim.factor_seed, "Seed for the random factor");
    simulate_cmd->add_option("--out", sim.out, "Output trajectory file")->required();

    PcaArgs pca_args;
    auto* pca_cmd = app.add_subcommand("pca", "PCA of a trajectory file");
    pca_cmd->add_option("--in", pca_args.input, "Input trajectory")->required();
    pca_cmd->add_option("--k", pca_args.k, "Components")->check(CLI::PositiveNumber);
    pca_cmd->add_option("--n-cap", pca_args.n_cap, "Override the Gram-route row cap");
    pca_cmd->add_option("--components", pca_args.components, "Projection columns to write");
    pca_cmd->add_option("--out", pca_args.out, "Spectrum CSV")->required();
    pca_cmd->add_option("--projections-out", pca_args.projections_out, "Projection CSV");

    PredictArgs pre;
    auto* predict_cmd = app.add_subcommand("predict", "Closed-form spectrum");
    predict_cmd->add_option("--process", pre.process, "flat|momentum|ou");
    predict_cmd->add_option("--n", pre.n, "Steps")->check(CLI::PositiveNumber);
    predict_cmd->add_option("--k", pre.k, "Components")->check(CLI::PositiveNumber);
    predict_cmd->add_option("--gamma", pre.gamma, "Momentum coefficient");
    predict_cmd->add_option("--alpha", pre.alpha, "Potential strength");
    predict_cmd->add_option("--out", pre.out, "Output CSV")->required();

    CompareArgs cmp;
    auto* compare_cmd = app.add_subcommand("compare", "Empirical vs predicted spectra");
    compare_cmd->add_option("--empirical", cmp.empirical, "Empirical spectrum CSV")->required();
    compare_cmd->add_option("--predicted", cmp.predicted, "Predicted spectrum CSV")->required();
    compare_cmd->add_option("--k-range", cmp.k_range, "lo:hi (default 1:20)");
    compare_cmd->add_option("--projections", cmp.projections, "Projection CSV for shape checks");
    compare_cmd->add_option("--distance", cmp.distance, "Distance CSV for the plateau check");
    compare_cmd->add_option("--alpha", cmp.alpha, "OU alpha for the plateau prediction");
    compare_cmd->add_option("--tail-fraction", cmp.tail_fraction, "Plateau tail fraction");
    compare_cmd->add_option("--out", cmp.out, "Report JSON (stdout when omitted)");

    ProjectArgs proj;
    auto* project_cmd = app.add_subcommand("project", "Random Gaussian projection");
    project_cmd->add_option("--in", proj.input, "Input trajectory")->required();
    project_cmd->add_option("--target-dim", proj.target_dim, "Output dimension")
        ->required()
        ->check(CLI::PositiveNumber);
    project_cmd->add_option("--proj-seed", proj.proj_seed, "Projection seed");
    project_cmd->add_option("--out", proj.out, "Output trajectory file")->required();

    std::string config_path;
    auto* run_cmd = app.add_subcommand("run", "Config-driven experiment");
    run_cmd->add_option("--config", config_path, "Experiment config JSON")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) ? kExitConfig : 0;
    }

#ifdef _OPENMP
    if (threads > 0) omp_set_num_threads(threads);
#endif

    try {
        if (*simulate_cmd) return cmd_simulate(sim, global_seed);
        if (*pca_cmd) return cmd_pca(pca_args);
        if (*predict_cmd) return cmd_predict(pre);
        if (*compare_cmd) return cmd_compare(cmp);
        if (*project_cmd) return cmd_project(proj);
        if (*run_cmd) {
            const ExperimentConfig config = load_config(config_path);
            const fs::path dir = out_dir.empty() ? fs::path(config.out_dir) : fs::path(out_dir);
            run_experiment(config, dir);
            return 0;
        }
    } catch (const ConfigError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitConfig;
    } catch (const DivergenceError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitDivergence;
    } catch (const std::invalid_argument& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitConfig;
    } catch (const std::domain_error& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitConfig;
    } catch (const std::runtime_error& e) {
        const std::string what = e.what();
        std::fprintf(stderr, "error: %s\n", what.c_str());
        return what.find("non-finite state") != std::string::npos ? kExitDivergence : kExitIo;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
    return 0;
}
