#include "walkpca/experiment.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <json.hpp>

#include "walkpca/csv.hpp"
#include "walkpca/pca.hpp"
#include "walkpca/trajectory_io.hpp"

namespace walkpca {

using nlohmann::json;

namespace {

const char* const kAllowedKeys[] = {
    "version", "name", "process", "n", "d", "gamma", "alpha", "decay_rate",
    "decay_applies_to", "lr", "noise", "factor_seed", "seeds", "k", "stride",
    "project_dim", "project_seed", "proj_components", "pairs", "compare",
    "k_lo", "k_hi", "tail_fraction", "burn_in", "averaging", "sgd_fit_window",
    "decayed_walk", "decayed_walk_n", "decayed_walk_d", "decayed_walk_k", "out_dir"};

std::vector<double> as_double_list(const json& v, const std::string& key) {
    std::vector<double> out;
    if (v.is_number()) {
        out.push_back(v.get<double>());
    } else if (v.is_array()) {
        for (const auto& e : v) {
            if (!e.is_number()) throw ConfigError("config key '" + key + "': expected numbers");
            out.push_back(e.get<double>());
        }
    } else {
        throw ConfigError("config key '" + key + "': expected a number or array of numbers");
    }
    return out;
}

}  // namespace

void ExperimentConfig::validate() const {
    if (seeds.empty()) throw ConfigError("config: seed list must be non-empty");
    if (n < 2) throw ConfigError("config: n must be >= 2");
    if (d < 1) throw ConfigError("config: d must be >= 1");
    if (stride < 1 || stride > n) throw ConfigError("config: stride must be in [1, n]");
    if (burn_in < 0) throw ConfigError("config: burn_in must be >= 0");
    if (k < 0) throw ConfigError("config: k must be >= 0");
    const int analyzed_n = n / stride;
    if (k > 0 && analyzed_n < 2) throw ConfigError("config: fewer than 2 rows after stride");
    if (k > analyzed_n && k > 0) throw ConfigError("config: k exceeds rows after stride");
    if (!(tail_fraction > 0.0 && tail_fraction <= 1.0))
        throw ConfigError("config: tail_fraction must be in (0, 1]");
    if (noise != "isotropic" && noise != "factor_random_square")
        throw ConfigError("config: unknown noise '" + noise + "'");
    if (k > 0 && proj_components > k)
        throw ConfigError("config: proj_components exceeds k");
    for (const auto& [a, b] : pairs)
        if (a < 1 || b < 1 || a > proj_components || b > proj_components)
            throw ConfigError("config: pair component outside proj_components");
    if (compare_enabled && k > 0) {
        if (k_lo < 1 || k_hi < k_lo) throw ConfigError("config: bad k range");
        if (k_hi > k) throw ConfigError("config: k_hi exceeds k");
    }
    switch (process) {
        case ProcessKind::Momentum:
            if (gammas.empty()) throw ConfigError("config: momentum requires gamma");
            for (double g : gammas)
                if (!(g >= 0.0 && g < 1.0)) throw ConfigError("config: gamma must be in [0, 1)");
            if (!alphas.empty()) throw ConfigError("config: alpha is only for the ou process");
            break;
        case ProcessKind::OrnsteinUhlenbeck:
            if (alphas.empty()) throw ConfigError("config: ou requires alpha");
            for (double a : alphas)
                if (!(a > 0.0 && a < 2.0)) throw ConfigError("config: alpha must be in (0, 2)");
            if (!gammas.empty()) throw ConfigError("config: gamma is only for the momentum process");
            break;
        default:
            if (!gammas.empty()) throw ConfigError("config: gamma is only for the momentum process");
            if (!alphas.empty()) throw ConfigError("config: alpha is only for the ou process");
            break;
    }
    if (process == ProcessKind::DecayedStep && !(decay_rate > 0.0 && decay_rate <= 1.0))
        throw ConfigError("config: decay_rate must be in (0, 1]");
    if (process == ProcessKind::LinRegSgd) {
        if (!(lr > 0.0)) throw ConfigError("config: lr must be > 0");
        if (sgd_fit_window < 1 || sgd_fit_window > n / 2)
            throw ConfigError("config: sgd_fit_window must be in [1, n/2]");
    }
    if (decayed_walk && process != ProcessKind::LinRegSgd)
        throw ConfigError("config: decayed_walk requires the linreg_sgd process");
    if (decayed_walk) {
        if (decayed_walk_n < 2 || decayed_walk_d < 1)
            throw ConfigError("config: bad decayed_walk dimensions");
        if (decayed_walk_k < 1 || decayed_walk_k > decayed_walk_n)
            throw ConfigError("config: bad decayed_walk_k");
    }
}

ExperimentConfig parse_config(const std::string& json_text) {
    json doc;
    try {
        doc = json::parse(json_text);
    } catch (const json::parse_error& e) {
        throw ConfigError(std::string("config: invalid JSON: ") + e.what());
    }
    if (!doc.is_object()) throw ConfigError("config: expected a JSON object");
    for (const auto& [key, value] : doc.items()) {
        const bool known = std::any_of(std::begin(kAllowedKeys), std::end(kAllowedKeys),
                                       [&](const char* k) { return key == k; });
        if (!known) throw ConfigError("config: unknown key '" + key + "'");
    }
    if (!doc.contains("version") || !doc["version"].is_number_integer() ||
        doc["version"].get<int>() != 1)
        throw ConfigError("config: missing or unsupported version (expected 1)");

    ExperimentConfig c;
    try {
        if (doc.contains("name")) c.name = doc["name"].get<std::string>();
        if (doc.contains("process"))
            c.process = process_kind_from_name(doc["process"].get<std::string>());
        if (doc.contains("n")) c.n = doc["n"].get<int>();
        if (doc.contains("d")) c.d = doc["d"].get<int>();
        if (doc.contains("gamma")) c.gammas = as_double_list(doc["gamma"], "gamma");
        if (doc.contains("alpha")) c.alphas = as_double_list(doc["alpha"], "alpha");
        if (doc.contains("decay_rate")) c.decay_rate = doc["decay_rate"].get<double>();
        if (doc.contains("decay_applies_to")) {
            const auto s = doc["decay_applies_to"].get<std::string>();
            if (s == "std") c.decay_applies_to = DecayTarget::Std;
            else if (s == "var") c.decay_applies_to = DecayTarget::Var;
            else throw ConfigError("config: decay_applies_to must be 'std' or 'var'");
        }
        if (doc.contains("lr")) c.lr = doc["lr"].get<double>();
        if (doc.contains("noise")) c.noise = doc["noise"].get<std::string>();
        if (doc.contains("factor_seed")) c.factor_seed = doc["factor_seed"].get<uint64_t>();
        if (doc.contains("seeds")) {
            c.seeds.clear();
            for (const auto& s : doc["seeds"]) c.seeds.push_back(s.get<uint64_t>());
        }
        if (doc.contains("k")) c.k = doc["k"].get<int>();
        if (doc.contains("stride")) c.stride = doc["stride"].get<int>();
        if (doc.contains("project_dim")) c.project_dim = doc["project_dim"].get<int>();
        if (doc.contains("project_seed")) c.project_seed = doc["project_seed"].get<uint64_t>();
        if (doc.contains("proj_components")) c.proj_components = doc["proj_components"].get<int>();
        if (doc.contains("pairs")) {
            for (const auto& p : doc["pairs"]) {
                if (!p.is_array() || p.size() != 2)
                    throw ConfigError("config: pairs entries must be [i, j]");
                c.pairs.emplace_back(p[0].get<int>(), p[1].get<int>());
            }
        }
        if (doc.contains("compare")) c.compare_enabled = doc["compare"].get<bool>();
        if (doc.contains("k_lo")) c.k_lo = doc["k_lo"].get<int>();
        if (doc.contains("k_hi")) c.k_hi = doc["k_hi"].get<int>();
        if (doc.contains("tail_fraction")) c.tail_fraction = doc["tail_fraction"].get<double>();
        if (doc.contains("burn_in")) c.burn_in = doc["burn_in"].get<int>();
        if (doc.contains("averaging")) c.averaging = doc["averaging"].get<bool>();
        if (doc.contains("sgd_fit_window")) c.sgd_fit_window = doc["sgd_fit_window"].get<int>();
        if (doc.contains("decayed_walk")) c.decayed_walk = doc["decayed_walk"].get<bool>();
        if (doc.contains("decayed_walk_n")) c.decayed_walk_n = doc["decayed_walk_n"].get<int>();
        if (doc.contains("decayed_walk_d")) c.decayed_walk_d = doc["decayed_walk_d"].get<int>();
        if (doc.contains("decayed_walk_k")) c.decayed_walk_k = doc["decayed_walk_k"].get<int>();
        if (doc.contains("out_dir")) c.out_dir = doc["out_dir"].get<std::string>();
    } catch (const json::exception& e) {
        throw ConfigError(std::string("config: bad value type: ") + e.what());
    } catch (const std::invalid_argument& e) {
        throw ConfigError(std::string("config: ") + e.what());
    }
    c.validate();
    return c;
}

ExperimentConfig load_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("config: cannot open " + path.string());
    std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    return parse_config(text);
}

namespace {

Trajectory drop_rows(const Trajectory& traj, int count) {
    if (count <= 0) return traj;
    if (count >= traj.n() - 1) throw std::invalid_argument("burn-in leaves fewer than 2 rows");
    Trajectory out;
    out.states = Matrix(traj.n() - count, traj.d());
    std::copy(traj.states.row(count), traj.states.row(count) + out.states.size(),
              out.states.data.data());
    out.meta = traj.meta;
    return out;
}

NoiseModel build_noise(const ExperimentConfig& cfg) {
    if (cfg.noise == "isotropic") return make_isotropic(cfg.d);
    Matrix factor(cfg.d, cfg.d);
    GaussianStream stream(derive_stream(cfg.factor_seed, 0xfac702ull));
    stream.fill(factor.data.data(), factor.size());
    return make_factor_covariance(factor);
}

ProcessSpec build_spec(const ExperimentConfig& cfg, double param) {
    switch (cfg.process) {
        case ProcessKind::Flat: return ProcessSpec::flat();
        case ProcessKind::Momentum: return ProcessSpec::momentum(param);
        case ProcessKind::OrnsteinUhlenbeck: return ProcessSpec::ornstein_uhlenbeck(param);
        case ProcessKind::DecayedStep:
            return ProcessSpec::decayed_step(cfg.decay_rate, cfg.decay_applies_to);
        case ProcessKind::LinRegSgd: return ProcessSpec::linreg_sgd(cfg.lr);
    }
    throw std::logic_error("unreachable");
}

json spectrum_metrics_json(const compare::SpectrumMetrics& m) {
    return json{{"per_k", m.per_k_rel_error},
                {"median_rel_error", m.median_rel_error},
                {"max_rel_error", m.max_rel_error},
                {"sorted_bias_expected", m.sorted_bias_expected},
                {"k_lo", m.k_lo},
                {"k_hi", m.k_hi}};
}

json report_json(const compare::ComparisonReport& r, const std::string& averaging_file) {
    json out;
    if (!r.spectrum.per_k_rel_error.empty()) out["spectrum"] = spectrum_metrics_json(r.spectrum);
    if (!r.spectrum_absolute.per_k_rel_error.empty())
        out["spectrum_absolute"] = spectrum_metrics_json(r.spectrum_absolute);
    if (!r.projection_corr.empty())
        out["projection"] = json{{"per_k_corr", r.projection_corr},
                                 {"zero_crossings", r.zero_crossings}};
    if (r.has_plateau)
        out["plateau"] = json{{"estimate", r.plateau.estimate},
                              {"predicted", r.plateau.predicted},
                              {"rel_dev", r.plateau.rel_dev}};
    if (r.has_averaging)
        out["averaging"] = json{{"series_file", averaging_file},
                                {"n_c", r.averaging_mixing_steps}};
    return out;
}

void write_json(const std::filesystem::path& path, const json& doc) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
    out << doc.dump(2) << '\n';
    out.flush();
    if (!out) throw std::runtime_error("write failed: " + path.string());
}

struct RunContext {
    const ExperimentConfig& cfg;
    std::filesystem::path dir;
};

// Analyses shared by every run: distance series, optional averaging
// diagnostics, optional PCA with spectrum comparison and tableau data.
SeedResult analyze_trajectory(const RunContext& ctx, const Trajectory& traj, uint64_t seed,
                              const std::string& tag, double param, ProcessKind kind,
                              int pca_k) {
    const ExperimentConfig& cfg = ctx.cfg;
    SeedResult result;
    result.seed = seed;

    const auto dist = distance_from_origin(traj);
    csv::write_series(ctx.dir / ("distance_" + tag + ".csv"), "distance", dist);

    std::string averaging_file;
    if (cfg.averaging) {
        const std::vector<double> origin(traj.d(), 0.0);
        const auto err = compare::iterate_average_error(traj, origin);
        averaging_file = "averaging_" + tag + ".csv";
        csv::write_series(ctx.dir / averaging_file, "error", err);
        result.report.has_averaging = true;
        if (kind == ProcessKind::OrnsteinUhlenbeck) {
            const double n_c = analytic::mixing_steps(param);
            result.report.averaging_mixing_steps = n_c;
            const int i10 = static_cast<int>(std::lround(10.0 * n_c));
            const int i100 = static_cast<int>(std::lround(100.0 * n_c));
            if (i10 >= 1 && i100 <= static_cast<int>(err.size()) && err[i10 - 1] > 0.0)
                result.averaging_ratio = err[i100 - 1] / err[i10 - 1];
        }
    }

    if (pca_k > 0) {
        const auto res = pca::pca_trajectory(traj, pca_k);
        result.eigenvalues = res.eigenvalues;
        result.ratios = res.explained_ratio;
        result.total_variance = res.total_variance;
        csv::write_spectrum(ctx.dir / ("spectrum_" + tag + ".csv"), res.eigenvalues,
                            res.explained_ratio);
        const int comp = std::min(cfg.proj_components, pca_k);
        if (comp > 0)
            csv::write_projections(ctx.dir / ("projections_" + tag + ".csv"),
                                   csv::ProjectionsView(res.projections.data.data(),
                                                        res.projections.rows,
                                                        res.projections.cols, comp));
        const bool closed_form = kind == ProcessKind::Flat || kind == ProcessKind::Momentum ||
                                 kind == ProcessKind::OrnsteinUhlenbeck;
        if (cfg.compare_enabled && closed_form) {
            ProcessSpec spec = build_spec(cfg, param);
            spec.kind = kind;
            const auto pred =
                analytic::predicted_spectrum(spec, traj.n(), std::min(pca_k, traj.n() - 1));
            const int hi = std::min(cfg.k_hi, static_cast<int>(pred.ratios.size()));
            result.report.spectrum = compare::spectrum_error(
                res.eigenvalues, res.total_variance, pred, cfg.k_lo, hi);
            result.report.spectrum_absolute = compare::spectrum_error_absolute(
                res.eigenvalues, pred.eigenvalues, cfg.k_lo, hi);
            for (int k = 1; k <= comp; k++) {
                if (res.eigenvalues[k - 1] <= 0.0) {
                    result.report.projection_corr.push_back(0.0);
                    result.report.zero_crossings.push_back(0);
                    continue;
                }
                const auto col = res.projections.data.data() + (k - 1);
                std::vector<double> series(traj.n());
                for (int t = 0; t < traj.n(); t++)
                    series[t] = col[static_cast<size_t>(t) * res.projections.cols];
                result.report.projection_corr.push_back(
                    compare::projection_match(series, k, traj.n(), res.eigenvalues[k - 1]));
                result.report.zero_crossings.push_back(compare::count_zero_crossings(series));
            }
            if (kind == ProcessKind::OrnsteinUhlenbeck) {
                result.report.has_plateau = true;
                result.report.plateau.estimate = compare::plateau_estimate(dist, cfg.tail_fraction);
                result.report.plateau.predicted = analytic::critical_radius(param);
                result.report.plateau.rel_dev =
                    std::fabs(result.report.plateau.estimate - result.report.plateau.predicted) /
                    result.report.plateau.predicted;
            }
        }
    }

    write_json(ctx.dir / ("report_" + tag + ".json"),
               report_json(result.report, averaging_file));
    return result;
}

SeedResult run_sgd_seed(const RunContext& ctx, uint64_t seed, const std::string& tag,
                        std::vector<double>* fitted_rates, int* analyzed_n) {
    const ExperimentConfig& cfg = ctx.cfg;
    const SgdRun run = simulate_linreg_sgd(cfg.d, cfg.lr, cfg.n, seed);
    csv::write_series(ctx.dir / ("loss_" + tag + ".csv"), "loss", run.losses);
    // Fit on full-resolution step norms, before any subsampling.
    const auto norms = step_norms(run.trajectory);
    csv::write_series(ctx.dir / ("step_norms_" + tag + ".csv"), "step_norm", norms);

    Trajectory traj = run.trajectory;
    if (cfg.stride > 1) traj = io::subsample(traj, cfg.stride);
    if (cfg.project_dim > 0) traj = io::random_project(traj, cfg.project_dim, cfg.project_seed);
    *analyzed_n = traj.n();
    const int pca_k = std::min(cfg.k, traj.n());
    SeedResult result =
        analyze_trajectory(ctx, traj, seed, tag, 0.0, ProcessKind::LinRegSgd, pca_k);

    const auto blocks = block_means(norms, cfg.sgd_fit_window);
    const auto fit = fit_exponential_decay(blocks);
    result.sgd_fit_rate = fit.rate;
    result.sgd_fit_rate_per_step = std::pow(fit.rate, 1.0 / cfg.sgd_fit_window);
    result.sgd_fit_r2 = fit.r_squared;
    if (fitted_rates) fitted_rates->push_back(result.sgd_fit_rate_per_step);
    return result;
}

void aggregate_param(ParamResult& pr, const std::filesystem::path& dir,
                     const ExperimentConfig& cfg, ProcessKind kind, int pca_k, int analyzed_n) {
    if (pca_k <= 0 || pr.seeds.empty()) return;
    const size_t klen = pr.seeds.front().ratios.size();
    pr.mean_ratios.assign(klen, 0.0);
    pr.mean_eigenvalues.assign(klen, 0.0);
    for (const auto& s : pr.seeds)
        for (size_t i = 0; i < klen; i++) {
            pr.mean_ratios[i] += s.ratios[i];
            pr.mean_eigenvalues[i] += s.eigenvalues[i];
        }
    for (size_t i = 0; i < klen; i++) {
        pr.mean_ratios[i] /= static_cast<double>(pr.seeds.size());
        pr.mean_eigenvalues[i] /= static_cast<double>(pr.seeds.size());
    }
    const std::string suffix = pr.tag.empty() ? "mean" : "mean_" + pr.tag;
    csv::write_spectrum(dir / ("spectrum_" + suffix + ".csv"), pr.mean_eigenvalues,
                        pr.mean_ratios);

    const bool closed_form = kind == ProcessKind::Flat || kind == ProcessKind::Momentum ||
                             kind == ProcessKind::OrnsteinUhlenbeck;
    if (closed_form) {
        ProcessSpec spec;
        spec.kind = kind;
        spec.gamma = kind == ProcessKind::Momentum ? pr.param : 0.0;
        spec.alpha = kind == ProcessKind::OrnsteinUhlenbeck ? pr.param : 0.0;
        const auto pred =
            analytic::predicted_spectrum(spec, analyzed_n, std::min(pca_k, analyzed_n - 1));
        const std::string pname = pr.tag.empty() ? "predicted" : "predicted_" + pr.tag;
        csv::write_spectrum(dir / (pname + ".csv"), pred.eigenvalues, pred.ratios);
        if (cfg.compare_enabled) {
            const int hi = std::min(cfg.k_hi, static_cast<int>(pred.ratios.size()));
            pr.mean_spectrum_metrics =
                compare::spectrum_error_ratios(pr.mean_ratios, pred.ratios, cfg.k_lo, hi);
            pr.has_mean_metrics = true;
        }
    }
}

}  // namespace

ExperimentResult run_experiment(const ExperimentConfig& config,
                                const std::filesystem::path& out_dir) {
    config.validate();
    std::filesystem::create_directories(out_dir);
    RunContext ctx{config, out_dir};

    // Parameter sweep: one entry for flat/sgd/decayed, one per gamma/alpha otherwise.
    std::vector<std::pair<double, std::string>> sweep;
    if (config.process == ProcessKind::Momentum)
        for (double g : config.gammas) sweep.emplace_back(g, "gamma" + csv::format_double(g));
    else if (config.process == ProcessKind::OrnsteinUhlenbeck)
        for (double a : config.alphas) sweep.emplace_back(a, "alpha" + csv::format_double(a));
    else
        sweep.emplace_back(0.0, "");

    ExperimentResult result;
    json top;
    top["name"] = config.name;
    if (!config.pairs.empty()) {
        json jp = json::array();
        for (auto [a, b] : config.pairs) jp.push_back(json::array({a, b}));
        top["pairs"] = jp;
    }
    json params_json = json::array();

    for (const auto& [param, ptag] : sweep) {
        ParamResult pr;
        pr.param = param;
        pr.tag = ptag;
        std::vector<double> fitted_rates;
        int analyzed_n = 0;

        for (uint64_t seed : config.seeds) {
            const std::string tag =
                (ptag.empty() ? "" : ptag + "_") + "seed" + std::to_string(seed);
            SeedResult sr;
            if (config.process == ProcessKind::LinRegSgd) {
                sr = run_sgd_seed(ctx, seed, tag, &fitted_rates, &analyzed_n);
            } else {
                const ProcessSpec spec = build_spec(config, param);
                const NoiseModel noise = build_noise(config);
                Trajectory traj;
                try {
                    traj = simulate(spec, config.n + config.burn_in, noise, seed);
                } catch (const std::runtime_error& e) {
                    throw DivergenceError(e.what());
                }
                traj = drop_rows(traj, config.burn_in);
                if (config.stride > 1) traj = io::subsample(traj, config.stride);
                if (config.project_dim > 0)
                    traj = io::random_project(traj, config.project_dim, config.project_seed);
                analyzed_n = traj.n();
                const int pca_k = std::min(config.k, analyzed_n);
                sr = analyze_trajectory(ctx, traj, seed, tag, param, config.process, pca_k);
            }
            pr.seeds.push_back(std::move(sr));
        }

        aggregate_param(pr, out_dir, config, config.process, std::min(config.k, analyzed_n),
                        analyzed_n);

        // decay_fig follow-up: a decayed-step walk at the fitted rate.
        if (config.decayed_walk && !fitted_rates.empty()) {
            double rate = 0.0;
            for (double r : fitted_rates) rate += r;
            rate /= static_cast<double>(fitted_rates.size());
            rate = std::clamp(rate, 1e-6, 1.0);
            const ProcessSpec spec = ProcessSpec::decayed_step(rate, DecayTarget::Var);
            const NoiseModel noise = make_isotropic(config.decayed_walk_d);
            const Trajectory walk =
                simulate(spec, config.decayed_walk_n, noise, config.seeds.front());
            const auto res = pca::pca_trajectory(walk, config.decayed_walk_k);
            csv::write_spectrum(out_dir / "spectrum_decayed_walk.csv", res.eigenvalues,
                                res.explained_ratio);
            csv::write_projections(out_dir / "projections_decayed_walk.csv",
                                   csv::ProjectionsView(res.projections.data.data(),
                                                        res.projections.rows,
                                                        res.projections.cols,
                                                        config.decayed_walk_k));
            top["decayed_walk_rate"] = rate;
        }

        json pj;
        pj["param"] = param;
        pj["tag"] = ptag;
        json seeds_json = json::array();
        for (const auto& s : pr.seeds) {
            json sj;
            sj["seed"] = s.seed;
            if (!s.ratios.empty()) {
                sj["rho1"] = s.ratios.front();
                sj["total_variance"] = s.total_variance;
            }
            if (!s.report.projection_corr.empty()) {
                sj["projection_corr"] = s.report.projection_corr;
                sj["zero_crossings"] = s.report.zero_crossings;
            }
            if (!s.report.spectrum.per_k_rel_error.empty())
                sj["median_rel_error"] = s.report.spectrum.median_rel_error;
            if (!s.report.spectrum_absolute.per_k_rel_error.empty())
                sj["median_rel_error_absolute"] = s.report.spectrum_absolute.median_rel_error;
            if (s.report.has_plateau)
                sj["plateau_rel_dev"] = s.report.plateau.rel_dev;
            if (s.averaging_ratio > 0.0) sj["averaging_ratio"] = s.averaging_ratio;
            if (s.sgd_fit_r2 > 0.0) {
                sj["sgd_fit_rate_per_step"] = s.sgd_fit_rate_per_step;
                sj["sgd_fit_r2"] = s.sgd_fit_r2;
            }
            seeds_json.push_back(sj);
        }
        pj["seeds"] = seeds_json;
        if (pr.has_mean_metrics)
            pj["mean_spectrum"] = spectrum_metrics_json(pr.mean_spectrum_metrics);
        params_json.push_back(pj);

        result.params.push_back(std::move(pr));
    }

    top["params"] = params_json;
    write_json(out_dir / "report.json", top);
    return result;
}

}  // namespace walkpca
