// Acceptance suite: runs the bundled experiment configs at full scale and
// checks the headline numbers, printing one PASS/FAIL line per criterion.
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <string>
#include <sys/wait.h>
#include <vector>

#include "walkpca/analytic.hpp"
#include "walkpca/compare.hpp"
#include "walkpca/experiment.hpp"
#include "walkpca/pca.hpp"

using namespace walkpca;
namespace fs = std::filesystem;
using clock_type = std::chrono::steady_clock;

namespace {

int g_failures = 0;

void report(const std::string& id, bool pass, const std::string& detail) {
    std::printf("%-4s %s  %s\n", id.c_str(), pass ? "PASS" : "FAIL", detail.c_str());
    std::fflush(stdout);
    if (!pass) g_failures++;
}

void info(const std::string& id, const std::string& detail) {
    std::printf("%-4s INFO  %s\n", id.c_str(), detail.c_str());
    std::fflush(stdout);
}

std::string fmt(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.4g", v);
    return buf;
}

double median(std::vector<double> v) {
    std::sort(v.begin(), v.end());
    return v.size() % 2 ? v[v.size() / 2] : 0.5 * (v[v.size() / 2 - 1] + v[v.size() / 2]);
}

std::string read_file(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    if (!in) return {};
    return std::string((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
}

const ParamResult* find_param(const ExperimentResult& res, double value) {
    for (const auto& p : res.params)
        if (std::fabs(p.param - value) < 1e-12) return &p;
    return nullptr;
}

// ----- A1 + A2: flat-walk spectrum and Lissajous projections -----

void run_a1_a2(const ExperimentResult& flat, double elapsed_s) {
    const ParamResult& p = flat.params.front();
    const int seeds = static_cast<int>(p.seeds.size());

    double mean_rho1 = 0.0;
    for (const auto& s : p.seeds) mean_rho1 += s.ratios.front();
    mean_rho1 /= seeds;
    double sum12 = 0.0;
    for (int k = 0; k < 12; k++) sum12 += p.mean_ratios[k];
    const double med = p.mean_spectrum_metrics.median_rel_error;

    const bool a1 = mean_rho1 >= 0.58 && mean_rho1 <= 0.64 && sum12 >= 0.93 && med <= 0.05 &&
                    elapsed_s <= 120.0;
    report("A1", a1,
           "flat spectrum: mean rho1=" + fmt(mean_rho1) + " (gate [0.58,0.64]), sum(k<=12)=" +
               fmt(sum12) + " (>=0.93), median rel err k<=20=" + fmt(med) +
               " (<=0.05), runtime=" + fmt(elapsed_s) + "s (<=120)");

    int corr_ok = 0, cross_ok = 0;
    for (const auto& s : p.seeds) {
        bool all_corr = true;
        for (int k = 1; k <= 4; k++) all_corr &= s.report.projection_corr[k - 1] >= 0.9;
        corr_ok += all_corr;
        bool all_cross = true;
        for (int k = 1; k <= 5; k++) all_cross &= s.report.zero_crossings[k - 1] == k;
        cross_ok += all_cross;
    }
    const bool a2 = corr_ok >= 4 && cross_ok >= 4;
    report("A2", a2,
           "lissajous projections: corr>=0.9 for k in 1..4 on " + std::to_string(corr_ok) + "/" +
               std::to_string(seeds) + " seeds, crossings==k for k<=5 on " +
               std::to_string(cross_ok) + "/" + std::to_string(seeds) + " seeds (>=4 required)");
}

// ----- A3: momentum spectra -----

void run_a3(const ExperimentResult& momentum) {
    bool pass = true;
    std::string detail = "momentum eigenvalues vs formula, median rel err k<=100:";
    for (double gamma : {0.5, 0.9}) {
        const ParamResult* p = find_param(momentum, gamma);
        if (!p || p->seeds.empty() ||
            p->seeds[0].report.spectrum_absolute.per_k_rel_error.empty()) {
            pass = false;
            continue;
        }
        const double med = p->seeds[0].report.spectrum_absolute.median_rel_error;
        pass &= med <= 0.10;
        detail += " gamma=" + fmt(gamma) + ": " + fmt(med);
    }
    report("A3", pass, detail + " (<=0.10)");
    if (const ParamResult* p = find_param(momentum, 0.999)) {
        const auto& m = p->seeds[0].report.spectrum_absolute;
        info("A3", "gamma=0.999 reported only: median=" + fmt(m.median_rel_error) +
                       ", low-k rel errs k=1..3: " + fmt(m.per_k_rel_error[0]) + ", " +
                       fmt(m.per_k_rel_error[1]) + ", " + fmt(m.per_k_rel_error[2]) +
                       " (walk has not settled; deviation expected)");
    }
}

// ----- A4 + A5: OU critical radius and spectra -----

void run_a4_a5(const ExperimentResult& ou) {
    bool a4 = true;
    std::string d4 = "ou plateau vs r_c:";
    const struct { double alpha, r_c; } plateau_cases[] = {{0.01, 7.0888}, {0.1, 2.294}};
    for (const auto& c : plateau_cases) {
        const ParamResult* p = find_param(ou, c.alpha);
        if (!p || p->seeds.empty() || !p->seeds[0].report.has_plateau) {
            a4 = false;
            continue;
        }
        const double est = p->seeds[0].report.plateau.estimate;
        const double dev = std::fabs(est - c.r_c) / c.r_c;
        a4 &= dev <= 0.05;
        d4 += " alpha=" + fmt(c.alpha) + ": tail mean=" + fmt(est) + " vs " + fmt(c.r_c) +
              " (dev " + fmt(dev) + ")";
    }
    report("A4", a4, d4 + " (<=0.05)");

    bool a5 = true;
    std::string d5 = "ou eigenvalues vs exact formula, median rel err k in [1,50]:";
    for (double alpha : {1e-3, 1e-2}) {
        const ParamResult* p = find_param(ou, alpha);
        if (!p || p->seeds.empty() ||
            p->seeds[0].report.spectrum_absolute.per_k_rel_error.empty()) {
            a5 = false;
            continue;
        }
        const double med = p->seeds[0].report.spectrum_absolute.median_rel_error;
        a5 &= med <= 0.10;
        d5 += " alpha=" + fmt(alpha) + ": " + fmt(med);
    }
    const ParamResult* flat_alpha = find_param(ou, 0.9);
    const bool flagged = flat_alpha && !flat_alpha->seeds.empty() &&
                         flat_alpha->seeds[0].report.spectrum_absolute.sorted_bias_expected;
    a5 &= flagged;
    report("A5", a5,
           d5 + " (<=0.10); alpha=0.9 sorted-eigenvalue deviation flagged: " +
               (flagged ? "yes" : "no"));
    if (flat_alpha && !flat_alpha->seeds.empty())
        info("A5", "alpha=0.9 median rel err (reported only): " +
                       fmt(flat_alpha->seeds[0].report.spectrum_absolute.median_rel_error));
}

// ----- A6: iterate averaging -----

void run_a6(const ExperimentResult& polyak) {
    const ParamResult* p = find_param(polyak, 0.05);
    std::vector<double> ratios;
    if (p)
        for (const auto& s : p->seeds)
            if (s.averaging_ratio > 0.0) ratios.push_back(s.averaging_ratio);
    if (ratios.empty()) {
        report("A6", false, "iterate averaging: no ratios computed");
        return;
    }
    const double med = median(ratios);
    report("A6", med >= 0.1 && med <= 0.7,
           "iterate averaging: median error(100 n_c)/error(10 n_c) = " + fmt(med) +
               " over " + std::to_string(ratios.size()) + " seeds (gate [0.1, 0.7], target 0.316)");
}

// ----- A7: oracle equivalence -----

void run_a7() {
    const int n = 50, d = 20;
    int checked = 0;
    bool eig_ok = true, proj_ok = true, sum_ok = true;
    for (int inst = 0; inst < 20; inst++) {
        const uint64_t seed = 1000 + inst;
        const NoiseModel noise = make_isotropic(d);
        Trajectory traj;
        switch (inst % 5) {
            case 0: traj = simulate(ProcessSpec::flat(), n, noise, seed); break;
            case 1: traj = simulate(ProcessSpec::momentum(0.6), n, noise, seed); break;
            case 2: traj = simulate(ProcessSpec::ornstein_uhlenbeck(0.3), n, noise, seed); break;
            case 3:
                traj = simulate(ProcessSpec::decayed_step(0.97, DecayTarget::Std), n, noise, seed);
                break;
            default: traj = simulate_linreg_sgd(d, 5e-3, n, seed).trajectory; break;
        }
        const auto gram_res = pca::pca_trajectory(traj, d);
        const auto direct_res = pca::pca_direct(traj, d);
        const double lead = direct_res.eigenvalues.front();
        for (int k = 0; k < d; k++) {
            const double a = gram_res.eigenvalues[k], b = direct_res.eigenvalues[k];
            if (b >= 1e-6 * lead) eig_ok &= std::fabs(a - b) / b <= 1e-8;
        }
        const double scale = std::sqrt(lead);
        for (int k = 0; k < d; k++) {
            if (direct_res.eigenvalues[k] < 1e-6 * lead) continue;
            double dot = 0.0;
            for (int t = 0; t < n; t++)
                dot += gram_res.projections.at(t, k) * direct_res.projections.at(t, k);
            const double sign = dot >= 0.0 ? 1.0 : -1.0;
            for (int t = 0; t < n; t++) {
                const double diff =
                    gram_res.projections.at(t, k) - sign * direct_res.projections.at(t, k);
                proj_ok &= std::fabs(diff) <= 1e-6 * scale;
            }
        }
        double sum = 0.0;
        for (double v : gram_res.eigenvalues) sum += v;
        sum_ok &= std::fabs(sum - gram_res.total_variance) <= 1e-9 * gram_res.total_variance;
        sum_ok &=
            std::fabs(gram_res.total_variance - direct_res.total_variance) <=
            1e-9 * gram_res.total_variance;
        checked++;
    }
    report("A7", checked == 20 && eig_ok && proj_ok && sum_ok,
           "oracle equivalence on 20 mixed instances (n=50, d=20): eigenvalues 1e-8 " +
               std::string(eig_ok ? "ok" : "FAILED") + ", projections 1e-6 " +
               (proj_ok ? "ok" : "FAILED") + ", eigenvalue sums 1e-9 " +
               (sum_ok ? "ok" : "FAILED"));
}

// ----- A8: non-isotropic noise -----

void run_a8(const ExperimentResult& noniso) {
    const ParamResult& p = noniso.params.front();
    std::vector<double> pred(10);
    for (int k = 1; k <= 10; k++) pred[k - 1] = analytic::flat_variance_ratio(k);
    const auto metrics = compare::spectrum_error_ratios(p.mean_ratios, pred, 1, 10);

    std::vector<double> corr1, corr2;
    for (const auto& s : p.seeds) {
        corr1.push_back(s.report.projection_corr[0]);
        corr2.push_back(s.report.projection_corr[1]);
    }
    const double med1 = median(corr1), med2 = median(corr2);
    const bool pass = metrics.median_rel_error <= 0.15 && med1 >= 0.85 && med2 >= 0.85;
    report("A8", pass,
           "non-isotropic noise (d=1000 square factor): median rel err vs 6/pi^2k^2 over k<=10 = " +
               fmt(metrics.median_rel_error) + " (<=0.15), median corr k=1: " + fmt(med1) +
               ", k=2: " + fmt(med2) + " (>=0.85)");
}

// ----- A9: decay experiment -----

void run_a9(const ExperimentResult& decay, const fs::path& out_dir) {
    const ParamResult& p = decay.params.front();
    const double r2 = p.seeds.front().sgd_fit_r2;
    const double rate = p.seeds.front().sgd_fit_rate_per_step;
    const bool files = fs::exists(out_dir / "spectrum_decayed_walk.csv") &&
                       fs::exists(out_dir / "projections_decayed_walk.csv");
    report("A9", r2 >= 0.95 && files,
           "decay experiment: step-norm exponential fit R^2=" + fmt(r2) +
               " (>=0.95), per-step rate=" + fmt(rate) +
               ", decayed-walk tableau files written: " + (files ? "yes" : "no"));
}

// ----- A10: determinism of the bundled configs -----

int run_cli(const std::string& cli, const std::string& args) {
    const std::string cmd = cli + " " + args + " >/dev/null 2>&1";
    const int status = std::system(cmd.c_str());
    return status == -1 ? -1 : WEXITSTATUS(status);
}

void run_a10(const std::string& cli, const fs::path& configs,
             const std::vector<std::pair<std::string, fs::path>>& originals,
             const fs::path& scratch) {
    bool pass = true;
    std::string detail = "determinism:";
    for (const auto& [name, original_dir] : originals) {
        const fs::path rerun_dir = scratch / ("rerun_" + name);
        fs::remove_all(rerun_dir);
        const int rc = run_cli(cli, "run --config " + (configs / (name + ".json")).string() +
                                        " --out-dir " + rerun_dir.string());
        if (rc != 0) {
            pass = false;
            detail += " " + name + ": rerun exited " + std::to_string(rc);
            continue;
        }
        int files = 0, mismatched = 0;
        for (const auto& entry : fs::directory_iterator(original_dir)) {
            const auto fname = entry.path().filename();
            files++;
            if (read_file(entry.path()) != read_file(rerun_dir / fname)) mismatched++;
        }
        if (files == 0 || mismatched > 0) pass = false;
        detail += " " + name + ": " + std::to_string(files - mismatched) + "/" +
                  std::to_string(files) + " byte-identical;";
    }
    report("A10", pass, detail);
}

}  // namespace

int main(int argc, char** argv) {
    fs::path configs = "configs";
    fs::path out = "acceptance_out";
    std::string cli = "walkpca";
    for (int i = 1; i < argc; i += 2) {
        const std::string flag = argv[i];
        if (i + 1 >= argc) {
            std::fprintf(stderr, "flag %s needs a value\n", flag.c_str());
            return 2;
        }
        if (flag == "--configs") configs = argv[i + 1];
        else if (flag == "--out") out = argv[i + 1];
        else if (flag == "--cli") cli = argv[i + 1];
        else {
            std::fprintf(stderr, "unknown flag %s (expected --configs/--out/--cli)\n",
                         flag.c_str());
            return 2;
        }
    }
    fs::remove_all(out);
    fs::create_directories(out);

    std::vector<std::pair<std::string, fs::path>> run_dirs;
    auto run_config = [&](const std::string& name) {
        const ExperimentConfig cfg = load_config(configs / (name + ".json"));
        const fs::path dir = out / name;
        const ExperimentResult res = run_experiment(cfg, dir);
        run_dirs.emplace_back(name, dir);
        return res;
    };

    const auto t0 = clock_type::now();
    const ExperimentResult flat = run_config("flat_fig1");
    const double flat_elapsed = std::chrono::duration<double>(clock_type::now() - t0).count();
    run_a1_a2(flat, flat_elapsed);

    run_a3(run_config("momentum_supp"));

    const ExperimentResult ou = run_config("ou_fig2");
    run_a4_a5(ou);

    run_a6(run_config("polyak_supp"));
    run_a7();
    run_a8(run_config("noniso_supp"));

    const ExperimentResult decay = run_config("decay_fig");
    run_a9(decay, out / "decay_fig");

    run_a10(cli, configs, run_dirs, out);

    std::printf("%d criteria failed\n", g_failures);
    return g_failures == 0 ? 0 : 1;
}
