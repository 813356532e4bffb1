// Exercises the installed binary end to end: exit codes, the documented
// subcommand pipeline, and rerun determinism of `run`.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <json.hpp>
#include <string>
#include <sys/wait.h>

#ifndef WALKPCA_CLI_PATH
#error "WALKPCA_CLI_PATH must point at the walkpca binary"
#endif

namespace fs = std::filesystem;

namespace {

struct TempDir {
    fs::path path;
    explicit TempDir(const std::string& name) {
        path = fs::temp_directory_path() / (name + "_" + std::to_string(::getpid()));
        fs::remove_all(path);
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
};

int run_cli(const std::string& args, const fs::path& stderr_file = {}) {
    std::string cmd = std::string(WALKPCA_CLI_PATH) + " " + args;
    if (!stderr_file.empty()) cmd += " 2>" + stderr_file.string();
    const int status = std::system(cmd.c_str());
    REQUIRE(status != -1);
    return WEXITSTATUS(status);
}

std::string read_file(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    REQUIRE(in.good());
    return std::string((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
}

}  // namespace

TEST_CASE("simulate -> pca -> predict -> compare pipeline") {
    TempDir dir("walkpca_cli_pipe");
    const auto traj = dir.path / "w.traj";
    const auto spec = dir.path / "spec.csv";
    const auto proj = dir.path / "proj.csv";
    const auto pred = dir.path / "pred.csv";
    const auto report = dir.path / "report.json";

    CHECK(run_cli("simulate --process flat --n 200 --d 500 --seed 7 --out " + traj.string()) == 0);
    CHECK(run_cli("pca --in " + traj.string() + " --k 20 --out " + spec.string() +
                  " --projections-out " + proj.string()) == 0);
    const auto lines = read_file(spec);
    CHECK(lines.substr(0, lines.find('\n')) == "k,eigenvalue,explained_ratio");
    CHECK(std::count(lines.begin(), lines.end(), '\n') == 21);  // header + 20 rows

    CHECK(run_cli("predict --process flat --n 200 --k 20 --out " + pred.string()) == 0);
    CHECK(run_cli("compare --empirical " + spec.string() + " --predicted " + pred.string() +
                  " --k-range 1:10 --out " + report.string()) == 0);
    const auto doc = nlohmann::json::parse(read_file(report));
    CHECK(doc["spectrum"].contains("median_rel_error"));
    CHECK(doc["spectrum"]["per_k"].size() == 10);
}

TEST_CASE("predict at large n puts ~61% of the variance on the first component") {
    TempDir dir("walkpca_cli_pred");
    const auto pred = dir.path / "pred.csv";
    CHECK(run_cli("predict --process flat --n 3000 --k 5 --out " + pred.string()) == 0);
    const auto text = read_file(pred);
    const auto line2 = text.substr(text.find('\n') + 1);
    CHECK(line2.substr(0, 2) == "1,");
    const auto last_comma = line2.find_last_of(',', line2.find('\n'));
    const double rho1 = std::stod(line2.substr(last_comma + 1));
    CHECK(rho1 == doctest::Approx(0.6079).epsilon(0.005));
}

TEST_CASE("externally produced text snapshots feed the pca pipeline") {
    TempDir dir("walkpca_cli_ingest");
    const auto snapshot = dir.path / "snapshot.txt";
    {
        std::ofstream out(snapshot);
        // A toy parameter history: 12 snapshots of 5 parameters.
        for (int t = 1; t <= 12; t++) {
            for (int j = 0; j < 5; j++) out << (j ? "," : "") << 0.25 * t * (j + 1);
            out << "\n";
        }
    }
    const auto spec = dir.path / "spec.csv";
    CHECK(run_cli("pca --in " + snapshot.string() + " --k 3 --out " + spec.string()) == 0);
    const auto text = read_file(spec);
    // A perfectly linear history has exactly one variance direction.
    auto line2 = text.substr(text.find('\n') + 1);
    line2 = line2.substr(0, line2.find('\n'));
    CHECK(line2.substr(line2.find_last_of(',') + 1) == "1");
}

TEST_CASE("project subcommand shrinks the state dimension") {
    TempDir dir("walkpca_cli_proj");
    const auto traj = dir.path / "w.traj";
    const auto small = dir.path / "small.traj";
    CHECK(run_cli("simulate --process flat --n 50 --d 800 --seed 3 --out " + traj.string()) == 0);
    CHECK(run_cli("project --in " + traj.string() + " --target-dim 64 --proj-seed 5 --out " +
                  small.string()) == 0);
    const auto spec = dir.path / "s.csv";
    CHECK(run_cli("pca --in " + small.string() + " --k 5 --out " + spec.string()) == 0);
}

TEST_CASE("unknown config keys exit with code 2 and name the key") {
    TempDir dir("walkpca_cli_cfg");
    const auto cfg = dir.path / "bad.json";
    std::ofstream(cfg) << R"({"version": 1, "procss": "flat"})";
    const auto err = dir.path / "stderr.txt";
    CHECK(run_cli("run --config " + cfg.string(), err) == 2);
    CHECK(read_file(err).find("procss") != std::string::npos);
}

TEST_CASE("missing input files exit with the io code") {
    TempDir dir("walkpca_cli_io");
    const auto spec = dir.path / "out.csv";
    CHECK(run_cli("pca --in /nonexistent/file.traj --k 3 --out " + spec.string(),
                  dir.path / "e.txt") == 4);
}

TEST_CASE("divergent simulations exit with code 3") {
    TempDir dir("walkpca_cli_div");
    const auto traj = dir.path / "w.traj";
    CHECK(run_cli("simulate --process linreg_sgd --n 600 --d 50 --lr 1.0 --seed 1 --out " +
                      traj.string(),
                  dir.path / "e.txt") == 3);
}

TEST_CASE("run reruns byte-identically") {
    TempDir dir("walkpca_cli_rerun");
    const auto cfg = dir.path / "cfg.json";
    std::ofstream(cfg) << R"({
      "version": 1, "name": "rerun", "process": "momentum", "gamma": [0.5],
      "n": 150, "d": 300, "seeds": [1, 2], "k": 8, "k_hi": 6, "proj_components": 3
    })";
    const auto out1 = dir.path / "run1";
    const auto out2 = dir.path / "run2";
    CHECK(run_cli("run --config " + cfg.string() + " --out-dir " + out1.string()) == 0);
    CHECK(run_cli("run --config " + cfg.string() + " --out-dir " + out2.string()) == 0);
    int compared = 0;
    for (const auto& entry : fs::directory_iterator(out1)) {
        const auto name = entry.path().filename();
        CHECK(read_file(entry.path()) == read_file(out2 / name));
        compared++;
    }
    CHECK(compared >= 8);
}

TEST_CASE("--threads is accepted and does not change results") {
    TempDir dir("walkpca_cli_threads");
    const auto a = dir.path / "a.traj";
    const auto b = dir.path / "b.traj";
    CHECK(run_cli("simulate --process ou --alpha 0.1 --n 80 --d 200 --seed 9 --out " +
                  a.string() + " --threads 1") == 0);
    CHECK(run_cli("simulate --process ou --alpha 0.1 --n 80 --d 200 --seed 9 --out " +
                  b.string() + " --threads 3") == 0);
    CHECK(read_file(a) == read_file(b));
}
