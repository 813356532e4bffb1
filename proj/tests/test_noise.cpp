#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <vector>

#include "walkpca/kernels.hpp"
#include "walkpca/noise.hpp"
#include "walkpca/pca.hpp"

using namespace walkpca;

namespace {

double mean_squared_norm(const NoiseModel& model, uint64_t seed, int draws) {
    GaussianStream g(seed);
    std::vector<double> xi(model.dim());
    double acc = 0.0;
    for (int i = 0; i < draws; i++) {
        model.sample(g, xi.data());
        double s = 0.0;
        for (double v : xi) s += v * v;
        acc += s;
    }
    return acc / draws;
}

}  // namespace

TEST_CASE("isotropic per-coordinate variance is 1/d") {
    // d=1: the single coordinate has variance 1.
    CHECK(mean_squared_norm(make_isotropic(1), 1, 100000) == doctest::Approx(1.0).epsilon(0.02));
    // d=10000: per-coordinate variance 1e-4, so ||xi||^2 concentrates at 1.
    CHECK(mean_squared_norm(make_isotropic(10000), 2, 200) == doctest::Approx(1.0).epsilon(0.01));
}

TEST_CASE("Monte-Carlo trace estimate converges to 1") {
    // The spec's d=4 instance: average of ||xi||^2 over 1e5 samples.
    CHECK(mean_squared_norm(make_isotropic(4), 3, 100000) == doctest::Approx(1.0).epsilon(0.01));
    // Generic bound 5/sqrt(N) for a factor model as well.
    Matrix f(50, 30);
    GaussianStream g(9);
    g.fill(f.data.data(), f.size());
    const NoiseModel model = make_factor_covariance(f);
    const int n_draws = 4000;
    const double est = mean_squared_norm(model, 4, n_draws);
    CHECK(std::fabs(est - 1.0) <= 5.0 / std::sqrt(static_cast<double>(n_draws)));
}

TEST_CASE("invalid constructions are rejected") {
    CHECK_THROWS_AS(make_isotropic(0), std::invalid_argument);
    Matrix zeros(3, 2);
    CHECK_THROWS_AS(make_factor_covariance(zeros), std::invalid_argument);
}

TEST_CASE("identity factor reproduces the isotropic model") {
    Matrix f(3, 3);
    for (int i = 0; i < 3; i++) f.at(i, i) = 1.0;  // normalization divides by sqrt(3)
    const NoiseModel model = make_factor_covariance(f);
    GaussianStream g(5);
    std::vector<double> xi(3);
    double var = 0.0;
    const int draws = 30000;
    for (int i = 0; i < draws; i++) {
        model.sample(g, xi.data());
        var += xi[0] * xi[0];
    }
    CHECK(var / draws == doctest::Approx(1.0 / 3.0).epsilon(0.05));
}

TEST_CASE("rank-deficient factors produce degenerate coordinates") {
    // diag(2, 0): after normalization the second coordinate is always 0.
    Matrix f(2, 2);
    f.at(0, 0) = 2.0;
    const NoiseModel model = make_factor_covariance(f);
    GaussianStream g(6);
    std::vector<double> xi(2);
    for (int i = 0; i < 1000; i++) {
        model.sample(g, xi.data());
        CHECK(xi[1] == 0.0);
    }
}

TEST_CASE("rank-1 factor makes every sample parallel to the column") {
    Matrix f(3, 1);
    f.at(0, 0) = 1.0;
    f.at(1, 0) = 2.0;
    f.at(2, 0) = -2.0;
    const NoiseModel model = make_factor_covariance(f);
    GaussianStream g(7);
    std::vector<double> xi(3);
    for (int i = 0; i < 200; i++) {
        model.sample(g, xi.data());
        // Cross products with the column vanish for parallel vectors.
        CHECK(std::fabs(xi[0] * 2.0 - xi[1] * 1.0) <= 1e-12);
        CHECK(std::fabs(xi[1] * (-2.0) - xi[2] * 2.0) <= 1e-12);
    }
}

TEST_CASE("sampling is deterministic per seed") {
    const NoiseModel model = make_isotropic(2);
    std::vector<double> a(2), b(2);
    GaussianStream g1(42), g2(42), g3(43);
    model.sample(g1, a.data());
    model.sample(g2, b.data());
    CHECK(a == b);
    model.sample(g3, b.data());
    CHECK(a != b);
}

TEST_CASE("empirical mean vector stays near zero") {
    const NoiseModel model = make_isotropic(1000);
    GaussianStream g(8);
    std::vector<double> xi(1000), mean(1000, 0.0);
    const int draws = 10000;
    for (int i = 0; i < draws; i++) {
        model.sample(g, xi.data());
        for (int j = 0; j < 1000; j++) mean[j] += xi[j];
    }
    double norm = 0.0;
    for (double& m : mean) {
        m /= draws;
        norm += m * m;
    }
    CHECK(std::sqrt(norm) < 0.02);
}

TEST_CASE("square random factor gives a wide Marchenko-Pastur-like spectrum") {
    const int d = 400;
    Matrix f(d, d);
    GaussianStream g(12);
    g.fill(f.data.data(), f.size());
    const NoiseModel model = make_factor_covariance(f);
    // Covariance F Fᵀ of the stored (normalized) factor has unit trace.
    const Matrix cov = kernels::gram(model.factor());
    double trace = 0.0;
    for (int i = 0; i < d; i++) trace += cov.at(i, i);
    CHECK(trace == doctest::Approx(1.0).epsilon(1e-9));

    const auto eig = pca::eigh_symmetric(cov);
    const double mean = trace / d;
    // Square-aspect Marchenko-Pastur: support [0, 4*mean], right-skewed mass.
    CHECK(eig.eigenvalues.front() / mean > 3.0);
    CHECK(eig.eigenvalues.front() / mean < 4.6);
    CHECK(eig.eigenvalues.back() / mean < 0.05);
    const int below =
        static_cast<int>(std::count_if(eig.eigenvalues.begin(), eig.eigenvalues.end(),
                                       [&](double v) { return v < mean; }));
    CHECK(below > d / 2);
}

TEST_CASE("factor-model sample covariance rank is bounded by min(k, m)") {
    Matrix f(10, 3);
    GaussianStream g(13);
    g.fill(f.data.data(), f.size());
    const NoiseModel model = make_factor_covariance(f);
    const int k = 5;
    Matrix samples(k, 10);
    GaussianStream stream(14);
    for (int i = 0; i < k; i++) model.sample(stream, samples.row(i));
    const Matrix cov = kernels::covariance(samples);  // 10x10, rank <= 3
    const auto eig = pca::eigh_symmetric(cov);
    for (int i = 3; i < 10; i++)
        CHECK(std::fabs(eig.eigenvalues[i]) <= 1e-12 * eig.eigenvalues[0]);
}
