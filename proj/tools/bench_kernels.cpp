// Benchmark of the OpenMP kernels against their serial references. The two
// variants share the per-element accumulation order, so the max |diff|
// column must print 0.
#include <chrono>
#include <cstdio>
#include <cstring>
#include <string>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "walkpca/kernels.hpp"
#include "walkpca/matrix.hpp"
#include "walkpca/rng.hpp"

using namespace walkpca;
using clock_type = std::chrono::steady_clock;

namespace {

double seconds_since(clock_type::time_point start) {
    return std::chrono::duration<double>(clock_type::now() - start).count();
}

Matrix random_matrix(int rows, int cols, uint64_t seed) {
    Matrix m(rows, cols);
    GaussianStream g(seed);
    g.fill(m.data.data(), m.size());
    return m;
}

double max_abs_diff(const Matrix& a, const Matrix& b) {
    double worst = 0.0;
    for (size_t i = 0; i < a.size(); i++)
        worst = std::max(worst, std::fabs(a.data[i] - b.data[i]));
    return worst;
}

void report(const char* name, double serial_s, double parallel_s, double diff) {
    std::printf("%-18s serial %8.3fs   parallel %8.3fs   speedup %5.2fx   max|diff| %g\n",
                name, serial_s, parallel_s, serial_s / parallel_s, diff);
}

template <typename F>
std::pair<double, Matrix> timed(F&& f) {
    const auto start = clock_type::now();
    Matrix out = f();
    return {seconds_since(start), std::move(out)};
}

}  // namespace

int main(int argc, char** argv) {
    int n = 1000, d = 10000, target = 1000;
    if (argc > 1) n = std::stoi(argv[1]);
    if (argc > 2) d = std::stoi(argv[2]);
    if (argc > 3) target = std::stoi(argv[3]);

#ifdef _OPENMP
    std::printf("threads: %d, n=%d, d=%d, target_dim=%d\n", omp_get_max_threads(), n, d, target);
#else
    std::printf("OpenMP disabled, n=%d, d=%d, target_dim=%d\n", n, d, target);
#endif

    const Matrix x = random_matrix(n, d, 42);

    {
        auto [ts, a] = timed([&] { Matrix c = x; kernels::center_serial(c); return c; });
        auto [tp, b] = timed([&] { Matrix c = x; kernels::center(c); return c; });
        report("center", ts, tp, max_abs_diff(a, b));
    }
    {
        auto [ts, a] = timed([&] { return kernels::gram_serial(x); });
        auto [tp, b] = timed([&] { return kernels::gram(x); });
        report("gram", ts, tp, max_abs_diff(a, b));
    }
    {
        const Matrix small = random_matrix(std::min(n, 2000), std::min(d, 400), 7);
        auto [ts, a] = timed([&] { return kernels::covariance_serial(small); });
        auto [tp, b] = timed([&] { return kernels::covariance(small); });
        report("covariance", ts, tp, max_abs_diff(a, b));
    }
    {
        auto [ts, a] = timed([&] { return kernels::project_gaussian_serial(x, target, 9); });
        auto [tp, b] = timed([&] { return kernels::project_gaussian(x, target, 9); });
        report("project_gaussian", ts, tp, max_abs_diff(a, b));
    }
    return 0;
}
