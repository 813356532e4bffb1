#include "walkpca/pca.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <stdexcept>

#include "walkpca/kernels.hpp"

namespace walkpca::pca {

namespace {

constexpr double kZeroClamp = 1e-12;  // eigenvalues below this * lambda_1 report as 0

void fix_column_sign(Matrix& m, int col) {
    int arg = 0;
    double best = -1.0;
    for (int i = 0; i < m.rows; i++) {
        const double a = std::fabs(m.at(i, col));
        if (a > best) {
            best = a;
            arg = i;
        }
    }
    if (m.at(arg, col) < 0.0)
        for (int i = 0; i < m.rows; i++) m.at(i, col) = -m.at(i, col);
}

// Shared tail: clamp, ratios, totals. Eigenvalues arrive nonincreasing.
PcaResult assemble(std::vector<double> eigenvalues, Matrix time_modes, int k) {
    const double lead = eigenvalues.empty() ? 0.0 : std::max(eigenvalues.front(), 0.0);
    double total = 0.0;
    for (double& v : eigenvalues) {
        if (v < kZeroClamp * lead) v = 0.0;
        total += v;
    }
    PcaResult res;
    res.total_variance = total;
    res.eigenvalues.assign(eigenvalues.begin(), eigenvalues.begin() + k);
    res.explained_ratio.resize(k);
    for (int i = 0; i < k; i++)
        res.explained_ratio[i] = total > 0.0 ? res.eigenvalues[i] / total : 0.0;
    const int n = time_modes.rows;
    res.projections = Matrix(n, k);
    for (int c = 0; c < k; c++) {
        const double s = std::sqrt(res.eigenvalues[c]);
        for (int i = 0; i < n; i++) res.projections.at(i, c) = s * time_modes.at(i, c);
    }
    res.time_modes = Matrix(n, k);
    for (int c = 0; c < k; c++)
        for (int i = 0; i < n; i++) res.time_modes.at(i, c) = time_modes.at(i, c);
    return res;
}

}  // namespace

Matrix center(const Matrix& x) {
    if (x.rows < 2) throw std::invalid_argument("center: need at least 2 rows");
    Matrix out = x;
    kernels::center(out);
    return out;
}

Matrix gram(const Matrix& centered) { return kernels::gram(centered); }

EighResult eigh_symmetric(const Matrix& g) {
    if (g.rows != g.cols) throw std::invalid_argument("eigh_symmetric: matrix is not square");
    const int n = g.rows;
    double max_abs = 0.0, max_asym = 0.0;
    for (int i = 0; i < n; i++)
        for (int j = i; j < n; j++) {
            max_abs = std::max(max_abs, std::fabs(g.at(i, j)));
            max_asym = std::max(max_asym, std::fabs(g.at(i, j) - g.at(j, i)));
        }
    if (max_asym > 1e-10 * std::max(max_abs, 1e-300))
        throw std::invalid_argument("eigh_symmetric: input is not symmetric");

    using EMat = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
    Eigen::Map<const EMat> mapped(g.data.data(), n, n);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(mapped);
    if (solver.info() != Eigen::Success)
        throw std::runtime_error("eigh_symmetric: eigensolver failed to converge");

    EighResult res;
    res.eigenvalues.resize(n);
    res.eigenvectors = Matrix(n, n);
    // Eigen returns ascending order; emit descending.
    for (int c = 0; c < n; c++) {
        const int src = n - 1 - c;
        res.eigenvalues[c] = solver.eigenvalues()(src);
        for (int i = 0; i < n; i++) res.eigenvectors.at(i, c) = solver.eigenvectors()(i, src);
        fix_column_sign(res.eigenvectors, c);
    }
    return res;
}

PcaResult pca_trajectory(const Trajectory& traj, int k, const PcaOptions& opts) {
    const int n = traj.n();
    if (k < 1 || k > n) throw std::invalid_argument("pca_trajectory: need 1 <= K <= n");
    if (n > opts.n_cap)
        throw std::invalid_argument("pca_trajectory: n exceeds the configured cap; raise n_cap to override");
    Matrix xc = center(traj.states);
    Matrix g = kernels::gram(xc);
    EighResult eig = eigh_symmetric(g);
    return assemble(std::move(eig.eigenvalues), std::move(eig.eigenvectors), k);
}

PcaResult pca_direct(const Trajectory& traj, int k) {
    const int n = traj.n(), d = traj.d();
    if (d > 500) throw std::invalid_argument("pca_direct: oracle restricted to d <= 500");
    if (k < 1 || k > std::min(n, d))
        throw std::invalid_argument("pca_direct: need 1 <= K <= min(n, d)");
    Matrix xc = center(traj.states);
    Matrix cov = kernels::covariance(xc);
    EighResult eig = eigh_symmetric(cov);

    // Map the d-space eigenvectors to time-domain modes: X̂ v̂ / sqrt(lambda).
    const int m = std::min(n, d);
    Matrix modes(n, m);
    for (int c = 0; c < m; c++) {
        const double lam = eig.eigenvalues[c];
        if (lam > kZeroClamp * std::max(eig.eigenvalues[0], 0.0) && lam > 0.0) {
            const double inv = 1.0 / std::sqrt(lam);
            for (int t = 0; t < n; t++) {
                double s = 0.0;
                const double* row = xc.row(t);
                for (int j = 0; j < d; j++) s += row[j] * eig.eigenvectors.at(j, c);
                modes.at(t, c) = s * inv;
            }
            fix_column_sign(modes, c);
        }
    }
    std::vector<double> lam(eig.eigenvalues.begin(), eig.eigenvalues.begin() + m);
    return assemble(std::move(lam), std::move(modes), k);
}

}  // namespace walkpca::pca
