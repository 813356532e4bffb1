#include "walkpca/kernels.hpp"

#include <algorithm>
#include <stdexcept>

#include "walkpca/rng.hpp"

namespace walkpca::kernels {

namespace {

// 4-way unrolled dot product. The explicit partial sums fix the reduction
// order (so serial and parallel callers agree bitwise) and let the compiler
// vectorize without -ffast-math.
double dot(const double* __restrict a, const double* __restrict b, int len) {
    double s0 = 0.0, s1 = 0.0, s2 = 0.0, s3 = 0.0;
    int k = 0;
    for (; k + 4 <= len; k += 4) {
        s0 += a[k] * b[k];
        s1 += a[k + 1] * b[k + 1];
        s2 += a[k + 2] * b[k + 2];
        s3 += a[k + 3] * b[k + 3];
    }
    double tail = 0.0;
    for (; k < len; k++) tail += a[k] * b[k];
    return ((s0 + s1) + (s2 + s3)) + tail;
}

void column_sum_block(const Matrix& x, int c0, int c1, double* sums) {
    for (int c = c0; c < c1; c++) sums[c] = 0.0;
    for (int t = 0; t < x.rows; t++) {
        const double* row = x.row(t);
        for (int c = c0; c < c1; c++) sums[c] += row[c];
    }
}

// Rows i0..i1 of the Gram matrix; row i gets entries j >= i only.
void gram_row_block(const Matrix& x, int i0, int i1, Matrix& g) {
    const int n = x.rows, d = x.cols;
    for (int j = i0; j < n; j++) {
        const double* xj = x.row(j);
        const int ihi = std::min(i1, j + 1);
        for (int i = i0; i < ihi; i++) g.at(i, j) = dot(x.row(i), xj, d);
    }
}

void covariance_row_block(const Matrix& x, int a0, int a1, Matrix& c) {
    const int n = x.rows, d = x.cols;
    for (int a = a0; a < a1; a++)
        for (int b = a; b < d; b++) {
            double s = 0.0;
            for (int t = 0; t < n; t++) s += x.at(t, a) * x.at(t, b);
            c.at(a, b) = s;
        }
}

constexpr int kGramTile = 8;
constexpr int kProjectColumnBlock = 128;

}  // namespace

std::vector<double> column_means_serial(const Matrix& x) {
    std::vector<double> means(x.cols, 0.0);
    column_sum_block(x, 0, x.cols, means.data());
    for (double& m : means) m /= x.rows;
    return means;
}

std::vector<double> column_means(const Matrix& x) {
    std::vector<double> means(x.cols, 0.0);
    const int block = 256;
#pragma omp parallel for schedule(static)
    for (int c0 = 0; c0 < x.cols; c0 += block)
        column_sum_block(x, c0, std::min(c0 + block, x.cols), means.data());
    for (double& m : means) m /= x.rows;
    return means;
}

void center_serial(Matrix& x) {
    const auto means = column_means_serial(x);
    for (int t = 0; t < x.rows; t++) {
        double* row = x.row(t);
        for (int c = 0; c < x.cols; c++) row[c] -= means[c];
    }
}

void center(Matrix& x) {
    const auto means = column_means(x);
#pragma omp parallel for schedule(static)
    for (int t = 0; t < x.rows; t++) {
        double* row = x.row(t);
        for (int c = 0; c < x.cols; c++) row[c] -= means[c];
    }
}

Matrix gram_serial(const Matrix& x) {
    Matrix g(x.rows, x.rows);
    for (int i0 = 0; i0 < x.rows; i0 += kGramTile)
        gram_row_block(x, i0, std::min(i0 + kGramTile, x.rows), g);
    for (int i = 0; i < x.rows; i++)
        for (int j = 0; j < i; j++) g.at(i, j) = g.at(j, i);
    return g;
}

Matrix gram(const Matrix& x) {
    Matrix g(x.rows, x.rows);
#pragma omp parallel for schedule(dynamic)
    for (int i0 = 0; i0 < x.rows; i0 += kGramTile)
        gram_row_block(x, i0, std::min(i0 + kGramTile, x.rows), g);
#pragma omp parallel for schedule(static)
    for (int i = 0; i < x.rows; i++)
        for (int j = 0; j < i; j++) g.at(i, j) = g.at(j, i);
    return g;
}

Matrix covariance_serial(const Matrix& x) {
    Matrix c(x.cols, x.cols);
    covariance_row_block(x, 0, x.cols, c);
    for (int a = 0; a < x.cols; a++)
        for (int b = 0; b < a; b++) c.at(a, b) = c.at(b, a);
    return c;
}

Matrix covariance(const Matrix& x) {
    Matrix c(x.cols, x.cols);
#pragma omp parallel for schedule(dynamic, 8)
    for (int a = 0; a < x.cols; a++) covariance_row_block(x, a, a + 1, c);
    for (int a = 0; a < x.cols; a++)
        for (int b = 0; b < a; b++) c.at(a, b) = c.at(b, a);
    return c;
}

namespace {

// Generate columns c0..c1 of the projection matrix (scaled by 1/sqrt(m));
// buf holds them row-contiguously: buf[(c-c0)*m + j].
void generate_projection_columns(uint64_t seed, int c0, int c1, int m, std::vector<double>& buf) {
    const double scale = 1.0 / std::sqrt(static_cast<double>(m));
    for (int c = c0; c < c1; c++) {
        GaussianStream g(derive_stream(seed, static_cast<uint64_t>(c)));
        double* col = buf.data() + static_cast<size_t>(c - c0) * m;
        g.fill(col, static_cast<size_t>(m));
        for (int j = 0; j < m; j++) col[j] *= scale;
    }
}

void project_accumulate_row(const Matrix& x, const std::vector<double>& buf, int c0, int c1,
                            int m, int t, Matrix& y) {
    double* yt = y.row(t);
    const double* xt = x.row(t);
    for (int c = c0; c < c1; c++) {
        const double xv = xt[c];
        const double* col = buf.data() + static_cast<size_t>(c - c0) * m;
        for (int j = 0; j < m; j++) yt[j] += xv * col[j];
    }
}

}  // namespace

Matrix project_gaussian_serial(const Matrix& x, int target_dim, uint64_t seed) {
    if (target_dim < 1) throw std::invalid_argument("project_gaussian: target_dim must be >= 1");
    Matrix y(x.rows, target_dim);
    std::vector<double> buf(static_cast<size_t>(kProjectColumnBlock) * target_dim);
    for (int c0 = 0; c0 < x.cols; c0 += kProjectColumnBlock) {
        const int c1 = std::min(c0 + kProjectColumnBlock, x.cols);
        generate_projection_columns(seed, c0, c1, target_dim, buf);
        for (int t = 0; t < x.rows; t++)
            project_accumulate_row(x, buf, c0, c1, target_dim, t, y);
    }
    return y;
}

Matrix project_gaussian(const Matrix& x, int target_dim, uint64_t seed) {
    if (target_dim < 1) throw std::invalid_argument("project_gaussian: target_dim must be >= 1");
    Matrix y(x.rows, target_dim);
    std::vector<double> buf(static_cast<size_t>(kProjectColumnBlock) * target_dim);
    for (int c0 = 0; c0 < x.cols; c0 += kProjectColumnBlock) {
        const int c1 = std::min(c0 + kProjectColumnBlock, x.cols);
        generate_projection_columns(seed, c0, c1, target_dim, buf);
#pragma omp parallel for schedule(static)
        for (int t = 0; t < x.rows; t++)
            project_accumulate_row(x, buf, c0, c1, target_dim, t, y);
    }
    return y;
}

void matvec_serial(const Matrix& a, const double* x, double* y) {
    for (int i = 0; i < a.rows; i++) y[i] = dot(a.row(i), x, a.cols);
}

void matvec(const Matrix& a, const double* x, double* y) {
#pragma omp parallel for schedule(static)
    for (int i = 0; i < a.rows; i++) y[i] = dot(a.row(i), x, a.cols);
}

}  // namespace walkpca::kernels
