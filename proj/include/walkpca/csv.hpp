#pragma once

#include <filesystem>
#include <span>
#include <string>
#include <vector>

namespace walkpca::csv {

/// Shortest decimal representation that round-trips the exact double.
std::string format_double(double v);

struct SpectrumRows {
    std::vector<int> k;
    std::vector<double> eigenvalue;
    std::vector<double> explained_ratio;
};

/// Columns: k,eigenvalue,explained_ratio (with header).
void write_spectrum(const std::filesystem::path& path,
                    std::span<const double> eigenvalues,
                    std::span<const double> ratios);
SpectrumRows read_spectrum(const std::filesystem::path& path);

/// Columns: t,<name> (with header), t = 1..n.
void write_series(const std::filesystem::path& path, const std::string& value_name,
                  std::span<const double> values);
std::vector<double> read_series(const std::filesystem::path& path);

class ProjectionsView {
  public:
    ProjectionsView(const double* data, int rows, int stride, int components)
        : data_(data), rows_(rows), stride_(stride), components_(components) {}
    int rows() const { return rows_; }
    int components() const { return components_; }
    double at(int t, int c) const { return data_[static_cast<size_t>(t) * stride_ + c]; }

  private:
    const double* data_;
    int rows_, stride_, components_;
};

/// Columns: t,proj_k1,...,proj_k<C>; column k holds sqrt(lambda_k)*u_k(t).
void write_projections(const std::filesystem::path& path, const ProjectionsView& view);

std::vector<std::vector<double>> read_columns(const std::filesystem::path& path);

}  // namespace walkpca::csv
