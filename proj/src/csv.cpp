#include "walkpca/csv.hpp"

#include <charconv>
#include <fstream>
#include <stdexcept>
#include <system_error>

namespace walkpca::csv {

namespace {

[[noreturn]] void fail(const std::filesystem::path& path, const std::string& what) {
    throw std::runtime_error("csv " + path.string() + ": " + what);
}

std::ofstream open_out(const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) fail(path, "cannot open for writing");
    return out;
}

void finish(std::ofstream& out, const std::filesystem::path& path) {
    out.flush();
    if (!out) fail(path, "write failed");
}

double parse_double(const char*& p, const char* end, const std::filesystem::path& path, int line) {
    double v = 0.0;
    auto [next, ec] = std::from_chars(p, end, v);
    if (ec != std::errc()) fail(path, "malformed number at line " + std::to_string(line));
    p = next;
    return v;
}

}  // namespace

std::string format_double(double v) {
    char buf[32];
    auto [p, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    if (ec != std::errc()) throw std::runtime_error("format_double failed");
    return std::string(buf, p);
}

void write_spectrum(const std::filesystem::path& path,
                    std::span<const double> eigenvalues,
                    std::span<const double> ratios) {
    if (eigenvalues.size() != ratios.size())
        throw std::invalid_argument("write_spectrum: column length mismatch");
    auto out = open_out(path);
    out << "k,eigenvalue,explained_ratio\n";
    for (size_t i = 0; i < eigenvalues.size(); i++)
        out << (i + 1) << ',' << format_double(eigenvalues[i]) << ','
            << format_double(ratios[i]) << '\n';
    finish(out, path);
}

SpectrumRows read_spectrum(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) fail(path, "cannot open");
    std::string line;
    if (!std::getline(in, line)) fail(path, "empty file");
    SpectrumRows rows;
    int line_no = 1;
    while (std::getline(in, line)) {
        line_no++;
        if (line.empty()) continue;
        const char* p = line.data();
        const char* end = p + line.size();
        const double kv = parse_double(p, end, path, line_no);
        if (p == end || *p != ',') fail(path, "expected ',' at line " + std::to_string(line_no));
        p++;
        const double ev = parse_double(p, end, path, line_no);
        if (p == end || *p != ',') fail(path, "expected ',' at line " + std::to_string(line_no));
        p++;
        const double rv = parse_double(p, end, path, line_no);
        rows.k.push_back(static_cast<int>(kv));
        rows.eigenvalue.push_back(ev);
        rows.explained_ratio.push_back(rv);
    }
    if (rows.k.empty()) fail(path, "no data rows");
    return rows;
}

void write_series(const std::filesystem::path& path, const std::string& value_name,
                  std::span<const double> values) {
    auto out = open_out(path);
    out << "t," << value_name << '\n';
    for (size_t i = 0; i < values.size(); i++)
        out << (i + 1) << ',' << format_double(values[i]) << '\n';
    finish(out, path);
}

std::vector<double> read_series(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) fail(path, "cannot open");
    std::string line;
    if (!std::getline(in, line)) fail(path, "empty file");
    std::vector<double> values;
    int line_no = 1;
    while (std::getline(in, line)) {
        line_no++;
        if (line.empty()) continue;
        const char* p = line.data();
        const char* end = p + line.size();
        parse_double(p, end, path, line_no);
        if (p == end || *p != ',') fail(path, "expected ',' at line " + std::to_string(line_no));
        p++;
        values.push_back(parse_double(p, end, path, line_no));
    }
    if (values.empty()) fail(path, "no data rows");
    return values;
}

void write_projections(const std::filesystem::path& path, const ProjectionsView& view) {
    auto out = open_out(path);
    out << 't';
    for (int c = 1; c <= view.components(); c++) out << ",proj_k" << c;
    out << '\n';
    for (int t = 0; t < view.rows(); t++) {
        out << (t + 1);
        for (int c = 0; c < view.components(); c++) out << ',' << format_double(view.at(t, c));
        out << '\n';
    }
    finish(out, path);
}

std::vector<std::vector<double>> read_columns(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) fail(path, "cannot open");
    std::string line;
    if (!std::getline(in, line)) fail(path, "empty file");
    std::vector<std::vector<double>> cols;
    int line_no = 1;
    while (std::getline(in, line)) {
        line_no++;
        if (line.empty()) continue;
        const char* p = line.data();
        const char* end = p + line.size();
        size_t c = 0;
        while (true) {
            const double v = parse_double(p, end, path, line_no);
            if (cols.size() <= c) cols.emplace_back();
            cols[c].push_back(v);
            c++;
            if (p == end) break;
            if (*p != ',') fail(path, "expected ',' at line " + std::to_string(line_no));
            p++;
        }
    }
    if (cols.empty()) fail(path, "no data rows");
    return cols;
}

}  // namespace walkpca::csv
