#include "walkpca/trajectory_io.hpp"

#include <bit>
#include <charconv>
#include <cmath>
#include <cstring>
#include <fstream>
#include <limits>
#include <stdexcept>
#include <string>

#include "walkpca/kernels.hpp"

namespace walkpca::io {

namespace {

constexpr char kMagic[4] = {'W', 'S', 'P', '1'};
constexpr uint32_t kVersion = 1;

static_assert(sizeof(double) == 8);

uint64_t bswap64(uint64_t v) {
    v = ((v & 0x00ff00ff00ff00ffull) << 8) | ((v >> 8) & 0x00ff00ff00ff00ffull);
    v = ((v & 0x0000ffff0000ffffull) << 16) | ((v >> 16) & 0x0000ffff0000ffffull);
    return (v << 32) | (v >> 32);
}

uint64_t to_le64(uint64_t v) {
    if constexpr (std::endian::native == std::endian::little) return v;
    return bswap64(v);
}

uint32_t to_le32(uint32_t v) {
    if constexpr (std::endian::native == std::endian::little) return v;
    return static_cast<uint32_t>(bswap64(v) >> 32);
}

void write_u32(std::ofstream& out, uint32_t v) {
    const uint32_t le = to_le32(v);
    out.write(reinterpret_cast<const char*>(&le), 4);
}

uint32_t read_u32(std::ifstream& in) {
    uint32_t v = 0;
    in.read(reinterpret_cast<char*>(&v), 4);
    return to_le32(v);
}

[[noreturn]] void io_fail(const std::filesystem::path& path, const std::string& what) {
    throw std::runtime_error("trajectory file " + path.string() + ": " + what);
}

Trajectory read_binary(std::ifstream& in, const std::filesystem::path& path) {
    char magic[4];
    in.read(magic, 4);
    if (!in || std::memcmp(magic, kMagic, 4) != 0) io_fail(path, "bad magic (format error)");
    const uint32_t version = read_u32(in);
    if (!in || version != kVersion)
        io_fail(path, "unsupported version " + std::to_string(version));
    const uint32_t n = read_u32(in);
    const uint32_t d = read_u32(in);
    if (!in) io_fail(path, "truncated header");
    if (n < 2 || d < 1) io_fail(path, "invalid dimensions n=" + std::to_string(n) +
                                          " d=" + std::to_string(d));
    const uint64_t count = static_cast<uint64_t>(n) * d;
    if (count > (static_cast<uint64_t>(1) << 33))
        io_fail(path, "dimension overflow: n*d too large");

    Trajectory traj;
    traj.states = Matrix(static_cast<int>(n), static_cast<int>(d));
    in.read(reinterpret_cast<char*>(traj.states.data.data()),
            static_cast<std::streamsize>(count * 8));
    if (static_cast<uint64_t>(in.gcount()) != count * 8) io_fail(path, "truncated payload");
    char extra;
    if (in.read(&extra, 1)) io_fail(path, "trailing bytes after payload");

    if constexpr (std::endian::native != std::endian::little) {
        for (double& v : traj.states.data) {
            const uint64_t bits = to_le64(std::bit_cast<uint64_t>(v));
            v = std::bit_cast<double>(bits);
        }
    }
    for (double v : traj.states.data)
        if (!std::isfinite(v)) io_fail(path, "non-finite entry in payload");
    traj.meta.process = "file";
    return traj;
}

Trajectory read_text(std::ifstream& in, const std::filesystem::path& path) {
    std::vector<double> values;
    int cols = -1;
    int line_no = 0;
    std::string line;
    while (std::getline(in, line)) {
        line_no++;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) {
            if (in.peek() == EOF) break;  // trailing newline
            io_fail(path, "empty row at line " + std::to_string(line_no));
        }
        int row_cols = 0;
        const char* p = line.data();
        const char* end = p + line.size();
        while (true) {
            while (p < end && (*p == ' ' || *p == '\t')) p++;
            double v = 0.0;
            auto [next, ec] = std::from_chars(p, end, v);
            if (ec != std::errc())
                io_fail(path, "malformed value at line " + std::to_string(line_no));
            if (!std::isfinite(v))
                io_fail(path, "non-finite value at line " + std::to_string(line_no));
            values.push_back(v);
            row_cols++;
            p = next;
            while (p < end && (*p == ' ' || *p == '\t')) p++;
            if (p == end) break;
            if (*p != ',') io_fail(path, "expected ',' at line " + std::to_string(line_no));
            p++;
        }
        if (cols == -1) {
            cols = row_cols;
        } else if (row_cols != cols) {
            io_fail(path, "row with wrong column count at line " + std::to_string(line_no) +
                              " (expected " + std::to_string(cols) + ", got " +
                              std::to_string(row_cols) + ")");
        }
    }
    if (cols < 1) io_fail(path, "no data rows");
    const int rows = static_cast<int>(values.size()) / cols;
    if (rows < 2) io_fail(path, "need at least 2 rows");
    Trajectory traj;
    traj.states = Matrix(rows, cols);
    traj.states.data = std::move(values);
    traj.meta.process = "file";
    return traj;
}

}  // namespace

void write_trajectory(const Trajectory& traj, const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) io_fail(path, "cannot open for writing");
    out.write(kMagic, 4);
    write_u32(out, kVersion);
    write_u32(out, static_cast<uint32_t>(traj.n()));
    write_u32(out, static_cast<uint32_t>(traj.d()));
    if constexpr (std::endian::native == std::endian::little) {
        out.write(reinterpret_cast<const char*>(traj.states.data.data()),
                  static_cast<std::streamsize>(traj.states.size() * 8));
    } else {
        for (double v : traj.states.data) {
            const uint64_t le = to_le64(std::bit_cast<uint64_t>(v));
            out.write(reinterpret_cast<const char*>(&le), 8);
        }
    }
    out.flush();
    if (!out) io_fail(path, "write failed");
}

Trajectory read_trajectory(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) io_fail(path, "cannot open");
    const int first = in.peek();
    if (first == EOF) io_fail(path, "empty file");
    const char c = static_cast<char>(first);
    const bool looks_text = (c >= '0' && c <= '9') || c == '-' || c == '+' || c == '.' ||
                            c == ' ' || c == '\t';
    return looks_text ? read_text(in, path) : read_binary(in, path);
}

Trajectory subsample(const Trajectory& traj, int stride) {
    if (stride < 1) throw std::invalid_argument("subsample: stride must be >= 1");
    if (stride > traj.n()) throw std::invalid_argument("subsample: stride exceeds trajectory length");
    const int kept = traj.n() / stride;
    Trajectory out;
    out.states = Matrix(kept, traj.d());
    for (int i = 0; i < kept; i++) {
        const double* src = traj.states.row((i + 1) * stride - 1);
        std::memcpy(out.states.row(i), src, sizeof(double) * static_cast<size_t>(traj.d()));
    }
    out.meta = traj.meta;
    out.meta.stride = traj.meta.stride * stride;
    return out;
}

Trajectory random_project(const Trajectory& traj, int target_dim, uint64_t seed) {
    if (target_dim < 1) throw std::invalid_argument("random_project: target_dim must be >= 1");
    Trajectory out;
    out.states = kernels::project_gaussian(traj.states, target_dim, seed);
    out.meta = traj.meta;
    out.meta.process += "+proj";
    return out;
}

}  // namespace walkpca::io
