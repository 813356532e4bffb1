#pragma once

#include <cstdint>
#include <filesystem>

#include "walkpca/processes.hpp"

namespace walkpca::io {

// Binary trajectory format: magic "WSP1", u32 version = 1, u32 n, u32 d,
// then n*d little-endian f64, row-major. Round trips are bit-exact.

void write_trajectory(const Trajectory& traj, const std::filesystem::path& path);

/// Reads the binary format, or — when the file starts like a number — a
/// plain-text variant: one row per line, comma-separated decimals, uniform
/// column count, no header.
Trajectory read_trajectory(const std::filesystem::path& path);

/// Keep rows stride, 2·stride, …; the stride is recorded in the metadata.
Trajectory subsample(const Trajectory& traj, int stride);

/// Random Gaussian projection to target_dim dimensions. Deterministic per
/// seed; the projection matrix is regenerated blockwise from the seed and
/// never materialized.
Trajectory random_project(const Trajectory& traj, int target_dim, uint64_t seed);

}  // namespace walkpca::io
