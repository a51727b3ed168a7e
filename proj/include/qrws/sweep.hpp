// sweep.hpp
// Monte Carlo and grid evaluation of the success probability over the
// (phi, zeta) plane, with CSV + JSON sidecar persistence.

#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace qrws {

struct SweepRecord {
    double phi = 0.0;
    double zeta = 0.0;
    int m = 0;
    double p = 0.0;
};

enum class SweepMode { Random, Grid };

struct SweepMeta {
    SweepMode mode = SweepMode::Grid;
    int m = 0;
    int iterations = 0;
    std::uint64_t seed = 0;       // random mode
    std::size_t samples = 0;      // random mode
    int phi_steps = 0;            // grid mode
    int zeta_steps = 0;           // grid mode
};

struct SweepDataset {
    std::vector<SweepRecord> records;
    SweepMeta meta;

    // Grid mode only: p at (phi index, zeta index), both zero-based.
    double grid_p(int phi_index, int zeta_index) const {
        return records[static_cast<std::size_t>(phi_index) * meta.zeta_steps + zeta_index].p;
    }
};

struct SweepOptions {
    std::optional<int> iterations;  // defaults to iteration_count(m)
    unsigned threads = 0;           // 0 = default_thread_count()
};

// Counter-based stream: (phi, zeta) for record `index` under `seed`, both
// uniform on [0, 2 pi). Depends on nothing but its two arguments.
std::pair<double, double> random_angles(std::uint64_t seed, std::uint64_t index);

// i * 2 pi / steps for i = 1..steps (so pi is on-grid for even steps).
double grid_angle(int i, int steps);

SweepDataset sweep_random(int m, std::size_t samples, std::uint64_t seed, const SweepOptions& options = {});

// Rows are phi_1..phi_n, columns zeta_1..zeta_n, row-major. The stored record
// angles are reduced into [0, 2 pi), so the last row/column stores 0 for 2 pi.
SweepDataset sweep_grid(int m, int phi_steps, int zeta_steps, const SweepOptions& options = {});

std::string to_string(SweepMode mode);

// CSV: header "phi,zeta,m,p", 12 significant digits.
void write_sweep_csv(const SweepDataset& dataset, const std::filesystem::path& path);
void write_sweep_meta(const SweepDataset& dataset, const std::filesystem::path& path);
std::string sweep_meta_json(const SweepMeta& meta);

// Reads a CSV written by write_sweep_csv and its sidecar (same stem, ".json").
SweepDataset read_sweep(const std::filesystem::path& csv_path);
SweepDataset read_sweep(const std::filesystem::path& csv_path, const std::filesystem::path& meta_path);

}  // namespace qrws
