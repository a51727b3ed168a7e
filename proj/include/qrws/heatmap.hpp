// heatmap.hpp
// 8-bit binary PGM rendering of 2-D fields. Rows follow the first axis (phi),
// columns the second.

#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "qrws/analysis.hpp"
#include "qrws/sweep.hpp"

namespace qrws {

enum class HeatmapScale { Linear, Log };

HeatmapScale parse_heatmap_scale(const std::string& name);

struct Field2D {
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::vector<double> values;         // row-major
    std::vector<std::uint8_t> valid;    // empty = all valid
};

Field2D field_from(const RobustnessGrid& grid);
// Grid-mode sweep: rows are phi steps, columns zeta steps.
Field2D field_from(const SweepDataset& grid_dataset);

// Pixel values only, row-major. Linear maps [min, max] of the valid cells
// onto [0, 255]; Log maps log10 of values clamped to [1e-6, max]. Invalid
// cells render as 255. A constant field renders as all zeros.
std::vector<std::uint8_t> heatmap_pixels(const Field2D& field, HeatmapScale scale);

// Full PGM (P5) file contents; `comment` goes in a '#' header line when non-empty.
std::string heatmap_pgm(const Field2D& field, HeatmapScale scale, const std::string& comment = {});

void write_heatmap(const Field2D& field, const std::filesystem::path& path, HeatmapScale scale,
                   const std::string& comment = {});

}  // namespace qrws
