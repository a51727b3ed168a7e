// heatmap.cpp

#include "qrws/heatmap.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "qrws/io.hpp"

namespace qrws {

namespace {

constexpr double kLogFloor = 1e-6;

bool cell_valid(const Field2D& field, std::size_t n) {
    return (field.valid.empty() || field.valid[n] != 0) && std::isfinite(field.values[n]);
}

}  // namespace

HeatmapScale parse_heatmap_scale(const std::string& name) {
    if (name == "linear") return HeatmapScale::Linear;
    if (name == "log") return HeatmapScale::Log;
    throw std::invalid_argument("unknown heatmap scale '" + name + "' (expected linear or log)");
}

Field2D field_from(const RobustnessGrid& grid) {
    return {grid.phis.size(), grid.alphas.size(), grid.values, grid.valid};
}

Field2D field_from(const SweepDataset& grid_dataset) {
    if (grid_dataset.meta.mode != SweepMode::Grid) throw std::invalid_argument("heatmap needs a grid dataset");
    Field2D field;
    field.rows = static_cast<std::size_t>(grid_dataset.meta.phi_steps);
    field.cols = static_cast<std::size_t>(grid_dataset.meta.zeta_steps);
    field.values.reserve(grid_dataset.records.size());
    for (const auto& r : grid_dataset.records) field.values.push_back(r.p);
    return field;
}

std::vector<std::uint8_t> heatmap_pixels(const Field2D& field, HeatmapScale scale) {
    const std::size_t count = field.rows * field.cols;
    if (field.values.size() != count || (!field.valid.empty() && field.valid.size() != count))
        throw std::invalid_argument("field size does not match its dimensions");

    auto transform = [&](double v) { return scale == HeatmapScale::Log ? std::log10(std::max(v, kLogFloor)) : v; };

    double lo = std::numeric_limits<double>::infinity();
    double hi = -std::numeric_limits<double>::infinity();
    for (std::size_t n = 0; n < count; ++n) {
        if (!cell_valid(field, n)) continue;
        const double v = transform(field.values[n]);
        lo = std::min(lo, v);
        hi = std::max(hi, v);
    }

    std::vector<std::uint8_t> pixels(count, 255);
    for (std::size_t n = 0; n < count; ++n) {
        if (!cell_valid(field, n)) continue;
        if (!(hi > lo)) {
            pixels[n] = 0;
            continue;
        }
        const double t = (transform(field.values[n]) - lo) / (hi - lo);
        pixels[n] = static_cast<std::uint8_t>(std::lround(std::clamp(t, 0.0, 1.0) * 255.0));
    }
    return pixels;
}

std::string heatmap_pgm(const Field2D& field, HeatmapScale scale, const std::string& comment) {
    const auto pixels = heatmap_pixels(field, scale);
    std::string out = "P5\n";
    if (!comment.empty()) out += "# " + comment + "\n";
    out += std::to_string(field.cols) + " " + std::to_string(field.rows) + "\n255\n";
    out.append(pixels.begin(), pixels.end());
    return out;
}

void write_heatmap(const Field2D& field, const std::filesystem::path& path, HeatmapScale scale,
                   const std::string& comment) {
    write_binary_file(path, heatmap_pgm(field, scale, comment));
}

}  // namespace qrws
