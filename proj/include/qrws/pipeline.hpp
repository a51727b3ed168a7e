// pipeline.hpp
// The full per-coin-size workflow: landscape sweeps, ridge and alpha fit,
// curve profiles for the four zeta(phi) relations, widths, robustness fields
// and heatmaps, with a manifest describing every file written.

#pragma once

#include <array>
#include <filesystem>
#include <functional>
#include <string>
#include <vector>

#include "qrws/analysis.hpp"
#include "qrws/config.hpp"

namespace qrws {

struct Artifact {
    std::string kind;
    int m = 0;
    std::filesystem::path path;  // relative to the output directory
    std::string parameters;      // JSON object text
};

struct WidthThreshold {
    WidthMode mode;
    double value;
};

inline constexpr std::array<WidthThreshold, 4> kPipelineWidths{{
    {WidthMode::Fraction, 0.9},
    {WidthMode::Fraction, 0.7},
    {WidthMode::Absolute, 0.37},
    {WidthMode::Absolute, 0.31},
}};

struct CoinSizeResult {
    int m = 0;
    double alpha_fit = 0.0;
    std::size_t ridge_points = 0;
    // linear, constant, sinusoidal(-1/(2 pi)), sinusoidal(alpha_fit)
    std::vector<CurveProfile> profiles;
    // widths[relation][threshold], thresholds in kPipelineWidths order
    std::vector<std::vector<WidthResult>> widths;
    RobustnessGrid sigma_p;
    SigmaPrime sigma_prime;
    RobustnessGrid ratio;
};

struct PipelineResult {
    std::vector<CoinSizeResult> coin_sizes;
    std::vector<Artifact> artifacts;
};

using LogFn = std::function<void(const std::string&)>;

// The four relations evaluated for coin size m, in CoinSizeResult order.
std::vector<CurveRelation> pipeline_relations(double alpha_fit);

// Runs m_first..m_last into `output_dir`. On failure every file already
// written is renamed with a ".partial" suffix and the exception propagates.
PipelineResult run_pipeline(const Config& config, int m_first, int m_last, const std::filesystem::path& output_dir,
                            const LogFn& log = {});

std::string manifest_json(const Config& config, int m_first, int m_last, const std::vector<Artifact>& artifacts);

}  // namespace qrws
