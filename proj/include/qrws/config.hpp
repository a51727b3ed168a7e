// config.hpp
// Run configuration shared by the command-line tool and the pipeline. Stored
// as JSON; every field is optional and falls back to the defaults below.

#pragma once

#include <cstdint>
#include <filesystem>
#include <string>

#include "qrws/analysis.hpp"
#include "qrws/surrogate.hpp"

namespace qrws {

struct SurrogateConfig {
    TrainParams train;
    int m_min = 2;
    int m_max = 10;
    int grid_steps = 60;  // training grids are grid_steps x grid_steps
};

struct Config {
    std::filesystem::path output_dir = "qrws-out";
    unsigned threads = 0;

    int grid_phi_steps = 180;
    int grid_zeta_steps = 180;
    std::size_t random_samples = 10000;
    std::uint64_t seed = 1;

    int curve_steps = 180;
    double ridge_fraction = 0.9;

    RobustnessAxes axes;
    double sigma_phi = 0.1;
    double sigma_alpha = 0.1;

    SurrogateConfig surrogate;
};

// Environment variable naming the default output directory.
inline constexpr const char* kOutputDirEnv = "QRWS_OUTPUT_DIR";

// Defaults, with output_dir taken from the environment when set.
Config default_config();

// Unknown keys and ill-typed values throw std::runtime_error.
Config config_from_json(const std::string& text, Config base = default_config());
std::string config_to_json(const Config& config);
Config load_config(const std::filesystem::path& path);

// Radians, also accepting pi literals: "pi", "-pi", "2pi", "pi/2", "3*pi/4".
double parse_angle(const std::string& text);

}  // namespace qrws
