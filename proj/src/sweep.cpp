// sweep.cpp

#include "qrws/sweep.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "qrws/coin.hpp"
#include "qrws/io.hpp"
#include "qrws/parallel.hpp"
#include "qrws/walk.hpp"

namespace qrws {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

double unit_interval(std::uint64_t bits) { return static_cast<double>(bits >> 11) * 0x1.0p-53; }

double evaluate(int m, double phi, double zeta, int iterations) {
    RunConfig config;
    config.dimension = m;
    config.phi = phi;
    config.zeta = zeta;
    config.iterations = iterations;
    return run(config);
}

}  // namespace

std::pair<double, double> random_angles(std::uint64_t seed, std::uint64_t index) {
    const std::uint64_t key = splitmix64(seed);
    const std::uint64_t a = splitmix64(key ^ splitmix64(2 * index));
    const std::uint64_t b = splitmix64(key ^ splitmix64(2 * index + 1));
    return {kTwoPi * unit_interval(a), kTwoPi * unit_interval(b)};
}

double grid_angle(int i, int steps) { return std::numbers::pi * (2.0 * i / steps); }

SweepDataset sweep_random(int m, std::size_t samples, std::uint64_t seed, const SweepOptions& options) {
    if (samples < 1) throw std::invalid_argument("samples must be >= 1");
    const int k = options.iterations.value_or(iteration_count(m));
    SweepDataset dataset;
    dataset.meta = {SweepMode::Random, m, k, seed, samples, 0, 0};
    dataset.records.resize(samples);
    // validate once up front so worker threads only see valid configs
    RunConfig{m, 0.0, 0.0, 0, k}.validate();
    parallel_for(
        samples,
        [&](std::size_t i) {
            const auto [phi, zeta] = random_angles(seed, i);
            dataset.records[i] = {phi, zeta, m, evaluate(m, phi, zeta, k)};
        },
        options.threads);
    return dataset;
}

SweepDataset sweep_grid(int m, int phi_steps, int zeta_steps, const SweepOptions& options) {
    if (phi_steps < 2 || zeta_steps < 2) throw std::invalid_argument("grid steps must be >= 2");
    const int k = options.iterations.value_or(iteration_count(m));
    SweepDataset dataset;
    dataset.meta = {SweepMode::Grid, m, k, 0, 0, phi_steps, zeta_steps};
    const std::size_t total = static_cast<std::size_t>(phi_steps) * zeta_steps;
    dataset.records.resize(total);
    RunConfig{m, 0.0, 0.0, 0, k}.validate();
    parallel_for(
        total,
        [&](std::size_t n) {
            const int i = static_cast<int>(n / zeta_steps) + 1;
            const int j = static_cast<int>(n % zeta_steps) + 1;
            const double phi = reduce_angle(grid_angle(i, phi_steps));
            const double zeta = reduce_angle(grid_angle(j, zeta_steps));
            dataset.records[n] = {phi, zeta, m, evaluate(m, phi, zeta, k)};
        },
        options.threads);
    return dataset;
}

std::string to_string(SweepMode mode) { return mode == SweepMode::Random ? "random" : "grid"; }

std::string sweep_meta_json(const SweepMeta& meta) {
    nlohmann::ordered_json j;
    j["format"] = "qrws-sweep/1";
    j["mode"] = to_string(meta.mode);
    j["m"] = meta.m;
    j["iterations"] = meta.iterations;
    if (meta.mode == SweepMode::Random) {
        j["seed"] = meta.seed;
        j["samples"] = meta.samples;
    } else {
        j["phi_steps"] = meta.phi_steps;
        j["zeta_steps"] = meta.zeta_steps;
    }
    return j.dump(2) + "\n";
}

void write_sweep_csv(const SweepDataset& dataset, const std::filesystem::path& path) {
    std::ostringstream out;
    out << "phi,zeta,m,p\n";
    for (const auto& r : dataset.records)
        out << format_g12(r.phi) << ',' << format_g12(r.zeta) << ',' << r.m << ',' << format_g12(r.p) << '\n';
    write_text_file(path, out.str());
}

void write_sweep_meta(const SweepDataset& dataset, const std::filesystem::path& path) {
    write_text_file(path, sweep_meta_json(dataset.meta));
}

SweepDataset read_sweep(const std::filesystem::path& csv_path) {
    auto meta_path = csv_path;
    meta_path.replace_extension(".json");
    return read_sweep(csv_path, meta_path);
}

SweepDataset read_sweep(const std::filesystem::path& csv_path, const std::filesystem::path& meta_path) {
    SweepDataset dataset;

    const auto meta = nlohmann::json::parse(read_text_file(meta_path));
    const std::string mode = meta.at("mode").get<std::string>();
    if (mode != "random" && mode != "grid") throw std::runtime_error(meta_path.string() + ": unknown sweep mode");
    dataset.meta.mode = mode == "random" ? SweepMode::Random : SweepMode::Grid;
    dataset.meta.m = meta.at("m").get<int>();
    dataset.meta.iterations = meta.at("iterations").get<int>();
    if (dataset.meta.mode == SweepMode::Random) {
        dataset.meta.seed = meta.at("seed").get<std::uint64_t>();
        dataset.meta.samples = meta.at("samples").get<std::size_t>();
    } else {
        dataset.meta.phi_steps = meta.at("phi_steps").get<int>();
        dataset.meta.zeta_steps = meta.at("zeta_steps").get<int>();
    }

    std::istringstream in(read_text_file(csv_path));
    std::string line;
    if (!std::getline(in, line) || line != "phi,zeta,m,p")
        throw std::runtime_error(csv_path.string() + ": expected header 'phi,zeta,m,p'");
    std::size_t line_number = 1;
    while (std::getline(in, line)) {
        ++line_number;
        if (line.empty()) continue;
        SweepRecord r;
        char c1 = 0, c2 = 0, c3 = 0;
        std::istringstream fields(line);
        if (!(fields >> r.phi >> c1 >> r.zeta >> c2 >> r.m >> c3 >> r.p) || c1 != ',' || c2 != ',' || c3 != ',')
            throw std::runtime_error(csv_path.string() + ":" + std::to_string(line_number) + ": malformed record");
        dataset.records.push_back(r);
    }
    if (dataset.meta.mode == SweepMode::Grid &&
        dataset.records.size() != static_cast<std::size_t>(dataset.meta.phi_steps) * dataset.meta.zeta_steps)
        throw std::runtime_error(csv_path.string() + ": record count does not match grid dimensions");
    return dataset;
}

}  // namespace qrws
