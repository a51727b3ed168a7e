// qrws_cli.cpp
// Command-line front end: single runs, sweeps, curve and width analysis,
// alpha fits, robustness fields, surrogate training and the full pipeline.

#include <CLI11.hpp>

#include <cstdio>
#include <iostream>
#include <numbers>
#include <optional>
#include <string>

#include "qrws/analysis.hpp"
#include "qrws/config.hpp"
#include "qrws/heatmap.hpp"
#include "qrws/io.hpp"
#include "qrws/pipeline.hpp"
#include "qrws/surrogate.hpp"
#include "qrws/sweep.hpp"
#include "qrws/walk.hpp"

using namespace qrws;

namespace {

constexpr int kUsageError = 2;
constexpr int kRuntimeError = 1;

struct UsageError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct Globals {
    std::string config_path;
    std::string output_dir;
    std::optional<unsigned> threads;

    Config load() const {
        Config config = config_path.empty() ? default_config() : load_config(config_path);
        if (!output_dir.empty()) config.output_dir = output_dir;
        if (threads) config.threads = *threads;
        return config;
    }
};

struct AngleArg {
    std::string text;
    double value() const { return parse_angle(text); }
};

CurveRelation relation_from(const std::string& name, const std::string& alpha) {
    const double a = alpha.empty() ? 0.0 : parse_angle(alpha);
    if (name == "sinusoidal" && alpha.empty()) throw UsageError("--alpha is required for the sinusoidal relation");
    return parse_curve_kind(name, a);
}

std::filesystem::path default_path(const Config& config, const std::string& given, const std::string& name) {
    return given.empty() ? config.output_dir / name : std::filesystem::path(given);
}

std::string tag(const char* prefix, int m, const char* suffix) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%s_m%02d%s", prefix, m, suffix);
    return buf;
}

SweepDataset load_or_sweep_grid(const std::string& input, int m, int steps, const Config& config) {
    if (!input.empty()) return read_sweep(input);
    if (m < 2) throw UsageError("give --input or --m");
    SweepOptions options;
    options.threads = config.threads;
    return sweep_grid(m, steps, steps, options);
}

void print_json(const std::string& text) { std::cout << text << (text.ends_with('\n') ? "" : "\n"); }

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Quantum random walk search on the hypercube with a generalized Householder coin"};
    app.require_subcommand(1);
    Globals globals;
    app.add_option("--config", globals.config_path, "JSON config file; flags override its values")->check(CLI::ExistingFile);
    app.add_option("--output-dir", globals.output_dir,
                   std::string("Default output directory (otherwise ") + kOutputDirEnv + " or ./qrws-out)");
    app.add_option("--threads", globals.threads, "Worker threads (0 = all cores)");

    // run
    auto* run_cmd = app.add_subcommand("run", "Simulate one search and print the success probability");
    int run_m = 0;
    AngleArg run_phi, run_zeta;
    std::optional<int> run_iterations;
    std::uint64_t run_target = 0;
    run_cmd->add_option("--m", run_m, "Coin dimension")->required();
    run_cmd->add_option("--phi", run_phi.text, "Coin phase phi (radians, 'pi' allowed)")->required();
    run_cmd->add_option("--zeta", run_zeta.text, "Global phase zeta (radians, 'pi' allowed)")->required();
    run_cmd->add_option("--iterations", run_iterations, "Iterations (default: optimal count for m)");
    run_cmd->add_option("--target", run_target, "Marked node");

    // sweep
    auto* sweep_cmd = app.add_subcommand("sweep", "Sample p(phi, zeta) on a grid or at random angles");
    int sweep_m = 0;
    std::string sweep_mode = "grid", sweep_out;
    std::optional<int> sweep_phi_steps, sweep_zeta_steps;
    std::optional<std::size_t> sweep_samples;
    std::optional<std::uint64_t> sweep_seed;
    sweep_cmd->add_option("--m", sweep_m, "Coin dimension")->required();
    sweep_cmd->add_option("--mode", sweep_mode, "grid or random")->check(CLI::IsMember({"grid", "random"}));
    sweep_cmd->add_option("--phi-steps", sweep_phi_steps, "Grid points along phi");
    sweep_cmd->add_option("--zeta-steps", sweep_zeta_steps, "Grid points along zeta");
    sweep_cmd->add_option("--samples", sweep_samples, "Random samples");
    sweep_cmd->add_option("--seed", sweep_seed, "Random seed");
    sweep_cmd->add_option("--out", sweep_out, "CSV path; the JSON sidecar goes next to it");

    // curve
    auto* curve_cmd = app.add_subcommand("curve", "p(phi) along a zeta(phi) relation");
    int curve_m = 0;
    std::string curve_relation, curve_alpha, curve_out;
    std::optional<int> curve_steps;
    curve_cmd->add_option("--m", curve_m, "Coin dimension")->required();
    curve_cmd->add_option("--relation", curve_relation, "linear, constant or sinusoidal")->required();
    curve_cmd->add_option("--alpha", curve_alpha, "Sinusoidal amplitude");
    curve_cmd->add_option("--steps", curve_steps, "Points along phi");
    curve_cmd->add_option("--out", curve_out, "CSV path");

    // width
    auto* width_cmd = app.add_subcommand("width", "Stability width around the curve maximum");
    int width_m = 0;
    std::string width_relation, width_alpha, width_mode = "fraction", width_out;
    double width_value = 0.9;
    std::optional<int> width_steps;
    width_cmd->add_option("--m", width_m, "Coin dimension")->required();
    width_cmd->add_option("--relation", width_relation, "linear, constant or sinusoidal")->required();
    width_cmd->add_option("--alpha", width_alpha, "Sinusoidal amplitude");
    width_cmd->add_option("--mode", width_mode, "fraction or absolute")->check(CLI::IsMember({"fraction", "absolute"}));
    width_cmd->add_option("--value", width_value, "Fraction of p_max, or absolute probability");
    width_cmd->add_option("--steps", width_steps, "Points along phi");
    width_cmd->add_option("--out", width_out, "JSON path (otherwise stdout only)");

    // fit-alpha
    auto* fit_cmd = app.add_subcommand("fit-alpha", "Fit the sinusoidal amplitude to the landscape ridge");
    int fit_m = 0;
    std::string fit_input, fit_ridge_out;
    std::optional<double> fit_fraction;
    std::optional<int> fit_steps;
    fit_cmd->add_option("--m", fit_m, "Coin dimension (sweeps a grid when no --input)");
    fit_cmd->add_option("--input", fit_input, "Grid sweep CSV with its JSON sidecar")->check(CLI::ExistingFile);
    fit_cmd->add_option("--steps", fit_steps, "Grid points per axis for a fresh sweep");
    fit_cmd->add_option("--fraction", fit_fraction, "Column cutoff relative to the global maximum");
    fit_cmd->add_option("--ridge-out", fit_ridge_out, "Also write the ridge CSV");

    // robustness
    auto* robust_cmd = app.add_subcommand("robustness", "sigma_p field over (phi, alpha)");
    int robust_m = 0;
    std::string robust_center, robust_out, robust_heatmap;
    std::optional<double> robust_sigma_phi, robust_sigma_alpha;
    robust_cmd->add_option("--m", robust_m, "Coin dimension")->required();
    robust_cmd->add_option("--alpha-center", robust_center, "Center of the alpha axis (default: fitted alpha)");
    robust_cmd->add_option("--sigma-phi", robust_sigma_phi, "phi uncertainty");
    robust_cmd->add_option("--sigma-alpha", robust_sigma_alpha, "alpha uncertainty");
    robust_cmd->add_option("--out", robust_out, "Grid CSV path");
    robust_cmd->add_option("--heatmap", robust_heatmap, "Also write a log-scale PGM");

    // ratio
    auto* ratio_cmd = app.add_subcommand("ratio", "sigma_p / sigma_p' relative stability map");
    int ratio_m = 0;
    std::string ratio_center, ratio_out, ratio_heatmap;
    ratio_cmd->add_option("--m", ratio_m, "Coin dimension")->required();
    ratio_cmd->add_option("--alpha-center", ratio_center, "Center of the alpha axis (default: fitted alpha)");
    ratio_cmd->add_option("--out", ratio_out, "Grid CSV path");
    ratio_cmd->add_option("--heatmap", ratio_heatmap, "Also write a log-scale PGM");

    // surrogate-train
    auto* train_cmd = app.add_subcommand("surrogate-train", "Train the surrogate network on grid sweeps");
    std::string train_model;
    std::optional<int> train_epochs, train_m_min, train_m_max, train_grid;
    std::optional<std::uint64_t> train_seed;
    bool train_quiet = false;
    train_cmd->add_option("--model", train_model, "Output model JSON");
    train_cmd->add_option("--epochs", train_epochs, "Training epochs");
    train_cmd->add_option("--seed", train_seed, "Shuffle and initialization seed");
    train_cmd->add_option("--m-min", train_m_min, "Smallest training coin dimension");
    train_cmd->add_option("--m-max", train_m_max, "Largest training coin dimension");
    train_cmd->add_option("--grid-steps", train_grid, "Training grid points per axis");
    train_cmd->add_flag("--quiet", train_quiet, "No per-epoch log");

    // surrogate-predict
    auto* predict_cmd = app.add_subcommand("surrogate-predict", "Predict a landscape and its alpha");
    std::string predict_model, predict_out;
    int predict_m = 0, predict_steps = 180;
    predict_cmd->add_option("--model", predict_model, "Model JSON")->required()->check(CLI::ExistingFile);
    predict_cmd->add_option("--m", predict_m, "Coin dimension")->required();
    predict_cmd->add_option("--steps", predict_steps, "Grid points per axis");
    predict_cmd->add_option("--out", predict_out, "Predicted grid CSV");

    // pipeline
    auto* pipe_cmd = app.add_subcommand("pipeline", "Full per-coin-size workflow with manifest");
    std::string pipe_range = "4..10", pipe_out;
    bool pipe_quiet = false;
    pipe_cmd->add_option("--m", pipe_range, "Coin dimension or range a..b");
    pipe_cmd->add_option("--out", pipe_out, "Output directory");
    pipe_cmd->add_flag("--quiet", pipe_quiet, "No progress log");

    // heatmap
    auto* heat_cmd = app.add_subcommand("heatmap", "Render a sweep or grid CSV as PGM");
    std::string heat_input, heat_out, heat_scale = "linear";
    heat_cmd->add_option("--input", heat_input, "Grid sweep CSV or (phi, alpha) grid CSV")->required()->check(CLI::ExistingFile);
    heat_cmd->add_option("--out", heat_out, "PGM path")->required();
    heat_cmd->add_option("--scale", heat_scale, "linear or log")->check(CLI::IsMember({"linear", "log"}));

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kUsageError;
    }

    try {
        const Config config = globals.load();
        auto center_or_fit = [&](const std::string& given, int m) {
            if (!given.empty()) return parse_angle(given);
            SweepOptions options;
            options.threads = config.threads;
            const auto grid = sweep_grid(m, config.grid_phi_steps, config.grid_zeta_steps, options);
            return fit_alpha(extract_ridge(grid, config.ridge_fraction));
        };

        if (*run_cmd) {
            RunConfig rc;
            rc.dimension = run_m;
            rc.phi = run_phi.value();
            rc.zeta = run_zeta.value();
            rc.iterations = run_iterations;
            rc.target = run_target;
            rc.validate();
            std::printf("m=%d k=%d p=%.6f\n", run_m, rc.resolved_iterations(), run(rc));
        } else if (*sweep_cmd) {
            SweepOptions options;
            options.threads = config.threads;
            SweepDataset d;
            if (sweep_mode == "grid") {
                d = sweep_grid(sweep_m, sweep_phi_steps.value_or(config.grid_phi_steps),
                               sweep_zeta_steps.value_or(config.grid_zeta_steps), options);
            } else {
                d = sweep_random(sweep_m, sweep_samples.value_or(config.random_samples), sweep_seed.value_or(config.seed),
                                 options);
            }
            const auto path = default_path(config, sweep_out, tag("sweep", sweep_m, ("_" + sweep_mode + ".csv").c_str()));
            write_sweep_csv(d, path);
            auto meta = path;
            write_sweep_meta(d, meta.replace_extension(".json"));
            std::printf("wrote %zu records to %s\n", d.records.size(), path.string().c_str());
        } else if (*curve_cmd) {
            const auto profile = curve_profile(curve_m, relation_from(curve_relation, curve_alpha),
                                               curve_steps.value_or(config.curve_steps), config.threads);
            const auto path = default_path(config, curve_out, tag("curve", curve_m, ("_" + curve_relation + ".csv").c_str()));
            write_profile_csv(profile, path);
            std::printf("m=%d relation=%s p_max=%.6f phi_max=%.6f\n", curve_m, profile.relation.name().c_str(),
                        profile.p_max, profile.phi_max);
        } else if (*width_cmd) {
            const auto profile = curve_profile(width_m, relation_from(width_relation, width_alpha),
                                               width_steps.value_or(config.curve_steps), config.threads);
            const auto w = width(profile, width_mode == "fraction" ? WidthMode::Fraction : WidthMode::Absolute, width_value);
            const std::string doc = width_json(profile, w);
            if (!width_out.empty()) write_text_file(width_out, doc);
            print_json(doc);
        } else if (*fit_cmd) {
            const auto grid = load_or_sweep_grid(fit_input, fit_m, fit_steps.value_or(config.grid_phi_steps), config);
            const auto ridge = extract_ridge(grid, fit_fraction.value_or(config.ridge_fraction));
            if (!fit_ridge_out.empty()) write_ridge_csv(ridge, fit_ridge_out);
            const double alpha = fit_alpha(ridge);
            std::printf("m=%d alpha=%.6f ridge_points=%zu\n", grid.meta.m, alpha, ridge.size());
        } else if (*robust_cmd) {
            const double center = center_or_fit(robust_center, robust_m);
            const auto grid = sigma_p_grid(robust_m, center, robust_sigma_phi.value_or(config.sigma_phi),
                                           robust_sigma_alpha.value_or(config.sigma_alpha), config.axes, config.threads);
            const auto path = default_path(config, robust_out, tag("sigma_p", robust_m, ".csv"));
            write_grid_csv(grid, path);
            if (!robust_heatmap.empty()) write_heatmap(field_from(grid), robust_heatmap, HeatmapScale::Log);
            std::printf("m=%d alpha_center=%.6f wrote %s\n", robust_m, center, path.string().c_str());
        } else if (*ratio_cmd) {
            const double center = center_or_fit(ratio_center, ratio_m);
            const auto sigma = sigma_p_grid(ratio_m, center, config.sigma_phi, config.sigma_alpha, config.axes, config.threads);
            const auto prime = sigma_p_prime(ratio_m, config.sigma_phi, config.axes.phi_steps, config.threads);
            const auto ratio = ratio_map(sigma, prime);
            const auto window = central_window(prime.p_prime);
            const auto path = default_path(config, ratio_out, tag("ratio", ratio_m, ".csv"));
            write_grid_csv(ratio, path);
            if (!ratio_heatmap.empty()) write_heatmap(field_from(ratio), ratio_heatmap, HeatmapScale::Log);
            std::printf("m=%d alpha_center=%.6f window=[%.6f, %.6f] fraction_below_1e-2=%.6f\n", ratio_m, center,
                        prime.phis[window.first], prime.phis[window.second], fraction_below(ratio, window, 1e-2));
        } else if (*train_cmd) {
            SurrogateConfig sc = config.surrogate;
            if (train_epochs) sc.train.epochs = *train_epochs;
            if (train_seed) sc.train.seed = *train_seed;
            if (train_m_min) sc.m_min = *train_m_min;
            if (train_m_max) sc.m_max = *train_m_max;
            if (train_grid) sc.grid_steps = *train_grid;
            if (sc.m_min < 2 || sc.m_max < sc.m_min) throw UsageError("bad training range");
            SweepOptions options;
            options.threads = config.threads;
            std::vector<SweepDataset> data;
            for (int m = sc.m_min; m <= sc.m_max; ++m) data.push_back(sweep_grid(m, sc.grid_steps, sc.grid_steps, options));
            const auto result = train(data, sc.train, [&](int epoch, double tr, double va) {
                if (!train_quiet) std::fprintf(stderr, "epoch %d train %.3e validation %.3e\n", epoch, tr, va);
            });
            const auto path = default_path(config, train_model, "surrogate.json");
            save_model(result.model, path);
            std::printf("epochs=%d train_mse=%.3e validation_mse=%.3e model=%s\n", result.report.epochs_run,
                        result.report.final_train_loss, result.report.final_validation_loss, path.string().c_str());
        } else if (*predict_cmd) {
            const auto model = load_model(predict_model);
            const auto grid = predict_grid(model, predict_m, predict_steps, predict_steps);
            if (!predict_out.empty()) {
                write_sweep_csv(grid, predict_out);
                auto meta = std::filesystem::path(predict_out);
                write_sweep_meta(grid, meta.replace_extension(".json"));
            }
            const double alpha = fit_alpha(extract_ridge(grid, config.ridge_fraction));
            std::printf("m=%d alpha=%.6f p(pi,pi)=%.6f\n", predict_m, alpha,
                        forward(model, std::numbers::pi, std::numbers::pi, predict_m));
        } else if (*pipe_cmd) {
            int first = 0, last = 0;
            const auto dots = pipe_range.find("..");
            try {
                first = std::stoi(pipe_range.substr(0, dots));
                last = dots == std::string::npos ? first : std::stoi(pipe_range.substr(dots + 2));
            } catch (const std::exception&) {
                throw UsageError("--m expects an integer or a range a..b");
            }
            const std::filesystem::path out = pipe_out.empty() ? config.output_dir : std::filesystem::path(pipe_out);
            LogFn log;
            if (!pipe_quiet) log = [](const std::string& line) { std::fprintf(stderr, "%s\n", line.c_str()); };
            const auto result = run_pipeline(config, first, last, out, log);
            for (const auto& c : result.coin_sizes) std::printf("m=%d alpha=%.6f\n", c.m, c.alpha_fit);
            std::printf("wrote %zu artifacts and %s\n", result.artifacts.size(), (out / "manifest.json").string().c_str());
        } else if (*heat_cmd) {
            const std::string text = read_text_file(heat_input);
            const auto scale = parse_heatmap_scale(heat_scale);
            if (text.starts_with("phi,zeta,m,p")) {
                write_heatmap(field_from(read_sweep(heat_input)), heat_out, scale);
            } else {
                write_heatmap(field_from(read_grid_csv(heat_input, GridKind::Probability)), heat_out, scale);
            }
            std::printf("wrote %s\n", heat_out.c_str());
        }
    } catch (const std::invalid_argument& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kUsageError;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kRuntimeError;
    }
    return 0;
}
