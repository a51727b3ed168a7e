// pipeline.cpp

#include "qrws/pipeline.hpp"

#include <cstdio>
#include <numbers>
#include <stdexcept>

#include <json.hpp>
#include "qrws/heatmap.hpp"
#include "qrws/io.hpp"
#include "qrws/walk.hpp"

namespace qrws {

using nlohmann::json;

namespace {

std::string coin_dir(int m) {
    char buf[16];
    std::snprintf(buf, sizeof buf, "m%02d", m);
    return buf;
}

std::string threshold_tag(const WidthThreshold& t) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%s_%g", to_string(t.mode).c_str(), t.value);
    return buf;
}

const std::array<const char*, 4> kRelationTags{"linear", "constant", "sinusoidal_benchmark", "sinusoidal_fit"};

class Writer {
public:
    Writer(std::filesystem::path root, const LogFn& log) : root_(std::move(root)), log_(log) {}

    void text(const std::string& kind, int m, const std::filesystem::path& relative, const std::string& contents,
              json parameters) {
        write_text_file(root_ / relative, contents);
        record(kind, m, relative, std::move(parameters));
    }

    template <typename Fn>
    void with(const std::string& kind, int m, const std::filesystem::path& relative, json parameters, Fn&& write) {
        write(root_ / relative);
        record(kind, m, relative, std::move(parameters));
    }

    void mark_partial() noexcept {
        for (const auto& a : artifacts_) {
            std::error_code ec;
            const auto full = root_ / a.path;
            std::filesystem::rename(full, full.string() + ".partial", ec);
        }
    }

    std::vector<Artifact>& artifacts() { return artifacts_; }
    const std::filesystem::path& root() const { return root_; }

private:
    void record(const std::string& kind, int m, const std::filesystem::path& relative, json parameters) {
        artifacts_.push_back({kind, m, relative, parameters.dump()});
        if (log_) log_("wrote " + (root_ / relative).string());
    }

    std::filesystem::path root_;
    const LogFn& log_;
    std::vector<Artifact> artifacts_;
};

CoinSizeResult process(const Config& config, int m, Writer& out, const LogFn& log) {
    const std::filesystem::path dir = coin_dir(m);
    SweepOptions sweep_options;
    sweep_options.threads = config.threads;
    CoinSizeResult result;
    result.m = m;

    if (log) log("m=" + std::to_string(m) + ": sweeps");
    const SweepDataset random = sweep_random(m, config.random_samples, config.seed, sweep_options);
    const json random_params = {{"mode", "random"}, {"samples", config.random_samples}, {"seed", config.seed}};
    out.with("sweep", m, dir / "sweep_random.csv", random_params, [&](const auto& p) { write_sweep_csv(random, p); });
    out.with("sweep_meta", m, dir / "sweep_random.json", random_params, [&](const auto& p) { write_sweep_meta(random, p); });

    const SweepDataset grid = sweep_grid(m, config.grid_phi_steps, config.grid_zeta_steps, sweep_options);
    const json grid_params = {{"mode", "grid"}, {"phi_steps", config.grid_phi_steps}, {"zeta_steps", config.grid_zeta_steps}};
    out.with("sweep", m, dir / "sweep_grid.csv", grid_params, [&](const auto& p) { write_sweep_csv(grid, p); });
    out.with("sweep_meta", m, dir / "sweep_grid.json", grid_params, [&](const auto& p) { write_sweep_meta(grid, p); });
    out.with("heatmap", m, dir / "landscape.pgm", {{"field", "p(phi,zeta)"}, {"scale", "linear"}},
             [&](const auto& p) { write_heatmap(field_from(grid), p, HeatmapScale::Linear, "p(phi,zeta) m=" + std::to_string(m)); });

    const auto ridge = extract_ridge(grid, config.ridge_fraction);
    out.with("ridge", m, dir / "ridge.csv", {{"column_fraction", config.ridge_fraction}},
             [&](const auto& p) { write_ridge_csv(ridge, p); });
    result.alpha_fit = fit_alpha(ridge);
    result.ridge_points = ridge.size();
    const json alpha_doc = {{"m", m},
                            {"alpha", result.alpha_fit},
                            {"ridge_points", ridge.size()},
                            {"column_fraction", config.ridge_fraction}};
    out.text("alpha", m, dir / "alpha.json", alpha_doc.dump(2) + "\n", {{"column_fraction", config.ridge_fraction}});

    if (log) log("m=" + std::to_string(m) + ": curves and widths");
    const auto relations = pipeline_relations(result.alpha_fit);
    for (std::size_t r = 0; r < relations.size(); ++r) {
        CurveProfile profile = curve_profile(m, relations[r], config.curve_steps, config.threads);
        const json params = {{"relation", relations[r].name()}, {"alpha", relations[r].alpha}, {"phi_steps", config.curve_steps}};
        out.with("curve", m, dir / (std::string("curve_") + kRelationTags[r] + ".csv"), params,
                 [&](const auto& p) { write_profile_csv(profile, p); });
        std::vector<WidthResult> widths;
        for (const auto& t : kPipelineWidths) widths.push_back(width(profile, t.mode, t.value));
        result.widths.push_back(std::move(widths));
        result.profiles.push_back(std::move(profile));
    }
    for (std::size_t t = 0; t < kPipelineWidths.size(); ++t) {
        json doc = json::array();
        for (std::size_t r = 0; r < relations.size(); ++r)
            doc.push_back(json::parse(width_json(result.profiles[r], result.widths[r][t])));
        out.text("width", m, dir / ("width_" + threshold_tag(kPipelineWidths[t]) + ".json"), doc.dump(2) + "\n",
                 {{"mode", to_string(kPipelineWidths[t].mode)}, {"value", kPipelineWidths[t].value}});
    }

    if (log) log("m=" + std::to_string(m) + ": robustness");
    const json robust_params = {{"alpha_center", result.alpha_fit},
                                {"sigma_phi", config.sigma_phi},
                                {"sigma_alpha", config.sigma_alpha},
                                {"phi_steps", config.axes.phi_steps},
                                {"alpha_steps", config.axes.alpha_steps},
                                {"alpha_min", config.axes.alpha_min},
                                {"alpha_max", config.axes.alpha_max}};
    result.sigma_p =
        sigma_p_grid(m, result.alpha_fit, config.sigma_phi, config.sigma_alpha, config.axes, config.threads);
    out.with("sigma_p", m, dir / "sigma_p.csv", robust_params, [&](const auto& p) { write_grid_csv(result.sigma_p, p); });
    out.with("heatmap", m, dir / "sigma_p.pgm", {{"field", "sigma_p"}, {"scale", "log"}},
             [&](const auto& p) { write_heatmap(field_from(result.sigma_p), p, HeatmapScale::Log, "sigma_p m=" + std::to_string(m)); });

    result.sigma_prime = sigma_p_prime(m, config.sigma_phi, config.axes.phi_steps, config.threads);
    out.with("sigma_p_prime", m, dir / "sigma_p_prime.csv",
             {{"sigma_phi", config.sigma_phi}, {"phi_steps", config.axes.phi_steps}},
             [&](const auto& p) { write_sigma_prime_csv(result.sigma_prime, p); });

    result.ratio = ratio_map(result.sigma_p, result.sigma_prime);
    out.with("ratio", m, dir / "ratio.csv", robust_params, [&](const auto& p) { write_grid_csv(result.ratio, p); });
    out.with("heatmap", m, dir / "ratio.pgm", {{"field", "ratio"}, {"scale", "log"}},
             [&](const auto& p) { write_heatmap(field_from(result.ratio), p, HeatmapScale::Log, "ratio m=" + std::to_string(m)); });
    return result;
}

}  // namespace

std::vector<CurveRelation> pipeline_relations(double alpha_fit) {
    return {CurveRelation::linear(), CurveRelation::constant(),
            CurveRelation::sinusoidal(-1.0 / (2.0 * std::numbers::pi)), CurveRelation::sinusoidal(alpha_fit)};
}

std::string manifest_json(const Config& config, int m_first, int m_last, const std::vector<Artifact>& artifacts) {
    json list = json::array();
    for (const auto& a : artifacts)
        list.push_back({{"kind", a.kind}, {"m", a.m}, {"path", a.path.generic_string()}, {"parameters", json::parse(a.parameters)}});
    json doc = {{"format", "qrws-manifest/1"},
                {"m_first", m_first},
                {"m_last", m_last},
                {"config", json::parse(config_to_json(config))},
                {"artifacts", list}};
    doc["config"].erase("output_dir");
    doc["config"].erase("threads");
    return doc.dump(2) + "\n";
}

PipelineResult run_pipeline(const Config& config, int m_first, int m_last, const std::filesystem::path& output_dir,
                            const LogFn& log) {
    if (m_first < 2 || m_last < m_first || m_last > kMaxDimension)
        throw std::invalid_argument("pipeline needs 2 <= m_first <= m_last <= " + std::to_string(kMaxDimension));
    Writer out(output_dir, log);
    PipelineResult result;
    try {
        for (int m = m_first; m <= m_last; ++m) result.coin_sizes.push_back(process(config, m, out, log));
        write_text_file(output_dir / "manifest.json", manifest_json(config, m_first, m_last, out.artifacts()));
    } catch (...) {
        out.mark_partial();
        throw;
    }
    result.artifacts = std::move(out.artifacts());
    return result;
}

}  // namespace qrws
