// config.cpp

#include "qrws/config.hpp"

#include <cmath>
#include <cstdlib>
#include <numbers>
#include <set>
#include <stdexcept>

#include <json.hpp>
#include "qrws/io.hpp"

namespace qrws {

using nlohmann::json;

namespace {

void check_keys(const json& object, const std::set<std::string>& allowed, const std::string& where) {
    if (!object.is_object()) throw std::runtime_error("config: " + where + " must be an object");
    for (const auto& item : object.items())
        if (!allowed.contains(item.key())) throw std::runtime_error("config: unknown key " + where + "." + item.key());
}

template <typename T>
void take(const json& object, const char* key, T& field) {
    if (object.contains(key)) field = object.at(key).get<T>();
}

}  // namespace

Config default_config() {
    Config config;
    if (const char* dir = std::getenv(kOutputDirEnv); dir && *dir) config.output_dir = dir;
    return config;
}

Config config_from_json(const std::string& text, Config base) {
    try {
        const json j = json::parse(text);
        check_keys(j, {"output_dir", "threads", "grid", "random", "curve_steps", "ridge_fraction", "robustness", "surrogate"},
                   "config");
        if (j.contains("output_dir")) base.output_dir = j.at("output_dir").get<std::string>();
        take(j, "threads", base.threads);
        take(j, "curve_steps", base.curve_steps);
        take(j, "ridge_fraction", base.ridge_fraction);
        if (j.contains("grid")) {
            const json& g = j.at("grid");
            check_keys(g, {"phi_steps", "zeta_steps"}, "grid");
            take(g, "phi_steps", base.grid_phi_steps);
            take(g, "zeta_steps", base.grid_zeta_steps);
        }
        if (j.contains("random")) {
            const json& r = j.at("random");
            check_keys(r, {"samples", "seed"}, "random");
            take(r, "samples", base.random_samples);
            take(r, "seed", base.seed);
        }
        if (j.contains("robustness")) {
            const json& r = j.at("robustness");
            check_keys(r, {"phi_steps", "alpha_steps", "alpha_min", "alpha_max", "sigma_phi", "sigma_alpha"}, "robustness");
            take(r, "phi_steps", base.axes.phi_steps);
            take(r, "alpha_steps", base.axes.alpha_steps);
            take(r, "alpha_min", base.axes.alpha_min);
            take(r, "alpha_max", base.axes.alpha_max);
            take(r, "sigma_phi", base.sigma_phi);
            take(r, "sigma_alpha", base.sigma_alpha);
        }
        if (j.contains("surrogate")) {
            const json& s = j.at("surrogate");
            check_keys(s,
                       {"m_min", "m_max", "grid_steps", "hidden_layers", "width", "epochs", "batch_size", "learning_rate",
                        "beta1", "beta2", "adam_epsilon", "validation_fraction", "seed", "min_records_per_m"},
                       "surrogate");
            auto& t = base.surrogate.train;
            take(s, "m_min", base.surrogate.m_min);
            take(s, "m_max", base.surrogate.m_max);
            take(s, "grid_steps", base.surrogate.grid_steps);
            take(s, "hidden_layers", t.hidden_layers);
            take(s, "width", t.width);
            take(s, "epochs", t.epochs);
            take(s, "batch_size", t.batch_size);
            take(s, "learning_rate", t.learning_rate);
            take(s, "beta1", t.beta1);
            take(s, "beta2", t.beta2);
            take(s, "adam_epsilon", t.adam_epsilon);
            take(s, "validation_fraction", t.validation_fraction);
            take(s, "seed", t.seed);
            take(s, "min_records_per_m", t.min_records_per_m);
        }
    } catch (const json::exception& e) {
        throw std::runtime_error(std::string("config: ") + e.what());
    }
    return base;
}

std::string config_to_json(const Config& c) {
    const auto& t = c.surrogate.train;
    const json j = {
        {"output_dir", c.output_dir.string()},
        {"threads", c.threads},
        {"grid", {{"phi_steps", c.grid_phi_steps}, {"zeta_steps", c.grid_zeta_steps}}},
        {"random", {{"samples", c.random_samples}, {"seed", c.seed}}},
        {"curve_steps", c.curve_steps},
        {"ridge_fraction", c.ridge_fraction},
        {"robustness",
         {{"phi_steps", c.axes.phi_steps},
          {"alpha_steps", c.axes.alpha_steps},
          {"alpha_min", c.axes.alpha_min},
          {"alpha_max", c.axes.alpha_max},
          {"sigma_phi", c.sigma_phi},
          {"sigma_alpha", c.sigma_alpha}}},
        {"surrogate",
         {{"m_min", c.surrogate.m_min},
          {"m_max", c.surrogate.m_max},
          {"grid_steps", c.surrogate.grid_steps},
          {"hidden_layers", t.hidden_layers},
          {"width", t.width},
          {"epochs", t.epochs},
          {"batch_size", t.batch_size},
          {"learning_rate", t.learning_rate},
          {"beta1", t.beta1},
          {"beta2", t.beta2},
          {"adam_epsilon", t.adam_epsilon},
          {"validation_fraction", t.validation_fraction},
          {"seed", t.seed},
          {"min_records_per_m", t.min_records_per_m}}},
    };
    return j.dump(2) + "\n";
}

Config load_config(const std::filesystem::path& path) { return config_from_json(read_text_file(path)); }

double parse_angle(const std::string& text) {
    auto to_number = [&](const std::string& s) {
        std::size_t used = 0;
        double v = 0.0;
        try {
            v = std::stod(s, &used);
        } catch (const std::exception&) {
            used = 0;
        }
        if (s.empty() || used != s.size() || !std::isfinite(v)) throw std::invalid_argument("bad angle '" + text + "'");
        return v;
    };
    const auto at = text.find("pi");
    if (at == std::string::npos) return to_number(text);

    std::string coefficient = text.substr(0, at);
    if (!coefficient.empty() && coefficient.back() == '*') coefficient.pop_back();
    double value = std::numbers::pi;
    if (coefficient == "-") value = -value;
    else if (!coefficient.empty() && coefficient != "+") value *= to_number(coefficient);

    const std::string rest = text.substr(at + 2);
    if (rest.empty()) return value;
    if (rest[0] != '/') throw std::invalid_argument("bad angle '" + text + "'");
    const double denominator = to_number(rest.substr(1));
    if (denominator == 0.0) throw std::invalid_argument("bad angle '" + text + "'");
    return value / denominator;
}

}  // namespace qrws
