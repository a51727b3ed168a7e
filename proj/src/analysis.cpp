// analysis.cpp

#include "qrws/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "qrws/error.hpp"
#include "qrws/io.hpp"
#include "qrws/parallel.hpp"
#include "qrws/walk.hpp"

namespace qrws {

namespace {

constexpr double kPi = std::numbers::pi;

// Central difference in the interior, one-sided at the two ends.
template <typename ValueAt>
double grid_derivative(std::span<const double> axis, std::size_t i, ValueAt value_at) {
    const std::size_t n = axis.size();
    const std::size_t lo = i == 0 ? 0 : i - 1;
    const std::size_t hi = i + 1 == n ? i : i + 1;
    return (value_at(hi) - value_at(lo)) / (axis[hi] - axis[lo]);
}

// Position where the linear interpolant between (x_pass, p_pass) and
// (x_fail, p_fail) crosses `threshold`.
double crossing(double x_pass, double p_pass, double x_fail, double p_fail, double threshold) {
    const double t = (p_pass - threshold) / (p_pass - p_fail);
    return x_pass + t * (x_fail - x_pass);
}

}  // namespace

std::vector<double> phi_grid(int steps) {
    if (steps < 2) throw std::invalid_argument("phi grid needs at least 2 steps");
    std::vector<double> phis(static_cast<std::size_t>(steps));
    for (int i = 1; i <= steps; ++i) phis[i - 1] = grid_angle(i, steps);
    return phis;
}

CurveProfile make_profile(int m, const CurveRelation& relation, std::vector<double> phis, std::vector<double> ps) {
    if (phis.size() != ps.size() || phis.empty()) throw std::invalid_argument("profile needs matching non-empty grids");
    CurveProfile profile;
    profile.m = m;
    profile.relation = relation;
    profile.phis = std::move(phis);
    profile.ps = std::move(ps);
    const auto it = std::max_element(profile.ps.begin(), profile.ps.end());
    profile.index_max = static_cast<std::size_t>(it - profile.ps.begin());
    profile.p_max = *it;
    profile.phi_max = profile.phis[profile.index_max];
    return profile;
}

CurveProfile curve_profile(int m, const CurveRelation& relation, int phi_steps, unsigned threads) {
    auto phis = phi_grid(phi_steps);
    std::vector<double> ps(phis.size());
    parallel_for(
        phis.size(), [&](std::size_t i) { ps[i] = success_probability(m, phis[i], zeta_of_phi(relation, phis[i])); },
        threads);
    return make_profile(m, relation, std::move(phis), std::move(ps));
}

std::string to_string(WidthMode mode) { return mode == WidthMode::Fraction ? "fraction" : "absolute"; }

WidthResult width(const CurveProfile& profile, WidthMode mode, double value) {
    WidthResult result;
    result.mode = mode;
    result.value = value;
    if (mode == WidthMode::Fraction) {
        if (!(value > 0.0 && value <= 1.0)) throw std::invalid_argument("fraction must lie in (0, 1]");
        result.threshold = value * profile.p_max;
    } else {
        if (!(value > 0.0 && value < 1.0)) throw std::invalid_argument("absolute threshold must lie in (0, 1)");
        result.threshold = value;
        if (value > profile.p_max) {
            result.unreached = true;
            return result;
        }
    }

    const auto& phis = profile.phis;
    const auto& ps = profile.ps;
    const std::size_t n = ps.size();
    const std::size_t top = profile.index_max;
    const double thr = result.threshold;

    std::size_t j = top;
    while (j + 1 < n && ps[j + 1] >= thr) ++j;
    const double right = j + 1 < n ? crossing(phis[j], ps[j], phis[j + 1], ps[j + 1], thr) : phis[j];

    std::size_t i = top;
    while (i > 0 && ps[i - 1] >= thr) --i;
    const double left = i > 0 ? crossing(phis[i], ps[i], phis[i - 1], ps[i - 1], thr) : phis[i];

    result.eps_plus = right - profile.phi_max;
    result.eps_minus = profile.phi_max - left;
    result.eps = 0.5 * (result.eps_minus + result.eps_plus);
    return result;
}

std::vector<RidgePoint> extract_ridge(const SweepDataset& dataset, double column_fraction) {
    if (dataset.meta.mode != SweepMode::Grid) throw std::invalid_argument("ridge extraction needs a grid dataset");
    const int rows = dataset.meta.phi_steps;
    const int cols = dataset.meta.zeta_steps;
    if (dataset.records.size() != static_cast<std::size_t>(rows) * cols)
        throw std::invalid_argument("grid dataset size does not match its dimensions");

    double global_max = 0.0;
    for (const auto& r : dataset.records) global_max = std::max(global_max, r.p);

    std::vector<RidgePoint> ridge;
    for (int i = 0; i < rows; ++i) {
        const SweepRecord* best = nullptr;
        for (int j = 0; j < cols; ++j) {
            const SweepRecord& r = dataset.records[static_cast<std::size_t>(i) * cols + j];
            if (!best || r.p > best->p || (r.p == best->p && r.zeta < best->zeta)) best = &r;
        }
        if (best->p < column_fraction * global_max) continue;
        ridge.push_back({best->phi, best->zeta});
    }
    return ridge;
}

double fit_alpha(std::span<const RidgePoint> ridge) {
    double numerator = 0.0;
    double denominator = 0.0;
    std::size_t used = 0;
    for (const auto& point : ridge) {
        const double s = sin_double_angle(point.phi);
        if (std::abs(s) <= 1e-6) continue;
        const double residual = wrap_to_pi(point.zeta - (-2.0 * point.phi + 3.0 * kPi));
        numerator += residual * s;
        denominator += s * s;
        ++used;
    }
    if (used < 3)
        throw UnderdeterminedError("alpha fit needs at least 3 ridge points with sin(2 phi) != 0, got " +
                                   std::to_string(used));
    return numerator / denominator;
}

double p_of_phi_alpha(int m, double phi, double alpha) {
    return success_probability(m, phi, zeta_of_phi(CurveRelation::sinusoidal(alpha), phi));
}

std::string to_string(GridKind kind) {
    switch (kind) {
        case GridKind::Probability: return "p";
        case GridKind::SigmaP: return "sigma_p";
        case GridKind::Ratio: return "ratio";
    }
    return "unknown";
}

std::vector<double> alpha_grid(const RobustnessAxes& axes) {
    if (axes.alpha_steps < 2 || !(axes.alpha_max > axes.alpha_min)) throw std::invalid_argument("bad alpha axis");
    std::vector<double> alphas(static_cast<std::size_t>(axes.alpha_steps));
    const double span = axes.alpha_max - axes.alpha_min;
    for (int j = 1; j <= axes.alpha_steps; ++j) alphas[j - 1] = axes.alpha_min + span * j / axes.alpha_steps;
    return alphas;
}

RobustnessGrid probability_grid(int m, const RobustnessAxes& axes, unsigned threads) {
    RobustnessGrid grid;
    grid.m = m;
    grid.kind = GridKind::Probability;
    grid.phis = phi_grid(axes.phi_steps);
    grid.alphas = alpha_grid(axes);
    grid.values.assign(grid.phis.size() * grid.alphas.size(), 0.0);
    grid.valid.assign(grid.values.size(), 1);
    RunConfig{m, 0.0, 0.0, 0, std::nullopt}.validate();
    parallel_for(
        grid.values.size(),
        [&](std::size_t n) {
            const std::size_t i = n / grid.alphas.size();
            const std::size_t j = n % grid.alphas.size();
            grid.values[n] = p_of_phi_alpha(m, grid.phis[i], grid.alphas[j]);
        },
        threads);
    return grid;
}

RobustnessGrid sigma_p_grid(const RobustnessGrid& probability, double alpha_center, double sigma_phi,
                            double sigma_alpha) {
    if (probability.kind != GridKind::Probability) throw std::invalid_argument("sigma_p needs a probability grid");
    RobustnessGrid out = probability;
    out.kind = GridKind::SigmaP;
    const std::size_t rows = probability.phis.size();
    const std::size_t cols = probability.alphas.size();
    for (std::size_t i = 0; i < rows; ++i) {
        for (std::size_t j = 0; j < cols; ++j) {
            const std::size_t n = out.offset(i, j);
            const double p = probability.values[n];
            if (!(p >= kProbabilityFloor)) {
                out.values[n] = std::nan("");
                out.valid[n] = 0;
                continue;
            }
            const double dp_dphi =
                grid_derivative(probability.phis, i, [&](std::size_t r) { return probability.at(r, j); });
            const double dp_dalpha =
                grid_derivative(probability.alphas, j, [&](std::size_t c) { return probability.at(i, c); });
            const double a = dp_dphi * sigma_phi * (probability.phis[i] - kPi);
            const double b = dp_dalpha * sigma_alpha * (probability.alphas[j] - alpha_center);
            out.values[n] = std::sqrt(a * a + b * b) / p;
            out.valid[n] = 1;
        }
    }
    return out;
}

RobustnessGrid sigma_p_grid(int m, double alpha_center, double sigma_phi, double sigma_alpha,
                            const RobustnessAxes& axes, unsigned threads) {
    return sigma_p_grid(probability_grid(m, axes, threads), alpha_center, sigma_phi, sigma_alpha);
}

SigmaPrime sigma_p_prime(const CurveProfile& constant_profile, double sigma_phi) {
    if (constant_profile.relation.kind != CurveKind::Constant)
        throw std::invalid_argument("sigma_p' is defined on the constant-zeta profile");
    SigmaPrime out;
    out.m = constant_profile.m;
    out.phis = constant_profile.phis;
    out.p_prime = constant_profile.ps;
    out.values.assign(out.phis.size(), 0.0);
    out.valid.assign(out.phis.size(), 1);
    for (std::size_t i = 0; i < out.phis.size(); ++i) {
        const double p = out.p_prime[i];
        if (!(p >= kProbabilityFloor)) {
            out.values[i] = std::nan("");
            out.valid[i] = 0;
            continue;
        }
        const double slope = grid_derivative(out.phis, i, [&](std::size_t r) { return out.p_prime[r]; });
        out.values[i] = std::abs(slope * sigma_phi * (out.phis[i] - kPi)) / p;
    }
    return out;
}

SigmaPrime sigma_p_prime(int m, double sigma_phi, int phi_steps, unsigned threads) {
    return sigma_p_prime(curve_profile(m, CurveRelation::constant(), phi_steps, threads), sigma_phi);
}

RobustnessGrid ratio_map(const RobustnessGrid& sigma_grid, const SigmaPrime& sigma_prime) {
    if (sigma_grid.phis != sigma_prime.phis) throw std::invalid_argument("ratio_map needs matching phi grids");
    RobustnessGrid out = sigma_grid;
    out.kind = GridKind::Ratio;
    for (std::size_t i = 0; i < out.phis.size(); ++i) {
        for (std::size_t j = 0; j < out.alphas.size(); ++j) {
            const std::size_t n = out.offset(i, j);
            const double denominator = sigma_prime.values[i];
            if (!sigma_grid.valid[n] || !sigma_prime.valid[i] || denominator == 0.0) {
                out.values[n] = std::nan("");
                out.valid[n] = 0;
                continue;
            }
            out.values[n] = sigma_grid.values[n] / denominator;
            out.valid[n] = 1;
        }
    }
    return out;
}

std::pair<std::size_t, std::size_t> central_window(std::span<const double> p_prime, double fraction) {
    if (p_prime.empty()) throw std::invalid_argument("central window of an empty profile");
    const auto top = static_cast<std::size_t>(std::max_element(p_prime.begin(), p_prime.end()) - p_prime.begin());
    const double threshold = fraction * p_prime[top];
    std::size_t first = top;
    std::size_t last = top;
    while (first > 0 && p_prime[first - 1] >= threshold) --first;
    while (last + 1 < p_prime.size() && p_prime[last + 1] >= threshold) ++last;
    return {first, last};
}

double fraction_below(const RobustnessGrid& grid, std::pair<std::size_t, std::size_t> window, double threshold) {
    std::size_t valid = 0;
    std::size_t below = 0;
    for (std::size_t i = window.first; i <= window.second && i < grid.phis.size(); ++i) {
        for (std::size_t j = 0; j < grid.alphas.size(); ++j) {
            if (!grid.is_valid(i, j)) continue;
            ++valid;
            if (grid.at(i, j) < threshold) ++below;
        }
    }
    return valid == 0 ? 0.0 : static_cast<double>(below) / static_cast<double>(valid);
}

void write_grid_csv(const RobustnessGrid& grid, const std::filesystem::path& path) {
    std::ostringstream out;
    out << "phi\\alpha";
    for (double a : grid.alphas) out << ',' << format_g12(a);
    out << '\n';
    for (std::size_t i = 0; i < grid.phis.size(); ++i) {
        out << format_g12(grid.phis[i]);
        for (std::size_t j = 0; j < grid.alphas.size(); ++j)
            out << ',' << (grid.is_valid(i, j) ? format_g12(grid.at(i, j)) : std::string("nan"));
        out << '\n';
    }
    write_text_file(path, out.str());
}

RobustnessGrid read_grid_csv(const std::filesystem::path& path, GridKind kind) {
    std::istringstream in(read_text_file(path));
    auto split = [](const std::string& line) {
        std::vector<std::string> cells;
        std::stringstream row(line);
        for (std::string cell; std::getline(row, cell, ',');) cells.push_back(cell);
        return cells;
    };
    auto number = [&](const std::string& cell) {
        try {
            return std::stod(cell);
        } catch (const std::exception&) {
            throw std::runtime_error(path.string() + ": bad number '" + cell + "'");
        }
    };
    RobustnessGrid grid;
    grid.kind = kind;
    std::string line;
    if (!std::getline(in, line)) throw std::runtime_error(path.string() + ": empty grid file");
    const auto header = split(line);
    if (header.empty() || header[0] != "phi\\alpha") throw std::runtime_error(path.string() + ": not a grid CSV");
    for (std::size_t j = 1; j < header.size(); ++j) grid.alphas.push_back(number(header[j]));
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        const auto cells = split(line);
        if (cells.size() != header.size()) throw std::runtime_error(path.string() + ": ragged row");
        grid.phis.push_back(number(cells[0]));
        for (std::size_t j = 1; j < cells.size(); ++j) {
            const bool valid = cells[j] != "nan";
            grid.values.push_back(valid ? number(cells[j]) : std::nan(""));
            grid.valid.push_back(valid ? 1 : 0);
        }
    }
    return grid;
}

void write_profile_csv(const CurveProfile& profile, const std::filesystem::path& path) {
    std::ostringstream out;
    out << "phi,zeta,p\n";
    for (std::size_t i = 0; i < profile.phis.size(); ++i)
        out << format_g12(profile.phis[i]) << ',' << format_g12(zeta_of_phi(profile.relation, profile.phis[i]))
            << ',' << format_g12(profile.ps[i]) << '\n';
    write_text_file(path, out.str());
}

void write_ridge_csv(std::span<const RidgePoint> ridge, const std::filesystem::path& path) {
    std::ostringstream out;
    out << "phi,zeta\n";
    for (const auto& point : ridge) out << format_g12(point.phi) << ',' << format_g12(point.zeta) << '\n';
    write_text_file(path, out.str());
}

void write_sigma_prime_csv(const SigmaPrime& sigma_prime, const std::filesystem::path& path) {
    std::ostringstream out;
    out << "phi,p_prime,sigma_p_prime\n";
    for (std::size_t i = 0; i < sigma_prime.phis.size(); ++i)
        out << format_g12(sigma_prime.phis[i]) << ',' << format_g12(sigma_prime.p_prime[i]) << ','
            << (sigma_prime.valid[i] ? format_g12(sigma_prime.values[i]) : std::string("nan")) << '\n';
    write_text_file(path, out.str());
}

std::string width_json(const CurveProfile& profile, const WidthResult& result) {
    nlohmann::ordered_json j;
    j["m"] = profile.m;
    j["relation"] = profile.relation.name();
    j["alpha"] = profile.relation.alpha;
    j["mode"] = to_string(result.mode);
    j["value"] = result.value;
    j["threshold"] = result.threshold;
    j["eps_minus"] = result.eps_minus;
    j["eps_plus"] = result.eps_plus;
    j["eps"] = result.eps;
    j["unreached"] = result.unreached;
    j["p_max"] = profile.p_max;
    j["phi_max"] = profile.phi_max;
    return j.dump(2) + "\n";
}

}  // namespace qrws
