// analysis.hpp
// Quantities derived from the success-probability landscape: curve profiles
// p(phi) along a zeta(phi) relation, stability widths around the maximum,
// ridge extraction with the alpha fit, and the robustness fields.

#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "qrws/coin.hpp"
#include "qrws/sweep.hpp"

namespace qrws {

// Uniform grid i * 2 pi / steps, i = 1..steps. Not reduced: the last point is 2 pi.
std::vector<double> phi_grid(int steps);

struct CurveProfile {
    int m = 0;
    CurveRelation relation;
    std::vector<double> phis;
    std::vector<double> ps;
    double p_max = 0.0;
    double phi_max = 0.0;
    std::size_t index_max = 0;  // first of ties
};

// Builds a profile from precomputed values (fills p_max / phi_max).
CurveProfile make_profile(int m, const CurveRelation& relation, std::vector<double> phis, std::vector<double> ps);

CurveProfile curve_profile(int m, const CurveRelation& relation, int phi_steps = 180, unsigned threads = 0);

enum class WidthMode { Fraction, Absolute };

struct WidthResult {
    double eps_minus = 0.0;
    double eps_plus = 0.0;
    double eps = 0.0;
    double threshold = 0.0;
    WidthMode mode = WidthMode::Fraction;
    double value = 0.0;
    bool unreached = false;  // absolute threshold above p_max
};

// Half-width of the contiguous interval around phi_max where p >= threshold.
// Fraction mode: threshold = value * p_max, value in (0, 1]. Absolute mode:
// threshold = value, value in (0, 1). The interval ends are linearly
// interpolated between the last passing and the first failing grid point; an
// interval that runs off the grid stops at the outermost grid point.
WidthResult width(const CurveProfile& profile, WidthMode mode, double value);

std::string to_string(WidthMode mode);

struct RidgePoint {
    double phi = 0.0;
    double zeta = 0.0;
};

// Per phi column of a grid dataset, the zeta maximizing p (ties toward the
// smaller stored zeta). Columns whose maximum is below
// column_fraction * (global maximum) are skipped.
std::vector<RidgePoint> extract_ridge(const SweepDataset& dataset, double column_fraction = 0.9);

// Least-squares alpha for zeta - (-2 phi + 3 pi) = alpha sin(2 phi), residuals
// wrapped into (-pi, pi]. Points with |sin(2 phi)| <= 1e-6 are ignored.
// Throws UnderdeterminedError with fewer than 3 usable points.
double fit_alpha(std::span<const RidgePoint> ridge);

// p along the sinusoidal relation with the given alpha.
double p_of_phi_alpha(int m, double phi, double alpha);

enum class GridKind { Probability, SigmaP, Ratio };

std::string to_string(GridKind kind);

// 2-D field over (phi_i, alpha_j), row-major in phi.
struct RobustnessGrid {
    int m = 0;
    GridKind kind = GridKind::Probability;
    std::vector<double> phis;
    std::vector<double> alphas;
    std::vector<double> values;
    std::vector<std::uint8_t> valid;

    std::size_t offset(std::size_t i, std::size_t j) const { return i * alphas.size() + j; }
    double at(std::size_t i, std::size_t j) const { return values[offset(i, j)]; }
    bool is_valid(std::size_t i, std::size_t j) const { return valid[offset(i, j)] != 0; }
};

struct RobustnessAxes {
    int phi_steps = 180;
    int alpha_steps = 250;
    double alpha_min = -1.5;
    double alpha_max = 1.0;
};

// alpha_min + j (alpha_max - alpha_min) / steps, j = 1..steps
std::vector<double> alpha_grid(const RobustnessAxes& axes);

// Cells with p below this are flagged invalid in the relative fields.
inline constexpr double kProbabilityFloor = 1e-12;

// p(phi_i, alpha_j) on the axes.
RobustnessGrid probability_grid(int m, const RobustnessAxes& axes = {}, unsigned threads = 0);

// Distance-weighted relative deviation
//   (1/p) sqrt((dp/dphi)^2 s_phi^2 (phi - pi)^2 + (dp/dalpha)^2 s_alpha^2 (alpha - alpha_center)^2)
// with central differences on the grid (one-sided at the edges).
RobustnessGrid sigma_p_grid(const RobustnessGrid& probability, double alpha_center, double sigma_phi,
                            double sigma_alpha);
RobustnessGrid sigma_p_grid(int m, double alpha_center, double sigma_phi, double sigma_alpha,
                            const RobustnessAxes& axes = {}, unsigned threads = 0);

// The same measure for the constant-zeta coin, which has no alpha axis.
struct SigmaPrime {
    int m = 0;
    std::vector<double> phis;
    std::vector<double> p_prime;
    std::vector<double> values;
    std::vector<std::uint8_t> valid;
};

SigmaPrime sigma_p_prime(const CurveProfile& constant_profile, double sigma_phi);
SigmaPrime sigma_p_prime(int m, double sigma_phi, int phi_steps = 180, unsigned threads = 0);

// sigma_p(i, j) / sigma_p'(i); invalid where either side is invalid or sigma_p' = 0.
RobustnessGrid ratio_map(const RobustnessGrid& sigma_grid, const SigmaPrime& sigma_prime);

// Contiguous phi-index range [first, last] around the maximum of p' where
// p' >= fraction * max(p').
std::pair<std::size_t, std::size_t> central_window(std::span<const double> p_prime, double fraction = 0.5);

// Valid cells of `grid` inside the phi-index window with value < threshold,
// divided by the number of valid cells in the window.
double fraction_below(const RobustnessGrid& grid, std::pair<std::size_t, std::size_t> window, double threshold);

// Output formats.
// Grid CSV: first row "phi\alpha" then the alpha grid; each further row starts
// with its phi. Invalid cells are written as "nan".
void write_grid_csv(const RobustnessGrid& grid, const std::filesystem::path& path);
// Reads the grid CSV layout back; "nan" cells come back invalid.
RobustnessGrid read_grid_csv(const std::filesystem::path& path, GridKind kind);
void write_profile_csv(const CurveProfile& profile, const std::filesystem::path& path);
void write_ridge_csv(std::span<const RidgePoint> ridge, const std::filesystem::path& path);
void write_sigma_prime_csv(const SigmaPrime& sigma_prime, const std::filesystem::path& path);
// {m, relation, alpha, mode, value, eps_minus, eps_plus, eps, ...}
std::string width_json(const CurveProfile& profile, const WidthResult& result);

}  // namespace qrws
