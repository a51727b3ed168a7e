// walk.cpp

#include "qrws/walk.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace qrws {

namespace {

void check_dimension(int dimension, int minimum) {
    if (dimension < minimum || dimension > kMaxDimension)
        throw std::invalid_argument("hypercube dimension must be in [" + std::to_string(minimum) + ", " +
                                    std::to_string(kMaxDimension) + "], got " + std::to_string(dimension));
}

// One full iteration: conditional coin on every block, then the shift,
// fused into a single pass from `in` to `out`.
void step(const WalkState& in, WalkState& out, const HouseholderCoin& coin, std::uint64_t target) {
    const int m = in.dimension();
    const std::uint64_t nodes = in.node_count();
    const complex* src = in.amplitudes().data();
    complex* dst = out.amplitudes().data();
    std::vector<complex> block(static_cast<std::size_t>(m));

    for (std::uint64_t x = 0; x < nodes; ++x) {
        const complex* here = src + x * m;
        if (x == target) {
            for (int d = 0; d < m; ++d) block[d] = -here[d];
        } else {
            coin.apply(here, block.data());
        }
        for (int d = 0; d < m; ++d) dst[(x ^ (std::uint64_t{1} << d)) * m + d] = block[d];
    }
}

}  // namespace

WalkState::WalkState(int dimension) : dimension_(dimension) {
    check_dimension(dimension, 1);
    amplitudes_.assign(static_cast<std::size_t>(dimension) << dimension, complex{});
}

double WalkState::norm() const {
    double sum = 0.0;
    for (const auto& a : amplitudes_) sum += std::norm(a);
    return std::sqrt(sum);
}

double WalkState::node_probability(std::uint64_t node) const {
    double sum = 0.0;
    for (int d = 0; d < dimension_; ++d) sum += std::norm(at(d, node));
    return sum;
}

int RunConfig::resolved_iterations() const { return iterations.value_or(iteration_count(dimension)); }

void RunConfig::validate() const {
    check_dimension(dimension, 2);
    if (target >= (std::uint64_t{1} << dimension))
        throw std::invalid_argument("target node " + std::to_string(target) + " outside [0, 2^m)");
    if (iterations && *iterations < 1) throw std::invalid_argument("iterations must be >= 1");
    if (!std::isfinite(phi) || !std::isfinite(zeta)) throw std::invalid_argument("angles must be finite");
}

int iteration_count(int dimension) {
    if (dimension < 1) throw std::invalid_argument("hypercube dimension must be >= 1");
    const double k = std::numbers::pi / 2.0 * std::sqrt(std::ldexp(1.0, dimension - 1));
    return static_cast<int>(std::ceil(k));
}

WalkState initial_state(int dimension) {
    check_dimension(dimension, 2);
    WalkState state(dimension);
    const double amplitude = 1.0 / std::sqrt(static_cast<double>(state.size()));
    for (auto& a : state.amplitudes()) a = amplitude;
    return state;
}

WalkState apply_shift(const WalkState& state) {
    const int m = state.dimension();
    WalkState out(m);
    for (std::uint64_t x = 0; x < state.node_count(); ++x)
        for (int d = 0; d < m; ++d) out.at(d, x ^ (std::uint64_t{1} << d)) = state.at(d, x);
    return out;
}

WalkState apply_conditional_coin(const WalkState& state, const CoinMatrix& coin, std::uint64_t target) {
    const int m = state.dimension();
    if (coin.size() != m) throw std::invalid_argument("coin size does not match hypercube dimension");
    if (!coin.is_unitary(1e-10)) throw std::invalid_argument("coin matrix is not unitary");
    if (target >= state.node_count()) throw std::invalid_argument("target node outside the hypercube");

    WalkState out(m);
    auto src = state.amplitudes();
    auto dst = out.amplitudes();
    for (std::uint64_t x = 0; x < state.node_count(); ++x) {
        const std::size_t offset = state.index(0, x);
        if (x == target) {
            for (int d = 0; d < m; ++d) dst[offset + d] = -src[offset + d];
        } else {
            coin.apply(src.subspan(offset, m), dst.subspan(offset, m));
        }
    }
    return out;
}

WalkState evolve(const RunConfig& config) {
    config.validate();
    const HouseholderCoin coin(CoinSpec(config.dimension, config.phi, config.zeta));
    WalkState current = initial_state(config.dimension);
    WalkState next(config.dimension);
    const int k = config.resolved_iterations();
    for (int t = 0; t < k; ++t) {
        step(current, next, coin, config.target);
        std::swap(current, next);
    }
    return current;
}

double run(const RunConfig& config) { return evolve(config).node_probability(config.target); }

std::vector<double> probability_trace(const RunConfig& config, int max_steps) {
    config.validate();
    if (max_steps < 1) throw std::invalid_argument("max_steps must be >= 1");
    const HouseholderCoin coin(CoinSpec(config.dimension, config.phi, config.zeta));
    WalkState current = initial_state(config.dimension);
    WalkState next(config.dimension);
    std::vector<double> trace;
    trace.reserve(static_cast<std::size_t>(max_steps) + 1);
    trace.push_back(current.node_probability(config.target));
    for (int t = 0; t < max_steps; ++t) {
        step(current, next, coin, config.target);
        std::swap(current, next);
        trace.push_back(current.node_probability(config.target));
    }
    return trace;
}

double success_probability(int dimension, double phi, double zeta) {
    RunConfig config;
    config.dimension = dimension;
    config.phi = phi;
    config.zeta = zeta;
    return run(config);
}

}  // namespace qrws
