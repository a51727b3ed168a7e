// walk.hpp
// State-vector simulation of the quantum random walk search on the
// m-dimensional hypercube. The joint register holds one complex amplitude
// per (direction d, node x) pair; storage is node-major, index x * m + d, so
// the coin block of one node is contiguous.

#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "qrws/coin.hpp"

namespace qrws {

// Largest hypercube dimension accepted by the simulator (m * 2^m amplitudes).
inline constexpr int kMaxDimension = 20;

class WalkState {
public:
    // All-zero state.
    explicit WalkState(int dimension);

    int dimension() const { return dimension_; }
    std::uint64_t node_count() const { return std::uint64_t{1} << dimension_; }
    std::size_t size() const { return amplitudes_.size(); }

    std::size_t index(int direction, std::uint64_t node) const {
        return static_cast<std::size_t>(node) * dimension_ + direction;
    }
    complex& at(int direction, std::uint64_t node) { return amplitudes_[index(direction, node)]; }
    const complex& at(int direction, std::uint64_t node) const { return amplitudes_[index(direction, node)]; }

    std::span<complex> amplitudes() { return amplitudes_; }
    std::span<const complex> amplitudes() const { return amplitudes_; }

    double norm() const;
    // sum_d |amplitude(d, node)|^2
    double node_probability(std::uint64_t node) const;

private:
    int dimension_;
    std::vector<complex> amplitudes_;
};

struct RunConfig {
    int dimension = 2;
    double phi = 0.0;
    double zeta = 0.0;
    std::uint64_t target = 0;
    // Defaults to iteration_count(dimension).
    std::optional<int> iterations;

    int resolved_iterations() const;
    // Throws std::invalid_argument on a bad dimension, target or iteration count.
    void validate() const;
};

// ceil((pi / 2) sqrt(2^(m - 1)))
int iteration_count(int dimension);

// Equal-weight superposition over all (direction, node) pairs.
WalkState initial_state(int dimension);

// Moves the amplitude at (d, x) to (d, x XOR 2^d).
WalkState apply_shift(const WalkState& state);

// Applies `coin` to the coin block of every node except `target`, whose block
// is negated (marking coin -I). Throws if the coin is not unitary to 1e-10.
WalkState apply_conditional_coin(const WalkState& state, const CoinMatrix& coin, std::uint64_t target);

// Final state after the configured number of (conditional coin, shift) steps.
WalkState evolve(const RunConfig& config);

// Probability of measuring the target node after the configured iterations.
double run(const RunConfig& config);

// Target probability after 0, 1, ..., max_steps iterations.
std::vector<double> probability_trace(const RunConfig& config, int max_steps);

// Convenience wrapper: target 0 and the default iteration count.
double success_probability(int dimension, double phi, double zeta);

}  // namespace qrws
