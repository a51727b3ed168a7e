// dense_oracle.hpp
// Brute-force reference for the walk: the whole one-iteration operator as a
// dense (m 2^m) x (m 2^m) matrix, raised to the k-th power by repeated
// squaring and applied to the uniform vector. Built straight from the coin
// formula and the hypercube adjacency; shares no code with the simulator.

#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <vector>

namespace oracle {

using cd = std::complex<double>;

struct Dense {
    std::size_t n = 0;
    std::vector<cd> a;

    explicit Dense(std::size_t size) : n(size), a(size * size) {}
    cd& operator()(std::size_t r, std::size_t c) { return a[r * n + c]; }
    cd operator()(std::size_t r, std::size_t c) const { return a[r * n + c]; }

    Dense operator*(const Dense& b) const {
        Dense out(n);
        for (std::size_t r = 0; r < n; ++r)
            for (std::size_t k = 0; k < n; ++k) {
                const cd x = (*this)(r, k);
                if (x == cd{}) continue;
                for (std::size_t c = 0; c < n; ++c) out(r, c) += x * b(k, c);
            }
        return out;
    }
};

// Basis index of (direction d, node x): node-major, x * m + d.
inline std::size_t basis(int m, int d, std::uint64_t x) { return static_cast<std::size_t>(x) * m + d; }

inline Dense one_iteration(int m, double phi, double zeta, std::uint64_t target) {
    const std::size_t nodes = std::size_t{1} << m;
    const std::size_t dim = nodes * m;

    // conditional coin: block diagonal over nodes
    Dense coin(dim);
    const cd phase = std::exp(cd(0.0, zeta));
    const cd reflect = 1.0 - std::exp(cd(0.0, phi));
    for (std::uint64_t x = 0; x < nodes; ++x)
        for (int r = 0; r < m; ++r)
            for (int c = 0; c < m; ++c) {
                cd entry;
                if (x == target) {
                    entry = r == c ? -1.0 : 0.0;
                } else {
                    entry = phase * ((r == c ? 1.0 : 0.0) - reflect / static_cast<double>(m));
                }
                coin(basis(m, r, x), basis(m, c, x)) = entry;
            }

    // shift: |d, x> -> |d, x xor 2^d>
    Dense shift(dim);
    for (std::uint64_t x = 0; x < nodes; ++x)
        for (int d = 0; d < m; ++d) shift(basis(m, d, x ^ (std::uint64_t{1} << d)), basis(m, d, x)) = 1.0;

    return shift * coin;
}

inline Dense power(Dense base, int k) {
    Dense result(base.n);
    for (std::size_t i = 0; i < base.n; ++i) result(i, i) = 1.0;
    while (k > 0) {
        if (k & 1) result = result * base;
        base = base * base;
        k >>= 1;
    }
    return result;
}

inline std::vector<cd> final_state(int m, double phi, double zeta, int k, std::uint64_t target) {
    const Dense u = power(one_iteration(m, phi, zeta, target), k);
    const std::size_t dim = u.n;
    const double amp = 1.0 / std::sqrt(static_cast<double>(dim));
    std::vector<cd> out(dim);
    for (std::size_t r = 0; r < dim; ++r) {
        cd sum;
        for (std::size_t c = 0; c < dim; ++c) sum += u(r, c) * amp;
        out[r] = sum;
    }
    return out;
}

}  // namespace oracle
