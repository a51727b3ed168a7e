// coin.hpp
// Walk coin built from one generalized Householder reflection about the
// uniform coin vector and a global phase multiplier, plus the zeta(phi)
// relations used to tie the two phases together.

#pragma once

#include <complex>
#include <span>
#include <string>
#include <vector>

namespace qrws {

using complex = std::complex<double>;

inline constexpr double kTwoPi = 6.283185307179586476925286766559;

// Reduces an angle into [0, 2 pi).
double reduce_angle(double radians);

// sin(2 phi), returning exactly 0 when phi is an exact multiple of pi/2.
// alpha-dependence of the sinusoidal relation must vanish bitwise at phi = pi.
double sin_double_angle(double phi);

// Coin parameters. Angles are stored reduced into [0, 2 pi).
class CoinSpec {
public:
    CoinSpec(int dimension, double phi, double zeta);

    int dimension() const { return dimension_; }
    double phi() const { return phi_; }
    double zeta() const { return zeta_; }

private:
    int dimension_;
    double phi_;
    double zeta_;
};

// Small dense square complex matrix, row-major.
class CoinMatrix {
public:
    explicit CoinMatrix(int size);

    static CoinMatrix identity(int size);

    int size() const { return size_; }
    complex& operator()(int row, int col) { return data_[static_cast<std::size_t>(row) * size_ + col]; }
    const complex& operator()(int row, int col) const {
        return data_[static_cast<std::size_t>(row) * size_ + col];
    }

    CoinMatrix adjoint() const;
    CoinMatrix operator*(const CoinMatrix& rhs) const;

    // out = M * in
    void apply(std::span<const complex> in, std::span<complex> out) const;

    // max_ij |a_ij - b_ij|
    double max_abs_diff(const CoinMatrix& other) const;
    bool is_unitary(double tolerance = 1e-10) const;

private:
    int size_;
    std::vector<complex> data_;
};

// e^{i zeta} (I - (1 - e^{i phi}) |chi><chi|) with |chi> uniform.
CoinMatrix build_coin(const CoinSpec& spec);

// The same operator kept in factored form: out_d = phase * (in_d - reflect * mean(in)).
// O(m) per application instead of O(m^2).
class HouseholderCoin {
public:
    explicit HouseholderCoin(const CoinSpec& spec);

    int dimension() const { return dimension_; }
    void apply(const complex* in, complex* out) const;

private:
    int dimension_;
    complex phase_;
    complex reflect_;
};

enum class CurveKind { Linear, Constant, Sinusoidal };

// zeta as a function of phi:
//   Linear      zeta = -2 phi + 3 pi
//   Constant    zeta = pi
//   Sinusoidal  zeta = -2 phi + 3 pi + alpha sin(2 phi)
struct CurveRelation {
    CurveKind kind = CurveKind::Linear;
    double alpha = 0.0;

    static CurveRelation linear() { return {CurveKind::Linear, 0.0}; }
    static CurveRelation constant() { return {CurveKind::Constant, 0.0}; }
    static CurveRelation sinusoidal(double alpha) { return {CurveKind::Sinusoidal, alpha}; }

    // "linear", "constant", "sinusoidal"
    std::string name() const;
};

CurveRelation parse_curve_kind(const std::string& name, double alpha = 0.0);

// Evaluates the relation, result in [0, 2 pi).
double zeta_of_phi(const CurveRelation& relation, double phi);

// Inverts the sinusoidal relation for alpha. The 2 pi ambiguity in zeta is
// resolved by taking the residue of zeta + 2 phi - 3 pi in (-pi, pi].
// Throws IndeterminateError when |sin(2 phi)| < 1e-9.
double alpha_from_point(double phi, double zeta);

// Residue of an angle in (-pi, pi].
double wrap_to_pi(double radians);

}  // namespace qrws
