// coin.cpp

#include "qrws/coin.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "qrws/error.hpp"

namespace qrws {

double reduce_angle(double radians) {
    double r = std::fmod(radians, kTwoPi);
    if (r < 0.0) r += kTwoPi;
    // fmod of a tiny negative value can round up to exactly 2 pi
    if (r >= kTwoPi) r = 0.0;
    return r;
}

double wrap_to_pi(double radians) {
    double r = std::remainder(radians, kTwoPi);  // [-pi, pi]
    if (r <= -std::numbers::pi) r += kTwoPi;
    return r;
}

double sin_double_angle(double phi) {
    if (std::remainder(phi, std::numbers::pi / 2.0) == 0.0) return 0.0;
    return std::sin(2.0 * phi);
}

CoinSpec::CoinSpec(int dimension, double phi, double zeta)
    : dimension_(dimension), phi_(reduce_angle(phi)), zeta_(reduce_angle(zeta)) {
    if (dimension < 2) throw std::invalid_argument("coin dimension must be >= 2");
    if (!std::isfinite(phi) || !std::isfinite(zeta)) throw std::invalid_argument("coin angles must be finite");
}

CoinMatrix::CoinMatrix(int size) : size_(size), data_(static_cast<std::size_t>(size) * size) {
    if (size < 1) throw std::invalid_argument("matrix size must be positive");
}

CoinMatrix CoinMatrix::identity(int size) {
    CoinMatrix id(size);
    for (int i = 0; i < size; ++i) id(i, i) = 1.0;
    return id;
}

CoinMatrix CoinMatrix::adjoint() const {
    CoinMatrix out(size_);
    for (int r = 0; r < size_; ++r)
        for (int c = 0; c < size_; ++c) out(c, r) = std::conj((*this)(r, c));
    return out;
}

CoinMatrix CoinMatrix::operator*(const CoinMatrix& rhs) const {
    if (rhs.size_ != size_) throw std::invalid_argument("matrix size mismatch");
    CoinMatrix out(size_);
    for (int r = 0; r < size_; ++r)
        for (int k = 0; k < size_; ++k) {
            const complex a = (*this)(r, k);
            for (int c = 0; c < size_; ++c) out(r, c) += a * rhs(k, c);
        }
    return out;
}

void CoinMatrix::apply(std::span<const complex> in, std::span<complex> out) const {
    for (int r = 0; r < size_; ++r) {
        complex acc = 0.0;
        for (int c = 0; c < size_; ++c) acc += (*this)(r, c) * in[c];
        out[r] = acc;
    }
}

double CoinMatrix::max_abs_diff(const CoinMatrix& other) const {
    if (other.size_ != size_) throw std::invalid_argument("matrix size mismatch");
    double worst = 0.0;
    for (std::size_t i = 0; i < data_.size(); ++i) worst = std::max(worst, std::abs(data_[i] - other.data_[i]));
    return worst;
}

bool CoinMatrix::is_unitary(double tolerance) const {
    return (adjoint() * (*this)).max_abs_diff(identity(size_)) <= tolerance;
}

CoinMatrix build_coin(const CoinSpec& spec) {
    const int m = spec.dimension();
    const complex phase = std::polar(1.0, spec.zeta());
    const complex reflect = (1.0 - std::polar(1.0, spec.phi())) / static_cast<double>(m);
    CoinMatrix coin(m);
    for (int r = 0; r < m; ++r)
        for (int c = 0; c < m; ++c) coin(r, c) = phase * ((r == c ? 1.0 : 0.0) - reflect);
    return coin;
}

HouseholderCoin::HouseholderCoin(const CoinSpec& spec)
    : dimension_(spec.dimension()),
      phase_(std::polar(1.0, spec.zeta())),
      reflect_(1.0 - std::polar(1.0, spec.phi())) {}

void HouseholderCoin::apply(const complex* in, complex* out) const {
    complex sum = 0.0;
    for (int d = 0; d < dimension_; ++d) sum += in[d];
    const complex shift = reflect_ * sum / static_cast<double>(dimension_);
    for (int d = 0; d < dimension_; ++d) out[d] = phase_ * (in[d] - shift);
}

std::string CurveRelation::name() const {
    switch (kind) {
        case CurveKind::Linear: return "linear";
        case CurveKind::Constant: return "constant";
        case CurveKind::Sinusoidal: return "sinusoidal";
    }
    return "unknown";
}

CurveRelation parse_curve_kind(const std::string& name, double alpha) {
    if (name == "linear") return CurveRelation::linear();
    if (name == "constant") return CurveRelation::constant();
    if (name == "sinusoidal") return CurveRelation::sinusoidal(alpha);
    throw std::invalid_argument("unknown curve relation '" + name + "'");
}

double zeta_of_phi(const CurveRelation& relation, double phi) {
    constexpr double pi = std::numbers::pi;
    switch (relation.kind) {
        case CurveKind::Constant: return pi;
        case CurveKind::Linear: return reduce_angle(-2.0 * phi + 3.0 * pi);
        case CurveKind::Sinusoidal:
            return reduce_angle(-2.0 * phi + 3.0 * pi + relation.alpha * sin_double_angle(phi));
    }
    return pi;
}

double alpha_from_point(double phi, double zeta) {
    const double s = sin_double_angle(phi);
    if (std::abs(s) < 1e-9) throw IndeterminateError("alpha is indeterminate where sin(2 phi) = 0");
    return wrap_to_pi(zeta + 2.0 * phi - 3.0 * std::numbers::pi) / s;
}

}  // namespace qrws
