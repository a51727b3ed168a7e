// error.hpp
// Exception types raised by the qrws library.

#pragma once

#include <stdexcept>
#include <string>

namespace qrws {

// Base class for numerical failures that are not plain precondition violations.
class NumericalError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// alpha is undefined where sin(2 phi) vanishes.
class IndeterminateError : public NumericalError {
public:
    using NumericalError::NumericalError;
};

// Too few usable points for a least-squares fit.
class UnderdeterminedError : public NumericalError {
public:
    using NumericalError::NumericalError;
};

// Training loss became NaN or infinite.
class DivergenceError : public NumericalError {
public:
    using NumericalError::NumericalError;
};

}  // namespace qrws
