#pragma once

#include <stdexcept>
#include <string>

namespace levy {

/// Base class for all library errors.
struct Error : std::runtime_error {
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

/// Quadrature or series refinement stalled above the requested tolerance.
/// The message names the worst subinterval.
struct NonConvergent : Error {
    using Error::Error;
};

/// grid_derivative needs at least 5 nodes.
struct InsufficientNodes : Error {
    using Error::Error;
};

/// |cf| fell below 1e-14 at a node while unwinding the complex logarithm.
struct ZeroCrossing : Error {
    using Error::Error;
};

/// Central-difference estimates at two step sizes disagree beyond tolerance.
struct NonDifferentiable : Error {
    using Error::Error;
};

/// Logarithmic moment of a spectral measure diverges numerically.
struct LogMomentDivergent : Error {
    using Error::Error;
};

/// Input measure fails the class-L structure (r·m(r) not nonincreasing).
struct NotClassL : Error {
    using Error::Error;
};

/// Input measure fails the class-U structure (density not nonincreasing).
struct NotClassU : Error {
    using Error::Error;
};

/// Constructor parameter outside its documented domain.
struct ParamOutOfRange : Error {
    using Error::Error;
};

/// Series coefficients fail the summability check.
struct DivergentCoefficients : Error {
    using Error::Error;
};

/// Exponent-route and spectral-route results differ beyond tolerance.
struct RouteDisagreement : Error {
    using Error::Error;
};

/// Malformed spec document or density expression; carries a byte offset
/// for caret diagnostics (-1 when not applicable).
struct SpecParseError : Error {
    long position;
    SpecParseError(const std::string& msg, long pos = -1) : Error(msg), position(pos) {}
};

} // namespace levy
