#pragma once

#include <complex>
#include <vector>

#include "levy/errors.hpp"

namespace levy {

/// Tabulated function on strictly increasing abscissae with monotone
/// piecewise-cubic (PCHIP, Fritsch-Carlson) interpolation. The monotone
/// scheme is what keeps discrete convexity tests free of interpolation
/// wiggles.
class GridFunction {
public:
    GridFunction() = default;
    GridFunction(std::vector<double> grid, std::vector<double> values);

    const std::vector<double>& grid() const { return grid_; }
    const std::vector<double>& values() const { return values_; }
    std::size_t size() const { return grid_.size(); }
    bool empty() const { return grid_.empty(); }

    /// PCHIP evaluation; clamps to the end values outside the grid span.
    double operator()(double x) const;

    /// Node-local slopes of the monotone cubic (computed lazily).
    const std::vector<double>& slopes() const;

private:
    std::vector<double> grid_;
    std::vector<double> values_;
    mutable std::vector<double> slopes_; // empty until first evaluation
};

/// Complex-valued grid function; interpolates real and imaginary parts
/// independently with the same monotone cubic rule.
class ComplexGridFunction {
public:
    ComplexGridFunction() = default;
    ComplexGridFunction(std::vector<double> grid, std::vector<std::complex<double>> values);

    const std::vector<double>& grid() const { return re_.grid(); }
    std::complex<double> operator()(double x) const { return {re_(x), im_(x)}; }
    std::size_t size() const { return re_.size(); }

private:
    GridFunction re_, im_;
};

/// First or second derivative by central differences on the (nonuniform)
/// grid, one-sided three-point stencils at the ends. Exact for quadratics.
/// Throws InsufficientNodes when the grid has fewer than 5 nodes.
GridFunction grid_derivative(const GridFunction& g, int order);

/// Log-spaced grid with `per_tail` nodes on [lo, hi]; the standard radial
/// grid for spectral criteria is 512 nodes per tail over [1e-6, 1e6].
std::vector<double> log_spaced_grid(double lo, double hi, int per_tail);
std::vector<double> standard_radial_grid();

/// Symmetric equispaced grid on [-t_max, t_max] including 0 (n odd is
/// enforced by rounding up).
std::vector<double> symmetric_t_grid(double t_max, int n = 201);

} // namespace levy
