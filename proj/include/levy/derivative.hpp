#pragma once

#include <complex>
#include <functional>

namespace levy {

struct DerivativeOptions {
    double step_scale = 0.02;   ///< h = step_scale * max(|t|, anchor) ...
    double anchor = 0.5;        ///< ... but never more than cusp_guard*|t|
    double cusp_guard = 0.06;   ///< keeps stencils away from the origin cusp of |t|^alpha
    double guard_tol = 1e-5;    ///< Richardson disagreement threshold (relative)
};

/// First derivative by central differences at steps h, h/2, h/4 with
/// Richardson extrapolation. The two extrapolated values must agree to
/// guard_tol relative or NonDifferentiable is thrown.
std::complex<double> richardson_derivative(const std::function<std::complex<double>(double)>& f,
                                           double t, const DerivativeOptions& opt = {});
double richardson_derivative(const std::function<double(double)>& f, double t,
                             const DerivativeOptions& opt = {});

/// Second derivative, same extrapolation-and-guard scheme.
std::complex<double> richardson_second_derivative(
    const std::function<std::complex<double>(double)>& f, double t,
    const DerivativeOptions& opt = {});

} // namespace levy
