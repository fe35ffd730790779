#pragma once

#include <complex>
#include <functional>
#include <limits>
#include <type_traits>
#include <utility>

#include "levy/errors.hpp"

namespace levy {

struct QuadratureOptions {
    double rel_tol = 1e-9;
    double abs_floor = 1e-300; ///< scale floor used when the integral is ~0
    int max_intervals = 4000;  ///< subdivision budget before NonConvergent
    /// declared relative noise of the integrand: refinement that stalls at
    /// an error below noise_rel * ∫|f| is accepted instead of thrown
    /// (needed when integrands are themselves quadrature- or
    /// differentiation-backed)
    double noise_rel = 1e-12;
};

template <class T>
struct QuadResult {
    T value{};
    double est_error = 0.0;
    long evals = 0;
};

/// Adaptive Gauss-Kronrod (G7/K15) integration over a finite interval.
/// Deterministic: identical inputs give bit-identical outputs.
/// Throws NonConvergent (naming the worst subinterval) when the error
/// estimate stalls above tolerance after the subdivision budget.
QuadResult<double> integrate_real(const std::function<double(double)>& f, double a, double b,
                                  const QuadratureOptions& opt = {});
QuadResult<std::complex<double>> integrate_complex(
    const std::function<std::complex<double>(double)>& f, double a, double b,
    const QuadratureOptions& opt = {});

/// Integral over (a, +inf) by geometrically widening blocks with decline
/// monitoring: a stall in the decline raises NonConvergent.
QuadResult<double> integrate_real_to_infinity(const std::function<double(double)>& f, double a,
                                              const QuadratureOptions& opt = {});

template <class F>
auto integrate(F&& f, double a, double b, const QuadratureOptions& opt = {}) {
    using R = std::invoke_result_t<F, double>;
    if constexpr (std::is_same_v<R, std::complex<double>>)
        return integrate_complex(std::function<std::complex<double>(double)>(std::forward<F>(f)),
                                 a, b, opt);
    else
        return integrate_real(std::function<double(double)>(std::forward<F>(f)), a, b, opt);
}

template <class F>
auto integrate_to_infinity(F&& f, double a, const QuadratureOptions& opt = {}) {
    return integrate_real_to_infinity(std::function<double(double)>(std::forward<F>(f)), a, opt);
}

/// Spec-facing wrapper: finite b integrates [a,b]; b = +inf dispatches to
/// the declining-tail extension. Returns the value only.
template <class F>
auto adaptive_quadrature(F&& f, double a, double b, double rel_tol) {
    QuadratureOptions opt;
    opt.rel_tol = rel_tol;
    using R = std::invoke_result_t<F, double>;
    if constexpr (std::is_same_v<R, std::complex<double>>) {
        return integrate(std::forward<F>(f), a, b, opt).value;
    } else {
        if (b == std::numeric_limits<double>::infinity())
            return integrate_to_infinity(std::forward<F>(f), a, opt).value;
        return integrate(std::forward<F>(f), a, b, opt).value;
    }
}

/// sum_{k>=0} of terms(k) for a sequence converging by alternating-ish
/// oscillation: partial sums are accelerated by iterated averaging
/// (Euler-van Wijngaarden). Used for oscillatory Fourier tails.
std::complex<double> accelerated_series(const std::function<std::complex<double>(int)>& term,
                                        int max_terms, double rel_tol, double* est_error = nullptr);

} // namespace levy
