#include "levy/derivative.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "levy/errors.hpp"

namespace levy {

namespace {

double step_for(double t, const DerivativeOptions& opt) {
    double h = opt.step_scale * std::max(std::abs(t), opt.anchor);
    if (t != 0.0) h = std::min(h, opt.cusp_guard * std::abs(t));
    return h;
}

template <class T>
T derivative_impl(const std::function<T(double)>& f, double t, const DerivativeOptions& opt) {
    const double h = step_for(t, opt);
    auto central = [&](double hh) { return (f(t + hh) - f(t - hh)) / (2.0 * hh); };
    const T d1 = central(h);
    const T d2 = central(h / 2);
    const T d3 = central(h / 4);
    const T r1 = (4.0 * d2 - d1) / 3.0;
    const T r2 = (4.0 * d3 - d2) / 3.0;
    const double scale = std::max({std::abs(r2), std::abs(r1), 1e-12});
    if (std::abs(r2 - r1) > opt.guard_tol * scale) {
        std::ostringstream msg;
        msg << "derivative estimates disagree at t=" << t << ": |" << std::abs(r2 - r1)
            << "| relative to " << scale;
        throw NonDifferentiable(msg.str());
    }
    return (16.0 * r2 - r1) / 15.0;
}

template <class T>
T second_derivative_impl(const std::function<T(double)>& f, double t,
                         const DerivativeOptions& opt) {
    const double h = step_for(t, opt);
    const T ft = f(t);
    auto central2 = [&](double hh) { return (f(t + hh) - 2.0 * ft + f(t - hh)) / (hh * hh); };
    const T d1 = central2(h);
    const T d2 = central2(h / 2);
    const T d3 = central2(h / 4);
    const T r1 = (4.0 * d2 - d1) / 3.0;
    const T r2 = (4.0 * d3 - d2) / 3.0;
    const double scale = std::max({std::abs(r2), std::abs(r1), 1e-12});
    if (std::abs(r2 - r1) > opt.guard_tol * scale) {
        std::ostringstream msg;
        msg << "second-derivative estimates disagree at t=" << t;
        throw NonDifferentiable(msg.str());
    }
    return (16.0 * r2 - r1) / 15.0;
}

} // namespace

std::complex<double> richardson_derivative(const std::function<std::complex<double>(double)>& f,
                                           double t, const DerivativeOptions& opt) {
    return derivative_impl<std::complex<double>>(f, t, opt);
}

double richardson_derivative(const std::function<double(double)>& f, double t,
                             const DerivativeOptions& opt) {
    return derivative_impl<double>(f, t, opt);
}

std::complex<double> richardson_second_derivative(
    const std::function<std::complex<double>(double)>& f, double t, const DerivativeOptions& opt) {
    return second_derivative_impl<std::complex<double>>(f, t, opt);
}

} // namespace levy
