#include "levy/exponent_transforms.hpp"

#include <cmath>
#include <memory>

#include "levy/derivative.hpp"
#include "levy/quadrature.hpp"

namespace levy {

namespace {

// ∫_0^inf Phi(e^{-s} t) ds over width-10 blocks, extended until the
// contribution dies. For exponents outside ID_log the blocks decay like
// 1/k (log-moment divergence) and the extension reports NonConvergent.
Complex integral_I(const ComplexFn& phi, double t, double rel_tol) {
    if (t == 0.0) return 0.0;
    Complex acc = 0.0;
    double s_lo = 0.0;
    double prev_mag = -1.0;
    int stalled = 0;
    for (int blk = 0; blk < 40; ++blk) {
        QuadratureOptions opt;
        opt.rel_tol = rel_tol;
        opt.abs_floor = std::max(1e-3 * rel_tol * std::abs(acc), 1e-280);
        opt.noise_rel = 1e-9;
        auto f = [&](double s) { return phi(std::exp(-s) * t); };
        const Complex b = integrate(f, s_lo, s_lo + 10.0, opt).value;
        acc += b;
        const double mag = std::abs(b);
        if (blk >= 1 && mag <= std::max(1e-3 * rel_tol * std::abs(acc), 1e-280)) return acc;
        if (blk >= 3) {
            if (prev_mag > 0 && mag > 0.5 * prev_mag)
                ++stalled;
            else
                stalled = 0;
            if (stalled >= 4)
                throw NonConvergent(
                    "apply_I: exp-scale blocks stopped declining (input not in ID_log?)");
        }
        prev_mag = mag;
        s_lo += 10.0;
    }
    throw NonConvergent("apply_I: block budget exhausted before the tail died");
}

double probe_error(const ComplexFn& reference, const ComplexFn& alt, double t_max) {
    double worst = 0.0;
    for (double f : {0.05, 0.3, 1.0}) {
        const double t = f * t_max;
        worst = std::max(worst, std::abs(reference(t) - alt(t)));
    }
    return worst;
}

} // namespace

ExponentTransformResult apply_I(const LevyExponent& phi, const TransformOptions& opt) {
    auto base = std::make_shared<LevyExponent>(phi);
    const double rel_tol = opt.rel_tol;
    ExponentTransformResult out;
    out.method = TransformMethod::quadrature;
    out.exponent.provenance = Provenance::quadrature_derived;
    out.exponent.label = "I(" + phi.label + ")";
    out.exponent.eval = [base, rel_tol](double t) {
        return integral_I(base->eval, t, rel_tol);
    };
    auto tighter = [base, rel_tol](double t) { return integral_I(base->eval, t, rel_tol * 1e-2); };
    out.est_error = probe_error(out.exponent.eval, tighter, opt.probe_t_max);
    return out;
}

ExponentTransformResult apply_J(const LevyExponent& phi, const TransformOptions& opt) {
    auto base = std::make_shared<LevyExponent>(phi);
    const double rel_tol = opt.rel_tol;
    auto eval_at = [base](double t, double tol) -> Complex {
        if (t == 0.0) return 0.0;
        QuadratureOptions qopt;
        qopt.rel_tol = tol;
        qopt.abs_floor = 1e-280;
        qopt.noise_rel = 1e-9;
        auto f = [&](double s) { return base->eval(s * t); };
        return integrate(f, 0.0, 1.0, qopt).value;
    };
    ExponentTransformResult out;
    out.method = TransformMethod::quadrature;
    out.exponent.provenance = Provenance::quadrature_derived;
    out.exponent.label = "J(" + phi.label + ")";
    out.exponent.eval = [eval_at, rel_tol](double t) { return eval_at(t, rel_tol); };
    out.est_error = probe_error(out.exponent.eval,
                                [eval_at, rel_tol](double t) { return eval_at(t, rel_tol * 1e-2); },
                                opt.probe_t_max);
    return out;
}

ExponentTransformResult apply_IJ(const LevyExponent& phi, const TransformOptions& opt) {
    auto base = std::make_shared<LevyExponent>(phi);
    const double rel_tol = opt.rel_tol;
    // Substituted outer variable w = e^{-s}: ∫_0^inf e^s F(e^{-s}) ds with
    // F(w) = ∫_0^w Phi(ut) du; the inner integral runs 10x tighter.
    auto eval_at = [base](double t, double tol) -> Complex {
        if (t == 0.0) return 0.0;
        auto inner = [&](double w) -> Complex {
            QuadratureOptions iopt;
            iopt.rel_tol = tol * 0.1;
            iopt.abs_floor = 1e-280;
            iopt.noise_rel = 1e-9;
            auto g = [&](double u) { return base->eval(u * t); };
            return integrate(g, 0.0, w, iopt).value;
        };
        Complex acc = 0.0;
        double s_lo = 0.0;
        for (int blk = 0; blk < 30; ++blk) {
            QuadratureOptions oopt;
            oopt.rel_tol = tol;
            oopt.abs_floor = std::max(1e-3 * tol * std::abs(acc), 1e-280);
            oopt.noise_rel = 1e-8; // inner integral noise
            auto f = [&](double s) { return std::exp(s) * inner(std::exp(-s)); };
            const Complex b = integrate(f, s_lo, s_lo + 10.0, oopt).value;
            acc += b;
            if (blk >= 1 && std::abs(b) <= std::max(1e-3 * tol * std::abs(acc), 1e-280))
                return acc;
            s_lo += 10.0;
        }
        throw NonConvergent("apply_IJ: outer blocks failed to decline");
    };
    ExponentTransformResult out;
    out.method = TransformMethod::quadrature;
    out.exponent.provenance = Provenance::quadrature_derived;
    out.exponent.label = "IJ(" + phi.label + ")";
    out.exponent.eval = [eval_at, rel_tol](double t) { return eval_at(t, rel_tol); };
    out.est_error = probe_error(out.exponent.eval,
                                [eval_at, rel_tol](double t) { return eval_at(t, rel_tol * 1e-1); },
                                opt.probe_t_max);
    return out;
}

ExponentTransformResult invert_I(const LevyExponent& phi, const TransformOptions& opt) {
    auto base = std::make_shared<LevyExponent>(phi);
    ExponentTransformResult out;
    out.method = TransformMethod::closed_form;
    out.exponent.provenance = phi.provenance;
    out.exponent.label = "I^-1(" + phi.label + ")";
    out.exponent.eval = [base](double t) -> Complex {
        if (t == 0.0) return 0.0;
        return t * richardson_derivative(base->eval, t);
    };
    out.est_error = 0.0;
    (void)opt;
    return out;
}

ExponentTransformResult invert_J(const LevyExponent& phi, const TransformOptions& opt) {
    auto base = std::make_shared<LevyExponent>(phi);
    ExponentTransformResult out;
    out.method = TransformMethod::closed_form;
    out.exponent.provenance = phi.provenance;
    out.exponent.label = "J^-1(" + phi.label + ")";
    out.exponent.eval = [base](double t) -> Complex {
        if (t == 0.0) return 0.0;
        return base->eval(t) + t * richardson_derivative(base->eval, t);
    };
    out.est_error = 0.0;
    (void)opt;
    return out;
}

ExponentTransformResult invert_IJ(const LevyExponent& phi, const TransformOptions& opt) {
    auto base = std::make_shared<LevyExponent>(phi);
    ExponentTransformResult out;
    out.method = TransformMethod::closed_form;
    out.exponent.provenance = phi.provenance;
    out.exponent.label = "(IJ)^-1(" + phi.label + ")";
    out.exponent.eval = [base](double t) -> Complex {
        if (t == 0.0) return 0.0;
        const Complex d1 = richardson_derivative(base->eval, t);
        const Complex d2 = richardson_second_derivative(base->eval, t);
        return 2.0 * t * d1 + t * t * d2;
    };
    out.est_error = 0.0;
    (void)opt;
    return out;
}

} // namespace levy
