#pragma once

#include "levy/model.hpp"

namespace levy {

enum class TransformMethod { closed_form, quadrature };

struct ExponentTransformResult {
    LevyExponent exponent;
    TransformMethod method = TransformMethod::quadrature;
    double est_error = 0.0; ///< probed on a coarse |t| <= 10 sample
};

struct TransformOptions {
    double rel_tol = 1e-9;
    double probe_t_max = 10.0; ///< where est_error is sampled
};

/// Phi_I(t) = ∫_0^inf Phi(e^{-s} t) ds, the exponent of the law of
/// ∫ e^{-s} dY(s). NonConvergent signals a non-ID_log input (the s-blocks
/// stop declining).
ExponentTransformResult apply_I(const LevyExponent& phi, const TransformOptions& opt = {});

/// Phi_J(t) = ∫_0^1 Phi(s t) ds.
ExponentTransformResult apply_J(const LevyExponent& phi, const TransformOptions& opt = {});

/// Phi_{IJ}(t) = ∫_0^1 ∫_0^w Phi(u t)/w^2 du dw, evaluated directly as the
/// iterated double integral (inner tolerance 10x tighter than the outer).
ExponentTransformResult apply_IJ(const LevyExponent& phi, const TransformOptions& opt = {});

/// Inverse of I along the scaling derivative: Phi_nu(t) = t Phi'(t).
/// Throws NonDifferentiable when the step-halving estimates disagree.
ExponentTransformResult invert_I(const LevyExponent& phi, const TransformOptions& opt = {});

/// Inverse of J: Phi_rho(t) = d/dt [t Phi(t)] = Phi(t) + t Phi'(t).
ExponentTransformResult invert_J(const LevyExponent& phi, const TransformOptions& opt = {});

/// Inverse of I∘J: Psi(t) = d/dt [t^2 Phi'(t)] = 2t Phi'(t) + t^2 Phi''(t).
ExponentTransformResult invert_IJ(const LevyExponent& phi, const TransformOptions& opt = {});

} // namespace levy
