#pragma once

#include "levy/model.hpp"

namespace levy {

struct SpectralTransformResult {
    SpectralDensityPair spectral;
    GridFunction pos_tail; ///< tail masses on the standard radial grid
    GridFunction neg_tail;
    const char* method = "";
};

struct SpectralOptions {
    double rel_tol = 1e-9;
    double log_moment_c = 1.0;    ///< radius for the finite-log-moment precheck
    double jump_threshold = 1e-3; ///< relative drop flagging an atom candidate
    double monotone_slack = 1e-9; ///< precondition slack, relative to local scale
};

/// M(A) = ∫_0^inf G(e^s A) ds. Per tail: density m(r) = tail_G(r)/r; an
/// atom c·delta_b of G becomes the density c/r on (0, b). Requires a finite
/// logarithmic moment of G (LogMomentDivergent otherwise).
SpectralTransformResult spectral_I(const SpectralDensityPair& G, const SpectralOptions& opt = {});

/// N(A) = ∫_0^1 G(t^{-1} A) dt. Per tail: n(x) = ∫_x^inf g(v)/v dv; an atom
/// c·delta_b becomes the density c/b on (0, b). Output is class-U by
/// construction.
SpectralTransformResult spectral_J(const SpectralDensityPair& G, const SpectralOptions& opt = {});

/// The composition I∘J evaluated directly: m(r) = ∫_r^inf tail_G(v)/v^2 dv.
SpectralTransformResult spectral_IJ(const SpectralDensityPair& G, const SpectralOptions& opt = {});

/// Inverse of I: tail_G(r) = r·m(r) exactly, density by differentiation;
/// jumps of r·m(r) are emitted as atoms. Throws NotClassL (with the
/// violating interval) when r·m(r) is not nonincreasing.
SpectralTransformResult spectral_invert_I(const SpectralDensityPair& M,
                                          const SpectralOptions& opt = {});

/// Inverse of J: g(x) = -x·n'(x); jumps of n are emitted as atoms. Throws
/// NotClassU when n is not nonincreasing.
SpectralTransformResult spectral_invert_J(const SpectralDensityPair& N,
                                          const SpectralOptions& opt = {});

/// Lévy spectral function on the standard radial grid: pos direction
/// -M((r, inf)), neg direction M((-inf, -r)).
LevySpectralFunction spectral_function(const SpectralDensityPair& M, Direction direction);

/// Numeric check that ∫_{r>c} log(1+r) dG converges for the given tails;
/// used as the precondition of spectral_I. Returns false on divergence.
bool has_finite_log_moment(const SpectralDensityPair& G, double c);

} // namespace levy
