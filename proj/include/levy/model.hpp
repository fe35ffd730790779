#pragma once

#include <complex>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "levy/grid.hpp"

namespace levy {

using Complex = std::complex<double>;
using RealFn = std::function<double(double)>;
using ComplexFn = std::function<Complex(double)>;

enum class Direction { pos, neg };
inline const char* to_string(Direction d) { return d == Direction::pos ? "pos" : "neg"; }

/// Point mass of a spectral measure; location != 0, mass > 0. Negative
/// locations live on the negative half-line.
struct Atom {
    double location;
    double mass;
};

/// One tail of a Lévy spectral measure: an evaluable density m(r) on
/// (0, inf), optionally with its analytic derivative and tail integral
/// T(r) = ∫_r^inf m(u) du. Transforms propagate whichever closures they
/// can produce exactly; missing ones fall back to Richardson
/// differentiation / declining-tail quadrature.
struct TailDensity {
    RealFn density;          ///< m(r); required unless is_zero
    RealFn derivative;       ///< m'(r) or nullptr
    RealFn tail;             ///< ∫_r^inf m or nullptr
    bool is_zero = false;

    static TailDensity zero();
    double operator()(double r) const;
    /// m'(r): analytic closure when present, Richardson otherwise.
    double deriv(double r) const;
    /// ∫_r^inf m: analytic closure when present, quadrature otherwise.
    double tail_mass(double r) const;
};

/// The Lévy spectral measure M of a one-dimensional ID law, split into
/// the two directions plus a finite atom list.
struct SpectralDensityPair {
    TailDensity pos;                 ///< density of M at +r
    TailDensity neg;                 ///< density of M at -r
    std::vector<Atom> atoms;

    const TailDensity& tail_density(Direction d) const {
        return d == Direction::pos ? pos : neg;
    }
    bool has_atoms() const { return !atoms.empty(); }
    /// Atom mass strictly beyond radius r in direction d.
    double atom_mass_beyond(Direction d, double r) const;
    /// Full tail M({x : dir, |x| > r}) = density tail + atoms.
    double tail_mass(Direction d, double r) const;
    /// Numeric check of ∫ min(1, r^2) dM < inf and density nonnegativity
    /// on the standard grid; throws Error on violation.
    void validate() const;

    static SpectralDensityPair zero();
};

/// [a, R, M]: shift (with the 1_{|x|<=1} centering), Gaussian variance,
/// spectral measure.
struct LevyTriple {
    double shift = 0.0;
    double gaussian_var = 0.0;
    SpectralDensityPair spectral;

    void validate() const;
};

enum class Provenance { closed_form, quadrature_derived, grid_interpolated };

/// Evaluable Lévy exponent t -> Phi(t), the continuous-branch logarithm of
/// an ID characteristic function with Phi(0) = 0.
struct LevyExponent {
    ComplexFn eval;
    Provenance provenance = Provenance::closed_form;
    std::string label;

    Complex operator()(double t) const { return eval(t); }
};

/// Result of checking the LevyExponent invariants on a grid.
struct ExponentCheck {
    double origin_error = 0.0;      ///< |Phi(0)|
    double hermitian_error = 0.0;   ///< sup |Phi(-t) - conj(Phi(t))|
    double positivity_error = 0.0;  ///< sup max(0, Re Phi(t))
    double branch_jump = 0.0;       ///< max |Im Phi step| between adjacent nodes
    bool ok(double tol = 1e-10) const {
        return origin_error <= tol && hermitian_error <= tol && positivity_error <= tol;
    }
};
ExponentCheck check_exponent(const LevyExponent& phi, const std::vector<double>& t_grid);

/// Lévy spectral function in the signed tail convention: pos direction
/// stores -M((r, inf)), neg direction stores M((-inf, -r)), both over a
/// radial grid r > 0.
struct LevySpectralFunction {
    Direction direction = Direction::pos;
    GridFunction values;
};

struct LkOptions {
    double rel_tol = 1e-9;
};

/// Lévy-Khintchine quadrature: the exponent of [a, R, M] evaluated by
/// adaptive quadrature of e^{itx}-1-itx 1_{|x|<=1} against the spectral
/// densities, with analytic handling of the far oscillatory tail. The
/// returned exponent has quadrature_derived provenance.
LevyExponent lk_exponent(const LevyTriple& triple, const LkOptions& opt = {});

/// Continuous-branch logarithm of a characteristic function along t_grid,
/// unwound outward from t = 0 in both directions (bisecting internally when
/// the argument steps too fast). Throws ZeroCrossing if |cf| < 1e-14 at a
/// node. Result interpolates the grid (grid_interpolated provenance).
LevyExponent log_cf_branch(const ComplexFn& cf, const std::vector<double>& t_grid);

/// Dilation T_a: spectral density r -> m(r/a)/a, variance a^2 sigma^2,
/// shift transformed consistently with the centering.
LevyTriple dilate(const LevyTriple& triple, double a);

/// Convolution: shifts add, variances add, spectral parts add.
LevyTriple convolve(const LevyTriple& x, const LevyTriple& y);

/// Real exponential integral E1(x), x > 0 (series + continued fraction).
double expint_e1(double x);

} // namespace levy
