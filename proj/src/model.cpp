#include "levy/model.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <sstream>

#include "levy/derivative.hpp"
#include "levy/quadrature.hpp"

namespace levy {

namespace {
constexpr double kEulerGamma = 0.57721566490153286060651209008240243;
}

// ---------------------------------------------------------------------------
// TailDensity / SpectralDensityPair / LevyTriple
// ---------------------------------------------------------------------------

TailDensity TailDensity::zero() {
    TailDensity d;
    d.density = [](double) { return 0.0; };
    d.derivative = [](double) { return 0.0; };
    d.tail = [](double) { return 0.0; };
    d.is_zero = true;
    return d;
}

double TailDensity::operator()(double r) const {
    if (is_zero) return 0.0;
    return density(r);
}

double TailDensity::deriv(double r) const {
    if (is_zero) return 0.0;
    if (derivative) return derivative(r);
    DerivativeOptions opt;
    opt.step_scale = 1e-3;
    opt.anchor = r; // pure relative step on the radial axis
    opt.cusp_guard = 0.25;
    opt.guard_tol = 1e-3; // densities from nested transforms carry noise
    return richardson_derivative(density, r, opt);
}

double TailDensity::tail_mass(double r) const {
    if (is_zero) return 0.0;
    if (tail) return tail(r);
    QuadratureOptions opt;
    opt.rel_tol = 1e-10;
    opt.noise_rel = 1e-9;
    return integrate_to_infinity(density, r, opt).value;
}

SpectralDensityPair SpectralDensityPair::zero() {
    SpectralDensityPair p;
    p.pos = TailDensity::zero();
    p.neg = TailDensity::zero();
    return p;
}

double SpectralDensityPair::atom_mass_beyond(Direction d, double r) const {
    double m = 0.0;
    for (const Atom& a : atoms) {
        if (d == Direction::pos && a.location > r) m += a.mass;
        if (d == Direction::neg && a.location < -r) m += a.mass;
    }
    return m;
}

double SpectralDensityPair::tail_mass(Direction d, double r) const {
    return tail_density(d).tail_mass(r) + atom_mass_beyond(d, r);
}

void SpectralDensityPair::validate() const {
    for (const Atom& a : atoms) {
        if (a.location == 0.0) throw Error("spectral atom at zero");
        if (!(a.mass > 0.0)) throw Error("spectral atom with nonpositive mass");
    }
    const auto grid = standard_radial_grid();
    double integ = 0.0;
    double prev_r = grid.front();
    double prev_f = 0.0;
    for (std::size_t i = 0; i < grid.size(); ++i) {
        const double r = grid[i];
        const double mp = pos(r), mn = neg(r);
        if (!(mp >= -1e-12) || !(mn >= -1e-12)) {
            std::ostringstream msg;
            msg << "negative spectral density at r=" << r << " (" << mp << ", " << mn << ")";
            throw Error(msg.str());
        }
        if (!std::isfinite(mp) || !std::isfinite(mn)) {
            // a 1/r-type blow-up at the grid floor is integrable and fine;
            // anything non-finite further out is not
            if (r > 1e-5) throw Error("non-finite spectral density on the standard grid");
            continue;
        }
        const double f = std::min(1.0, r * r) * (mp + mn);
        if (i > 0) integ += 0.5 * (f + prev_f) * (r - prev_r);
        prev_r = r;
        prev_f = f;
    }
    for (const Atom& a : atoms) integ += std::min(1.0, a.location * a.location) * a.mass;
    if (!std::isfinite(integ)) throw Error("Levy integrability check failed on the standard grid");
}

void LevyTriple::validate() const {
    if (!(gaussian_var >= 0.0)) throw Error("gaussian_var must be >= 0");
    if (!std::isfinite(shift)) throw Error("shift must be finite");
    spectral.validate();
}

// ---------------------------------------------------------------------------
// Exponent invariants
// ---------------------------------------------------------------------------

ExponentCheck check_exponent(const LevyExponent& phi, const std::vector<double>& t_grid) {
    ExponentCheck c;
    c.origin_error = std::abs(phi(0.0));
    double prev_im = 0.0;
    bool have_prev = false;
    for (double t : t_grid) {
        const Complex v = phi(t);
        const Complex w = phi(-t);
        c.hermitian_error = std::max(c.hermitian_error, std::abs(w - std::conj(v)));
        c.positivity_error = std::max(c.positivity_error, std::max(0.0, v.real()));
        if (have_prev) c.branch_jump = std::max(c.branch_jump, std::abs(v.imag() - prev_im));
        prev_im = v.imag();
        have_prev = true;
    }
    return c;
}

// ---------------------------------------------------------------------------
// Lévy-Khintchine quadrature
// ---------------------------------------------------------------------------

namespace {

// e^{iw} - 1 and e^{iw} - 1 - iw, series-stable for small |w| where the
// direct forms cancel catastrophically.
Complex cis_m1(double w) {
    if (std::abs(w) < 1e-3) {
        const Complex z(0.0, w);
        return z * (1.0 + z * (0.5 + z * (1.0 / 6.0 + z * (1.0 / 24.0 + z / 120.0))));
    }
    return std::exp(Complex(0.0, w)) - 1.0;
}

Complex cis_m1_mi(double w) {
    if (std::abs(w) < 1e-3) {
        const Complex z(0.0, w);
        const Complex z2 = z * z;
        return z2 * (0.5 + z * (1.0 / 6.0 + z * (1.0 / 24.0 + z * (1.0 / 120.0 + z / 720.0))));
    }
    return std::exp(Complex(0.0, w)) - 1.0 - Complex(0.0, w);
}

// ∫_X^inf e^{itx} m(x) dx by half-period panels with series acceleration.
Complex oscillatory_tail(const TailDensity& m, double X, double t, double rel_tol) {
    const double half = M_PI / std::abs(t);
    QuadratureOptions popt;
    popt.rel_tol = 1e-8;
    popt.abs_floor = 1e-18 * std::max(1.0, m.tail_mass(X));
    popt.max_intervals = 200;
    popt.noise_rel = 1e-9;
    auto term = [&](int k) -> Complex {
        const double a = X + k * half;
        const double b = a + half;
        auto f = [&](double x) -> Complex {
            return std::exp(Complex(0.0, t * x)) * m(x);
        };
        return integrate(std::function<Complex(double)>(f), a, b, popt).value;
    };
    return accelerated_series(term, 48, rel_tol);
}

// ∫_0^inf (e^{itx} - 1 - itx 1_{x<=1}) m(x) dx for one tail, signed t.
Complex jump_integral(const TailDensity& m, double t, double rel_tol) {
    if (m.is_zero || t == 0.0) return 0.0;
    Complex acc = 0.0;
    QuadratureOptions opt;
    opt.rel_tol = rel_tol;
    opt.noise_rel = 1e-9;

    // (0, 1]: compensated integrand in log space, blocks extending down
    // until the contribution dies; the block budget bottoms out before
    // closure overflow for any density bounded by x^(-3).
    auto inner = [&](double y) -> Complex {
        const double x = std::exp(y);
        return cis_m1_mi(t * x) * m(x) * x;
    };
    double y_hi = 0.0;
    double block_scale = 0.0;
    for (int blk = 0; blk < 35; ++blk) {
        const double y_lo = y_hi - 8.0;
        QuadratureOptions bopt = opt;
        bopt.abs_floor = std::max(1e-4 * rel_tol * block_scale, 1e-280);
        const Complex b =
            integrate(std::function<Complex(double)>(inner), y_lo, y_hi, bopt).value;
        acc += b;
        block_scale = std::max(block_scale, std::abs(acc));
        if (blk >= 1 && std::abs(b) <= std::max(1e-3 * rel_tol * block_scale, 1e-280)) break;
        y_hi = y_lo;
    }

    // [1, X]: uncompensated integrand in log space.
    const double X = std::min(std::max(40.0, 40.0 / std::abs(t)), 1e8);
    auto outer = [&](double y) -> Complex {
        const double x = std::exp(y);
        return cis_m1(t * x) * m(x) * x;
    };
    QuadratureOptions oopt = opt;
    oopt.abs_floor = std::max(1e-4 * rel_tol * std::abs(acc), 1e-280);
    oopt.max_intervals = 20000;
    acc += integrate(std::function<Complex(double)>(outer), 0.0, std::log(X), oopt).value;

    // beyond X: -1 contributes the analytic tail, e^{itx} the accelerated
    // oscillatory remainder
    const double tail_X = m.tail_mass(X);
    if (tail_X > 0.0) {
        acc -= tail_X;
        acc += oscillatory_tail(m, X, t, rel_tol);
    }
    return acc;
}

} // namespace

LevyExponent lk_exponent(const LevyTriple& triple, const LkOptions& opt) {
    auto state = std::make_shared<LevyTriple>(triple);
    const double rel_tol = opt.rel_tol;
    LevyExponent phi;
    phi.provenance = Provenance::quadrature_derived;
    phi.label = "levy-khintchine";
    phi.eval = [state, rel_tol](double t) -> Complex {
        if (t == 0.0) return 0.0;
        Complex v(-0.5 * state->gaussian_var * t * t, state->shift * t);
        v += jump_integral(state->spectral.pos, t, rel_tol);
        v += jump_integral(state->spectral.neg, -t, rel_tol);
        for (const Atom& a : state->spectral.atoms) {
            const double x = a.location;
            const Complex e = std::abs(x) <= 1.0 ? cis_m1_mi(t * x) : cis_m1(t * x);
            v += a.mass * e;
        }
        return v;
    };
    return phi;
}

// ---------------------------------------------------------------------------
// Complex-log branch tracking
// ---------------------------------------------------------------------------

namespace {

Complex checked_cf(const ComplexFn& cf, double t) {
    const Complex w = cf(t);
    if (std::abs(w) < 1e-14) {
        std::ostringstream msg;
        msg << "characteristic function vanishes at t=" << t
            << " (non-ID input or grid too coarse)";
        throw ZeroCrossing(msg.str());
    }
    return w;
}

double advance_arg(const ComplexFn& cf, double t0, Complex w0, double t1, Complex w1, int depth) {
    const double dphi = std::arg(w1 / w0);
    if (std::abs(dphi) <= 1.0) return dphi;
    if (depth > 48) throw Error("log_cf_branch: argument step will not refine (discontinuous cf?)");
    const double tm = 0.5 * (t0 + t1);
    const Complex wm = checked_cf(cf, tm);
    return advance_arg(cf, t0, w0, tm, wm, depth + 1) +
           advance_arg(cf, tm, wm, t1, w1, depth + 1);
}

} // namespace

LevyExponent log_cf_branch(const ComplexFn& cf, const std::vector<double>& t_grid) {
    const Complex at0 = cf(0.0);
    if (std::abs(at0 - 1.0) > 1e-10) throw Error("log_cf_branch: cf(0) != 1");

    std::vector<double> ts = t_grid;
    std::sort(ts.begin(), ts.end());
    ts.erase(std::unique(ts.begin(), ts.end()), ts.end());
    if (std::find(ts.begin(), ts.end(), 0.0) == ts.end())
        ts.insert(std::lower_bound(ts.begin(), ts.end(), 0.0), 0.0);

    const std::size_t zi =
        static_cast<std::size_t>(std::find(ts.begin(), ts.end(), 0.0) - ts.begin());
    std::vector<Complex> vals(ts.size());
    vals[zi] = 0.0;

    // unwind outward from zero in both directions
    double theta = 0.0;
    Complex w_prev = 1.0;
    for (std::size_t i = zi + 1; i < ts.size(); ++i) {
        const Complex w = checked_cf(cf, ts[i]);
        theta += advance_arg(cf, ts[i - 1], w_prev, ts[i], w, 0);
        vals[i] = Complex(std::log(std::abs(w)), theta);
        w_prev = w;
    }
    theta = 0.0;
    w_prev = 1.0;
    for (std::size_t i = zi; i-- > 0;) {
        const Complex w = checked_cf(cf, ts[i]);
        theta += advance_arg(cf, ts[i + 1], w_prev, ts[i], w, 0);
        vals[i] = Complex(std::log(std::abs(w)), theta);
        w_prev = w;
    }

    auto interp = std::make_shared<ComplexGridFunction>(ts, vals);
    LevyExponent phi;
    phi.provenance = Provenance::grid_interpolated;
    phi.label = "log-cf-branch";
    phi.eval = [interp](double t) -> Complex { return (*interp)(t); };
    return phi;
}

// ---------------------------------------------------------------------------
// Dilation and convolution
// ---------------------------------------------------------------------------

namespace {

TailDensity dilate_tail(const TailDensity& m, double a) {
    if (m.is_zero) return TailDensity::zero();
    TailDensity out;
    out.density = [m, a](double r) { return m.density(r / a) / a; };
    if (m.derivative)
        out.derivative = [m, a](double r) { return m.derivative(r / a) / (a * a); };
    if (m.tail) out.tail = [m, a](double r) { return m.tail(r / a); };
    return out;
}

TailDensity add_tails(const TailDensity& x, const TailDensity& y) {
    if (x.is_zero) return y;
    if (y.is_zero) return x;
    TailDensity out;
    out.density = [x, y](double r) { return x.density(r) + y.density(r); };
    if (x.derivative && y.derivative)
        out.derivative = [x, y](double r) { return x.derivative(r) + y.derivative(r); };
    if (x.tail && y.tail) out.tail = [x, y](double r) { return x.tail(r) + y.tail(r); };
    return out;
}

} // namespace

LevyTriple dilate(const LevyTriple& triple, double a) {
    if (!(a > 0.0)) throw Error("dilate: a must be positive");
    LevyTriple out;
    out.gaussian_var = a * a * triple.gaussian_var;
    out.spectral.pos = dilate_tail(triple.spectral.pos, a);
    out.spectral.neg = dilate_tail(triple.spectral.neg, a);
    for (const Atom& at : triple.spectral.atoms)
        out.spectral.atoms.push_back({a * at.location, at.mass});

    // re-centering correction: the 1_{|x|<=1} cutoff moves under T_a
    double corr = 0.0;
    if (a != 1.0) {
        // shift_a = a*shift + ∫ y [1_{|y|<=1} - 1_{|y|<=a}] M_a(dy)
        const double lo = std::min(1.0, a), hi = std::max(1.0, a);
        const double sgn = a > 1.0 ? -1.0 : 1.0;
        auto f = [&](double r) {
            return r * (out.spectral.pos(r) - out.spectral.neg(r));
        };
        QuadratureOptions qopt;
        qopt.rel_tol = 1e-10;
        qopt.abs_floor = 1e-30;
        corr = sgn * integrate(std::function<double(double)>(f), lo, hi, qopt).value;
        for (const Atom& at : out.spectral.atoms) {
            const double r = std::abs(at.location);
            if (r > lo && r <= hi) corr += sgn * at.location * at.mass;
        }
    }
    out.shift = a * triple.shift + corr;
    return out;
}

LevyTriple convolve(const LevyTriple& x, const LevyTriple& y) {
    LevyTriple out;
    out.shift = x.shift + y.shift;
    out.gaussian_var = x.gaussian_var + y.gaussian_var;
    out.spectral.pos = add_tails(x.spectral.pos, y.spectral.pos);
    out.spectral.neg = add_tails(x.spectral.neg, y.spectral.neg);
    out.spectral.atoms = x.spectral.atoms;
    for (const Atom& a : y.spectral.atoms) out.spectral.atoms.push_back(a);
    std::sort(out.spectral.atoms.begin(), out.spectral.atoms.end(),
              [](const Atom& p, const Atom& q) { return p.location < q.location; });
    // merge coincident locations
    std::vector<Atom> merged;
    for (const Atom& a : out.spectral.atoms) {
        if (!merged.empty() && merged.back().location == a.location)
            merged.back().mass += a.mass;
        else
            merged.push_back(a);
    }
    out.spectral.atoms = std::move(merged);
    return out;
}

// ---------------------------------------------------------------------------
// Exponential integral
// ---------------------------------------------------------------------------

double expint_e1(double x) {
    if (!(x > 0.0)) throw Error("expint_e1: x must be positive");
    if (x <= 1.0) {
        double sum = 0.0, term = 1.0;
        for (int k = 1; k <= 40; ++k) {
            term *= -x / k;
            const double add = -term / k;
            sum += add;
            if (std::abs(add) < 1e-18 * std::max(1.0, std::abs(sum))) break;
        }
        return -kEulerGamma - std::log(x) + sum;
    }
    // modified Lentz continued fraction
    const double tiny = 1e-300;
    double b = x + 1.0, c = 1.0 / tiny, d = 1.0 / b, h = d;
    for (int k = 1; k <= 200; ++k) {
        const double a = -static_cast<double>(k) * k;
        b += 2.0;
        d = a * d + b;
        if (std::abs(d) < tiny) d = tiny;
        c = b + a / c;
        if (std::abs(c) < tiny) c = tiny;
        d = 1.0 / d;
        const double delta = d * c;
        h *= delta;
        if (std::abs(delta - 1.0) < 1e-16) break;
    }
    return h * std::exp(-x);
}

} // namespace levy
