#include <doctest.h>

#include <cmath>
#include <complex>

#include "levy/catalog.hpp"
#include "levy/exponent_transforms.hpp"

using namespace levy;

namespace {

LevyExponent closed(const char* label, std::function<Complex(double)> f) {
    LevyExponent e;
    e.label = label;
    e.eval = std::move(f);
    return e;
}

LevyExponent zero_exponent() {
    return closed("zero", [](double) { return Complex(0.0); });
}

LevyExponent gaussian_exponent(double var) {
    return closed("gaussian", [var](double t) { return Complex(-0.5 * var * t * t, 0.0); });
}

double sup_diff(const LevyExponent& a, const ComplexFn& b, double t_max) {
    double worst = 0.0;
    for (double t : symmetric_t_grid(t_max, 81)) worst = std::max(worst, std::abs(a(t) - b(t)));
    return worst;
}

} // namespace

TEST_CASE("apply_I: zero, Gaussian halving, compound-Poisson -> gamma") {
    CHECK(sup_diff(apply_I(zero_exponent()).exponent, [](double) { return Complex(0.0); },
                   10.0) == 0.0);

    // ∫_0^1 u du = 1/2 forces -t^2/2 -> -t^2/4
    auto gi = apply_I(gaussian_exponent(1.0)).exponent;
    CHECK(sup_diff(gi, [](double t) { return Complex(-0.25 * t * t, 0.0); }, 10.0) <= 1e-8);

    // Pois(alpha gamma(1,lambda)) integrates to the gamma exponent
    const double alpha = 1.3, lambda = 0.9;
    auto cp = make_comp_poisson_exp(alpha, lambda);
    auto out = apply_I(cp.exponent).exponent;
    auto expect = [alpha, lambda](double t) {
        return -alpha * std::log(Complex(1.0, -t / lambda));
    };
    CHECK(sup_diff(out, expect, 10.0) <= 1e-7);
}

TEST_CASE("apply_J: Gaussian third, stable scaling") {
    auto gj = apply_J(gaussian_exponent(1.0)).exponent;
    CHECK(sup_diff(gj, [](double t) { return Complex(-t * t / 6.0, 0.0); }, 10.0) <= 1e-8);

    for (double a : {0.5, 1.0, 1.5}) {
        auto st = make_stable(a, 1.0);
        auto out = apply_J(st.exponent).exponent;
        auto expect = [a](double t) {
            return Complex(-std::pow(std::abs(t), a) / (a + 1.0), 0.0);
        };
        CHECK(sup_diff(out, expect, 10.0) <= 1e-7);
    }
}

TEST_CASE("apply_IJ: direct double integral matches the composition") {
    auto gij = apply_IJ(gaussian_exponent(1.0)).exponent;
    CHECK(sup_diff(gij, [](double t) { return Complex(-t * t / 12.0, 0.0); }, 10.0) <= 1e-8);

    // two evaluation orders of the commuting maps agree
    auto cp = make_comp_poisson_exp(2.0, 1.0);
    auto i_then_j = apply_J(apply_I(cp.exponent).exponent).exponent;
    auto j_then_i = apply_I(apply_J(cp.exponent).exponent).exponent;
    auto direct = apply_IJ(cp.exponent).exponent;
    for (double t : {0.5, 2.0, 7.0, -3.0}) {
        CHECK(std::abs(i_then_j(t) - j_then_i(t)) <= 1e-6);
        CHECK(std::abs(direct(t) - i_then_j(t)) <= 1e-6);
    }
}

TEST_CASE("invert_I on the closed-form fixtures") {
    // gamma -> compound-Poisson-exponential
    for (auto [alpha, lambda] : {std::pair{0.5, 1.0}, {2.0, 1.0}, {3.0, 0.7}}) {
        auto g = make_gamma(alpha, lambda);
        auto nu = invert_I(g.exponent).exponent;
        auto cp = make_comp_poisson_exp(alpha, lambda);
        CHECK(sup_diff(nu, cp.exponent.eval, 10.0) <= 1e-8);
    }

    // stochastic-area factor: log(tu/sinh tu) -> 1 - tu coth tu
    for (double u : {0.5, 1.0, 2.0}) {
        auto la = make_levy_area(u);
        auto nu = invert_I(la.exponent).exponent;
        CHECK(sup_diff(nu, la.extra("bdpd")->eval, 10.0 / u) <= 1e-8);
    }

    // Wenocur factor: -log(cosh t)/2 -> -t tanh(t)/2
    auto w = make_wenocur();
    auto nu = invert_I(w.exponent).exponent;
    CHECK(sup_diff(nu, w.extra("bdpd")->eval, 10.0) <= 1e-8);
}

TEST_CASE("invert_J: zero, Gaussian, compound-Poisson driver") {
    CHECK(sup_diff(invert_J(zero_exponent()).exponent, [](double) { return Complex(0.0); },
                   10.0) == 0.0);

    auto g = invert_J(gaussian_exponent(1.0 / 3.0)).exponent; // -t^2/6 -> -t^2/2
    CHECK(sup_diff(g, [](double t) { return Complex(-0.5 * t * t, 0.0); }, 10.0) <= 1e-8);

    // J^-1 of Pois(alpha gamma(1,lambda)) is the Pois(alpha gamma(2,lambda))
    // exponent alpha ((lambda/(lambda-it))^2 - 1)
    const double alpha = 1.5, lambda = 1.2;
    auto cp = make_comp_poisson_exp(alpha, lambda);
    auto rho = invert_J(cp.exponent).exponent;
    auto expect = [alpha, lambda](double t) -> Complex {
        const Complex r = lambda / Complex(lambda, -t);
        return alpha * (r * r - 1.0);
    };
    CHECK(sup_diff(rho, expect, 10.0) <= 1e-8);
    // round trip: apply_J(invert_J(phi)) == phi
    auto back = apply_J(rho).exponent;
    CHECK(sup_diff(back, cp.exponent.eval, 10.0) <= 1e-7);
}

TEST_CASE("invert_IJ via the scaling second derivative") {
    // oracle 2t(-t/6) + t^2(-1/6) = -t^2/2 for the Gaussian -t^2/12
    auto g = invert_IJ(gaussian_exponent(1.0 / 6.0)).exponent;
    CHECK(sup_diff(g, [](double t) { return Complex(-0.5 * t * t, 0.0); }, 10.0) <= 1e-7);

    // gamma: (IJ)^-1 equals J^-1 after I^-1 (composition order equivalence)
    auto gam = make_gamma(2.0, 1.0);
    auto direct = invert_IJ(gam.exponent).exponent;
    auto composed = invert_J(invert_I(gam.exponent).exponent).exponent;
    for (double t : {0.3, 1.0, 5.0, -2.0}) CHECK(std::abs(direct(t) - composed(t)) <= 1e-5);

    // stable: Psi = -alpha(alpha+1)|t|^alpha, and apply_IJ returns the input
    const double a = 1.5;
    auto st = make_stable(a, 1.0);
    auto psi = invert_IJ(st.exponent).exponent;
    auto expect = [a](double t) {
        return Complex(-a * (a + 1.0) * std::pow(std::abs(t), a), 0.0);
    };
    CHECK(sup_diff(psi, expect, 10.0) <= 2e-5);
    auto back = apply_IJ(psi).exponent;
    CHECK(sup_diff(back, st.exponent.eval, 10.0) <= 1e-6);
}

TEST_CASE("round trips on catalog ID_log exponents") {
    for (const char* name : {"gamma", "sym-gamma", "stable", "levy-area", "wenocur"}) {
        auto spec = make_by_name(name, {});
        const double t_max = 10.0;
        auto there = invert_I(spec.exponent).exponent;
        auto back = apply_I(there).exponent;
        CHECK(sup_diff(back, spec.exponent.eval, t_max) <= 1e-6);
        auto there_j = invert_J(spec.exponent).exponent;
        auto back_j = apply_J(there_j).exponent;
        CHECK(sup_diff(back_j, spec.exponent.eval, t_max) <= 1e-6);
    }
}

TEST_CASE("factorization identity in log-CF form") {
    // I(J(rho)) + J(rho) = I(rho) pointwise
    for (const char* name : {"comp-poisson-exp", "stable"}) {
        auto rho = make_by_name(name, {});
        auto j = apply_J(rho.exponent).exponent;
        auto ij = apply_IJ(rho.exponent).exponent;
        auto i = apply_I(rho.exponent).exponent;
        for (double t : symmetric_t_grid(10.0, 41))
            CHECK(std::abs(ij(t) + j(t) - i(t)) <= 1e-6);
    }
}

TEST_CASE("transform results report method and probed error") {
    auto r = apply_I(make_comp_poisson_exp(1.0, 1.0).exponent);
    CHECK(r.method == TransformMethod::quadrature);
    CHECK(r.est_error >= 0.0);
    CHECK(r.est_error <= 1e-8); // closed-form input, quadrature-limited
    auto inv = invert_I(make_gamma(1.0, 1.0).exponent);
    CHECK(inv.method == TransformMethod::closed_form);
}

TEST_CASE("apply_I rejects a log-moment-divergent exponent") {
    // Re Phi(t) ~ -c/log(1/|t|) near 0 makes the s-blocks decay like 1/s
    auto bad = closed("log-divergent", [](double t) -> Complex {
        if (t == 0.0) return 0.0;
        const double at = std::min(std::abs(t), 0.5);
        return Complex(-1.0 / std::log(1.0 / at), 0.0);
    });
    CHECK_THROWS_AS(apply_I(bad).exponent(1.0), NonConvergent);
}
