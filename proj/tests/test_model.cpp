#include <doctest.h>

#include <cmath>
#include <complex>
#include <vector>

#include "levy/model.hpp"
#include "levy/quadrature.hpp"

using namespace levy;

namespace {

// hand-rolled gamma(alpha, lambda) triple; the catalog module has its own
// constructor, this one keeps the model tests self-contained
LevyTriple gamma_triple(double alpha, double lambda) {
    LevyTriple t;
    t.shift = alpha / lambda * (1.0 - std::exp(-lambda));
    t.spectral.pos.density = [=](double x) { return alpha * std::exp(-lambda * x) / x; };
    t.spectral.pos.derivative = [=](double x) {
        return -alpha * std::exp(-lambda * x) * (lambda * x + 1.0) / (x * x);
    };
    t.spectral.pos.tail = [=](double x) { return alpha * expint_e1(lambda * x); };
    t.spectral.neg = TailDensity::zero();
    return t;
}

Complex gamma_exponent(double alpha, double lambda, double t) {
    return -alpha * std::log(Complex(1.0, -t / lambda));
}

} // namespace

TEST_CASE("expint_e1 vs quadrature oracle") {
    for (double x : {0.05, 0.3, 1.0, 2.5, 10.0}) {
        const double oracle = integrate_to_infinity(
                                  [](double u) { return std::exp(-u) / u; }, x)
                                  .value;
        CHECK(expint_e1(x) == doctest::Approx(oracle).epsilon(1e-9));
    }
}

TEST_CASE("Levy-Khintchine quadrature reproduces the gamma exponent") {
    const double alpha = 2.0, lambda = 1.0;
    auto phi = lk_exponent(gamma_triple(alpha, lambda));
    for (double t : {-10.0, -4.0, -1.0, -0.1, 0.0, 0.1, 0.5, 1.0, 3.0, 10.0}) {
        const Complex got = phi(t);
        const Complex expect = t == 0.0 ? Complex(0.0) : gamma_exponent(alpha, lambda, t);
        CHECK(std::abs(got - expect) <= 1e-7);
    }
}

TEST_CASE("lk exponent satisfies the exponent invariants") {
    auto phi = lk_exponent(gamma_triple(0.7, 2.0));
    auto grid = symmetric_t_grid(10.0, 41);
    auto chk = check_exponent(phi, grid);
    CHECK(chk.origin_error == 0.0);
    CHECK(chk.hermitian_error <= 1e-10);
    CHECK(chk.positivity_error <= 1e-10);
}

TEST_CASE("lk handles atoms and the gaussian part") {
    LevyTriple t;
    t.shift = 0.25;
    t.gaussian_var = 1.5;
    t.spectral = SpectralDensityPair::zero();
    t.spectral.atoms = {{0.5, 2.0}, {-3.0, 1.0}};
    auto phi = lk_exponent(t);
    const double tt = 1.7;
    Complex expect(0.0, 0.25 * tt);
    expect += -0.75 * tt * tt;
    expect += 2.0 * (std::exp(Complex(0, tt * 0.5)) - 1.0 - Complex(0, tt * 0.5));
    expect += 1.0 * (std::exp(Complex(0, -3.0 * tt)) - 1.0);
    CHECK(std::abs(phi(tt) - expect) <= 1e-12);
}

TEST_CASE("log_cf_branch: constant and pure-shift cfs") {
    auto grid = symmetric_t_grid(20.0, 81);
    auto one = log_cf_branch([](double) { return Complex(1.0, 0.0); }, grid);
    for (double t : grid) CHECK(std::abs(one(t)) <= 1e-14);

    const double a = 2.0; // |ta| well past pi at the grid edge
    auto shift = log_cf_branch(
        [a](double t) { return std::exp(Complex(0.0, t * a)); }, grid);
    for (double t : grid) CHECK(std::abs(shift(t) - Complex(0.0, a * t)) <= 1e-9);
}

TEST_CASE("log_cf_branch unwinds (1-it)^-5 past pi") {
    auto cf = [](double t) { return std::pow(Complex(1.0, -t), -5.0); };
    auto grid = symmetric_t_grid(10.0, 201);
    auto phi = log_cf_branch(cf, grid);

    // oracle: argument accumulation over a fine fixed subdivision
    auto oracle_at = [&](double t_target) {
        const int n = 200000;
        Complex prev(1.0, 0.0);
        double theta = 0.0;
        for (int k = 1; k <= n; ++k) {
            const double t = t_target * k / n;
            const Complex w = std::pow(Complex(1.0, -t), -5.0);
            theta += std::arg(w / prev);
            prev = w;
        }
        return Complex(std::log(std::abs(prev)), theta);
    };
    for (double t : {4.0, 10.0}) {
        const Complex expect = oracle_at(t);
        CHECK(expect.imag() > M_PI); // genuinely unwound past the principal branch
        CHECK(std::abs(phi(t) - expect) <= 1e-6);
        CHECK(std::abs(phi(t) - (-5.0 * std::log(Complex(1.0, -t)))) <= 1e-6);
    }
}

TEST_CASE("log_cf_branch flags a vanishing cf") {
    auto cf = [](double t) { return Complex(1.0 - std::abs(t), 0.0); }; // hits 0 at |t|=1
    auto grid = symmetric_t_grid(2.0, 41);
    CHECK_THROWS_AS(log_cf_branch(cf, grid), ZeroCrossing);
}

TEST_CASE("dilation keeps the exponent consistent: Phi_a(t) = Phi(at)") {
    auto base = gamma_triple(1.2, 0.8);
    for (double a : {0.4, 2.5}) {
        auto dil = dilate(base, a);
        auto phi_dil = lk_exponent(dil);
        auto phi_base = lk_exponent(base);
        for (double t : {0.3, 1.0, 4.0}) {
            CHECK(std::abs(phi_dil(t) - phi_base(a * t)) <= 1e-7);
        }
    }
}

TEST_CASE("convolve adds triples; delta_0 is the identity") {
    auto g = gamma_triple(1.0, 1.0);
    LevyTriple id; // [0,0,0]
    id.spectral = SpectralDensityPair::zero();
    auto s = convolve(g, id);
    CHECK(s.shift == g.shift);
    CHECK(s.gaussian_var == g.gaussian_var);
    for (double r : {0.1, 1.0, 5.0})
        CHECK(s.spectral.pos(r) == doctest::Approx(g.spectral.pos(r)));

    auto sum = convolve(gamma_triple(1.0, 1.0), gamma_triple(2.0, 1.0));
    auto expect = gamma_triple(3.0, 1.0);
    for (double r : {0.05, 0.4, 2.0, 9.0})
        CHECK(sum.spectral.pos(r) == doctest::Approx(expect.spectral.pos(r)).epsilon(1e-12));
}

TEST_CASE("triple validation rejects bad inputs") {
    LevyTriple t;
    t.gaussian_var = -1.0;
    t.spectral = SpectralDensityPair::zero();
    CHECK_THROWS(t.validate());

    LevyTriple neg;
    neg.spectral = SpectralDensityPair::zero();
    neg.spectral.pos.density = [](double) { return -1.0; };
    neg.spectral.pos.is_zero = false;
    CHECK_THROWS(neg.validate());
}
