#include <doctest.h>

#include <cmath>
#include <random>
#include <vector>

#include "levy/derivative.hpp"
#include "levy/grid.hpp"

using levy::grid_derivative;
using levy::GridFunction;
using levy::log_spaced_grid;
using levy::standard_radial_grid;

TEST_CASE("first derivative exact for quadratics on the log grid") {
    auto g = log_spaced_grid(1e-3, 1e3, 257);
    std::vector<double> y(g.size());
    for (std::size_t i = 0; i < g.size(); ++i) y[i] = g[i] * g[i];
    auto d = grid_derivative(GridFunction(g, y), 1);
    for (std::size_t i = 1; i + 1 < g.size(); ++i)
        CHECK(std::abs(d.values()[i] - 2 * g[i]) <= 1e-6 * std::abs(2 * g[i]));
}

TEST_CASE("second derivative of a constant is zero") {
    auto g = log_spaced_grid(0.1, 10.0, 33);
    std::vector<double> y(g.size(), 4.25);
    auto d2 = grid_derivative(GridFunction(g, y), 2);
    for (double v : d2.values()) CHECK(std::abs(v) <= 1e-10);
}

TEST_CASE("first derivative of exp(-r) vs analytic oracle") {
    auto g = log_spaced_grid(0.05, 20.0, 1024);
    std::vector<double> y(g.size());
    for (std::size_t i = 0; i < g.size(); ++i) y[i] = std::exp(-g[i]);
    auto d = grid_derivative(GridFunction(g, y), 1);
    for (std::size_t i = 1; i + 1 < g.size(); ++i) {
        const double expect = -std::exp(-g[i]);
        const double h = g[i + 1] - g[i - 1]; // local grid resolution
        CHECK(std::abs(d.values()[i] - expect) <= h * h * std::abs(expect) + 1e-12);
    }
}

TEST_CASE("derivative composed twice tracks order 2") {
    auto g = log_spaced_grid(0.1, 5.0, 769);
    std::vector<double> y(g.size());
    for (std::size_t i = 0; i < g.size(); ++i) y[i] = std::sin(g[i]);
    GridFunction f(g, y);
    auto twice = grid_derivative(grid_derivative(f, 1), 1);
    auto second = grid_derivative(f, 2);
    // composed first differences agree with the order-2 stencil within 10x
    // of the single-step tolerance on smooth fixtures
    for (std::size_t i = 2; i + 2 < g.size(); ++i) {
        CHECK(std::abs(twice.values()[i] - second.values()[i]) <= 10.0 * 2e-3 + 1e-9);
    }
}

TEST_CASE("insufficient nodes") {
    std::vector<double> g{1, 2, 3, 4};
    std::vector<double> y{1, 1, 1, 1};
    CHECK_THROWS_AS(grid_derivative(GridFunction(g, y), 1), levy::InsufficientNodes);
}

TEST_CASE("pchip preserves monotone data") {
    std::mt19937_64 rng(12345);
    std::uniform_real_distribution<double> jump(0.0, 2.0);
    for (int rep = 0; rep < 50; ++rep) {
        std::vector<double> x(40), y(40);
        double vx = 0.1, vy = 5.0;
        for (int i = 0; i < 40; ++i) {
            vx += 0.05 + jump(rng);
            vy -= jump(rng) * 0.1; // nonincreasing data
            x[static_cast<std::size_t>(i)] = vx;
            y[static_cast<std::size_t>(i)] = vy;
        }
        GridFunction f(x, y);
        double prev = f(x.front());
        for (double t = x.front(); t <= x.back(); t += (x.back() - x.front()) / 997.0) {
            const double v = f(t);
            CHECK(v <= prev + 1e-12);
            prev = v;
        }
    }
}

TEST_CASE("standard radial grid spans twelve decades") {
    auto g = standard_radial_grid();
    CHECK(g.size() == 512);
    CHECK(g.front() == doctest::Approx(1e-6));
    CHECK(g.back() == doctest::Approx(1e6));
}

TEST_CASE("richardson derivative guards genuine kinks") {
    auto kink = [](double t) { return std::abs(t - 1.0); };
    CHECK_THROWS_AS(levy::richardson_derivative(std::function<double(double)>(kink), 1.0),
                    levy::NonDifferentiable);
    auto smooth = [](double t) { return std::exp(0.3 * t); };
    const double d = levy::richardson_derivative(std::function<double(double)>(smooth), 2.0);
    CHECK(d == doctest::Approx(0.3 * std::exp(0.6)).epsilon(1e-10));
}
