#include <doctest.h>

#include <cmath>

#include "levy/catalog.hpp"
#include "levy/membership.hpp"
#include "levy/model.hpp"

using namespace levy;

TEST_CASE("every catalog triple reproduces its exponent under LK quadrature") {
    for (const auto& name : catalog_names()) {
        auto spec = make_by_name(name, {});
        auto lk = lk_exponent(spec.triple);
        for (double t : {-10.0, -2.0, -0.3, 0.7, 4.0, 10.0}) {
            INFO("fixture ", name, " at t=", t);
            CHECK(std::abs(lk(t) - spec.exponent(t)) <= 1e-6);
        }
    }
}

TEST_CASE("classify matches the recorded class verdicts on every fixture") {
    for (const auto& name : catalog_names()) {
        auto spec = make_by_name(name, {});
        auto rep = classify(spec.triple, 2);
        for (const auto& [cls, expect] : spec.known_classes) {
            INFO("fixture ", name, " class ", cls);
            CHECK(rep.at(cls) == expect);
        }
    }
}

TEST_CASE("catalog exponents satisfy the exponent invariants") {
    auto grid = symmetric_t_grid(10.0, 101);
    for (const auto& name : catalog_names()) {
        auto spec = make_by_name(name, {});
        auto chk = check_exponent(spec.exponent, grid);
        INFO("fixture ", name);
        CHECK(chk.ok(1e-10));
    }
}

TEST_CASE("gamma(1,1) characteristic function at t=1") {
    auto g = make_gamma(1.0, 1.0);
    const Complex cf = std::exp(g.exponent(1.0));
    const Complex expect = 1.0 / Complex(1.0, -1.0);
    CHECK(std::abs(cf - expect) <= 1e-14);
}

TEST_CASE("stable boundary and parameter validation") {
    CHECK_THROWS_AS(make_stable(2.0, 1.0), ParamOutOfRange);
    CHECK_THROWS_AS(make_stable(0.0, 1.0), ParamOutOfRange);
    CHECK_THROWS_AS(make_stable(1.5, -1.0), ParamOutOfRange);
    CHECK_NOTHROW(make_gaussian(1.0)); // the alpha -> 2 limit lives here
    CHECK_THROWS_AS(make_gamma(-1.0, 1.0), ParamOutOfRange);
    CHECK_THROWS_AS(make_K_measure(1.0, 1.0, 2), ParamOutOfRange);
    CHECK_THROWS_AS(make_by_name("no-such-law", {}), ParamOutOfRange);
    CHECK_THROWS_AS(make_by_name("gamma", {{"bogus", 1.0}}), ParamOutOfRange);
}

TEST_CASE("cauchy has a finite logarithmic moment") {
    auto cauchy = make_stable(1.0, 1.0);
    CHECK(is_ID_log(cauchy.triple, 1) == Verdict::yes);
}

TEST_CASE("laplace series: single term is the Laplace law") {
    auto lap = make_laplace_series({1.0});
    for (double t : {0.3, 1.0, 5.0}) {
        const Complex cf = std::exp(lap.exponent(t));
        CHECK(std::abs(cf - 1.0 / (1.0 + t * t)) <= 1e-14);
    }
    CHECK_THROWS_AS(make_laplace_series({1.0, -2.0}), DivergentCoefficients);
    CHECK_THROWS_AS(make_laplace_series({1.0, std::nan("")}), DivergentCoefficients);
}

TEST_CASE("truncated a_k = u/(k pi) series approaches tu/sinh(tu)") {
    const double u = 1.0;
    const int K = 10000;
    std::vector<double> a(K);
    for (int k = 1; k <= K; ++k) a[static_cast<std::size_t>(k - 1)] = u / (k * M_PI);
    auto series = make_laplace_series(a);
    auto la = make_levy_area(u);
    for (double t : {0.5, 2.0, 5.0}) {
        const double full = la.exponent(t).real();
        const double trunc = series.exponent(t).real();
        CHECK(std::abs(trunc - full) <= 1e-3 * std::abs(full));
        // recorded truncation bound: sum_{k>K} a_k^2 t^2
        const double bound = u * u * t * t / (M_PI * M_PI) / K;
        CHECK(std::abs(trunc - full) <= bound);
    }
}

TEST_CASE("stochastic-area and Wenocur identities hold exactly") {
    for (double u : {0.5, 1.0, 2.0}) {
        auto la = make_levy_area(u);
        for (double t : {0.0, 0.3, 2.0, 9.0}) {
            const Complex chi = (*la.extra("product"))(t);
            CHECK(std::abs(la.exponent(t) + (*la.extra("bdpd"))(t) - chi) <= 1e-15);
        }
        CHECK(std::abs(std::exp(la.exponent(0.0)) - 1.0) == 0.0);
        CHECK(std::abs(std::exp((*la.extra("bdpd"))(0.0)) - 1.0) == 0.0);
    }
    auto w = make_wenocur();
    for (double t : {0.0, 1.0, 4.0})
        CHECK(std::abs(w.exponent(t) + (*w.extra("bdpd"))(t) - (*w.extra("product"))(t)) <=
              1e-15);
}

TEST_CASE("K-measure fixture classifies with the factorization property") {
    auto k = make_K_measure(1.5, 2.0, 1);
    auto rep = classify(k.triple, 1);
    CHECK(rep.at("Lf") == Verdict::yes);
    CHECK(rep.at("L1") == Verdict::no);
    // negative-side variant mirrors
    auto kn = make_K_measure(1.5, 2.0, -1);
    auto repn = classify(kn.triple, 0);
    CHECK(repn.at("Lf") == Verdict::yes);
}

TEST_CASE("catalog names build with defaults") {
    for (const auto& name : catalog_names()) {
        auto spec = make_by_name(name, {});
        CHECK(spec.name == name);
        spec.triple.validate();
    }
}
