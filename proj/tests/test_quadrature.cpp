#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "lpf/quadrature.hpp"

using namespace lpf;

TEST_CASE("reproduces closed-form integrals") {
    QuadOptions opt;
    opt.rel_tol = 1e-12;

    auto inv_sq = integrate([](double t) { return 1.0 / (t * t); }, 2.0, 1e6, opt);
    CHECK(inv_sq.value == doctest::Approx(0.5 - 1e-6).epsilon(1e-12));

    auto sine = integrate([](double t) { return std::sin(t); }, 0.0, M_PI, opt);
    CHECK(sine.value == doctest::Approx(2.0).epsilon(1e-12));

    auto expo = integrate([](double t) { return std::exp(-t); }, 0.0, 40.0, opt);
    CHECK(expo.value == doctest::Approx(1.0 - std::exp(-40.0)).epsilon(1e-12));
}

TEST_CASE("error estimate is honest on a kinked integrand") {
    // |t| has a kink at 0; adaptive splitting must still hit 1e-10
    QuadOptions opt;
    opt.rel_tol = 1e-10;
    auto out = integrate([](double t) { return std::abs(t); }, -1.0, 2.0, opt);
    CHECK(out.value == doctest::Approx(2.5).epsilon(1e-9));
    CHECK(out.abs_error <= 1e-10 * 2.5 * 1.0001);
}

TEST_CASE("breakpoints seed the panels") {
    QuadOptions opt;
    opt.rel_tol = 1e-12;
    const double pts[3] = {0.0, 1.0, 4.0};
    auto out = integrate([](double t) { return t < 1.0 ? 1.0 : 0.5; }, pts, opt);
    CHECK(out.value == doctest::Approx(1.0 + 1.5).epsilon(1e-13));
}

TEST_CASE("evaluation ceiling reports a budget error") {
    QuadOptions opt;
    opt.rel_tol = 1e-14;
    opt.max_evals = 200;
    // nasty oscillator cannot converge within 200 evaluations
    CHECK_THROWS_AS(integrate([](double t) { return std::sin(1000.0 * t * t); }, 0.0, 10.0, opt),
                    budget_error);
}

TEST_CASE("invalid breakpoints are rejected") {
    const double bad[2] = {1.0, 1.0};
    CHECK_THROWS_AS(integrate([](double) { return 1.0; }, bad, {}), std::invalid_argument);
    const double one[1] = {1.0};
    CHECK_THROWS_AS(integrate([](double) { return 1.0; }, one, {}), std::invalid_argument);
}

TEST_CASE("deterministic across repeated runs") {
    QuadOptions opt;
    opt.rel_tol = 1e-11;
    auto f = [](double t) { return std::exp(-t * t) * std::cos(3.0 * t); };
    auto a = integrate(f, -5.0, 5.0, opt);
    auto b = integrate(f, -5.0, 5.0, opt);
    CHECK(a.value == b.value);
    CHECK(a.evaluations == b.evaluations);
}
