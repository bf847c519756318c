#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "lpf/smooth_count.hpp"

using namespace lpf;

namespace {
const DickmanTable& table() {
    static const DickmanTable t = DickmanTable::build(64.0, 30);
    return t;
}
}  // namespace

TEST_CASE("exact counts, both methods") {
    CHECK(psi_exact({30, 3, PsiMethod::buchstab}) == 12);
    CHECK(psi_exact({30, 3, PsiMethod::sieve}) == 12);
    CHECK(psi_exact({1000, 1000, PsiMethod::auto_pick}) == 1000);  // Psi(x, x) = x
    CHECK(psi_exact({1, 2, PsiMethod::auto_pick}) == 1);
    CHECK(psi_exact({0, 2, PsiMethod::auto_pick}) == 0);
    // y > x treated as y = x
    CHECK(psi_exact({100, 10'000, PsiMethod::buchstab}) == 100);
}

TEST_CASE("frozen enumeration values") {
    PsiCalculator calc(1'000'000);
    CHECK(calc.exact(1000, 100) == 665);
    CHECK(calc.exact(10'000, 100) == 3716);
    CHECK(calc.exact(10'000, 1000) == 7598);
    CHECK(calc.exact(100'000, 100) == 17442);
    CHECK(calc.exact(100'000, 1000) == 53323);
    CHECK(calc.exact(1'000'000, 1000) == 344299);
}

TEST_CASE("sieve and Buchstab agree") {
    for (u64 x : {100, 1000, 30'000, 100'000}) {
        PsiCalculator calc(x);
        for (u64 y : {2, 3, 5, 10, 100, 1000}) {
            u64 a = psi_sieve(x, y);
            u64 b = calc.exact(x, std::min(x, y));
            CHECK_MESSAGE(a == b, "x=", x, " y=", y);
        }
        CHECK(psi_sieve(x, x) == x);
    }
}

TEST_CASE("monotone in both arguments") {
    PsiCalculator calc(10'000);
    u64 prev = 0;
    for (u64 x : {10, 100, 1000, 10'000}) {
        u64 v = calc.exact(x, 7);
        CHECK(v >= prev);
        prev = v;
    }
    prev = 0;
    for (u64 y : {2, 3, 5, 7, 11, 101, 997}) {
        u64 v = calc.exact(10'000, y);
        CHECK(v >= prev);
        prev = v;
    }
}

TEST_CASE("budget guards") {
    CHECK_THROWS_AS(psi_sieve(200'000'000, 10), budget_error);
    PsiCalculator calc(100);
    CHECK_THROWS_AS(calc.exact(10'000, 5000), std::invalid_argument);
}

TEST_CASE("de Bruijn approximation") {
    CHECK(psi_dickman(1e6, 1e6, table()) == 1e6);  // u = 1
    CHECK(psi_dickman(1e6, 1e3, table()) ==
          doctest::Approx(1e6 * 0.30685281944005469).epsilon(1e-12));
    CHECK(psi_dickman(1e8, 1e2, table()) ==
          doctest::Approx(1e8 * 0.00491092564776083235).epsilon(1e-12));
    CHECK_THROWS_AS(psi_dickman(1e6, 1.5, table()), std::domain_error);
    auto tiny = DickmanTable::build(2.5, 12);
    CHECK_THROWS_AS(psi_dickman(1e6, 10, tiny), std::domain_error);  // u beyond table
}

TEST_CASE("elementary bound shape") {
    CHECK(psi_elementary_bound(100.0, 100.0) ==
          doctest::Approx(100.0 * std::exp(-0.5)).epsilon(1e-15));
    CHECK(psi_elementary_bound(1e6, 10.0) ==
          doctest::Approx(1e6 * std::exp(-3.0)).epsilon(1e-15));
    // exact counts stay within a bounded multiple of the bound shape
    double c_fit = 0.0;
    PsiCalculator calc(1'000'000);
    for (u64 x : {10'000, 100'000, 1'000'000}) {
        for (u64 y : {10, 100, 1000}) {
            double ratio = static_cast<double>(calc.exact(x, y)) /
                           psi_elementary_bound(static_cast<double>(x), static_cast<double>(y));
            c_fit = std::max(c_fit, ratio);
        }
    }
    MESSAGE("elementary bound constant C' = ", c_fit);
    CHECK(std::isfinite(c_fit));
}

TEST_CASE("approximation quality inside the validity range") {
    // |Psi/(x rho(u)) - 1| <= C log(u+1)/log y with one fitted C over the
    // subgrid where y >= exp((log log x)^{5/3})
    double c_fit = 0.0;
    PsiCalculator calc(1'000'000);
    for (u64 x : {10'000, 100'000, 1'000'000}) {
        double lx = std::log(static_cast<double>(x));
        double floor_y = std::exp(std::pow(std::log(lx), 5.0 / 3.0));
        for (u64 y : {u64(100), u64(1000), x}) {
            if (static_cast<double>(y) < floor_y) continue;
            double u = lx / std::log(static_cast<double>(y));
            double approx = static_cast<double>(x) * table().rho(u);
            double err = std::abs(static_cast<double>(calc.exact(x, y)) / approx - 1.0);
            c_fit = std::max(c_fit, err / (std::log(u + 1.0) / std::log(static_cast<double>(y))));
        }
    }
    MESSAGE("de Bruijn approximation constant C = ", c_fit);
    CHECK(c_fit <= 10.0);
}
