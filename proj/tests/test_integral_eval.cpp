#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "lpf/integral_eval.hpp"
#include "lpf/quadrature.hpp"

using namespace lpf;

namespace {
const DickmanTable& table() {
    static const DickmanTable t = DickmanTable::build(64.0, 30);
    return t;
}
}  // namespace

TEST_CASE("parametrizations agree") {
    for (double x : {1e4, 1e6, 1e8}) {
        auto t0_t = integral_T0(x, table(), Param::t_form);
        auto t0_u = integral_T0(x, table(), Param::u_form);
        CHECK(t0_t.value == doctest::Approx(t0_u.value).epsilon(1e-9));
        auto rp_t = integral_recip_P(x, table(), Param::t_form);
        auto rp_u = integral_recip_P(x, table(), Param::u_form);
        CHECK(rp_t.value == doctest::Approx(rp_u.value).epsilon(1e-9));
        CHECK(rp_t.value > 0.0);
        CHECK(t0_t.value > 0.0);
    }
}

TEST_CASE("values against an independent quadrature route") {
    // frozen from a 25-digit adaptive integration of the u-form
    CHECK(integral_T0(1e4, table(), Param::u_form).value ==
          doctest::Approx(0.04947609561).epsilon(1e-8));
    CHECK(integral_T0(1e5, table(), Param::u_form).value ==
          doctest::Approx(0.02340930391).epsilon(1e-8));
    CHECK(integral_T0(1e6, table(), Param::u_form).value ==
          doctest::Approx(0.01132351473).epsilon(1e-8));
    CHECK(integral_recip_P(1e4, table(), Param::u_form).value ==
          doctest::Approx(0.01070532679).epsilon(1e-8));
    CHECK(integral_recip_P(1e6, table(), Param::u_form).value ==
          doctest::Approx(0.001937820055).epsilon(1e-8));

    // x = 4: one short panel, checked against a direct in-test integration
    auto small = integral_T0(4.0, table(), Param::t_form);
    auto direct = integrate(
        [&](double t) {
            return table().rho(std::log(4.0) / std::log(t)) * std::log(t) / (t * t);
        },
        2.0, 4.0, {});
    CHECK(small.value == doctest::Approx(direct.value).epsilon(1e-9));
}

TEST_CASE("error estimates and evaluation counts are reported") {
    auto r = integral_T0(1e6, table(), Param::u_form, 1e-10);
    CHECK(r.abs_error_estimate <= 1e-10 * r.value * 1.01);
    CHECK(r.evaluations > 0);
    CHECK(r.parametrization == Param::u_form);
}

TEST_CASE("truncation at the table edge is recorded and harmless") {
    // a short table forces a tail cut at u = 24 for x = 1e12
    auto shorttab = DickmanTable::build(24.0, 30);
    auto cut = integral_T0(1e12, shorttab, Param::u_form, 1e-10);
    auto full = integral_T0(1e12, table(), Param::u_form, 1e-10);
    CHECK(cut.truncation_bound > 0.0);
    CHECK(full.truncation_bound == 0.0);
    CHECK(std::abs(cut.value - full.value) <= 0.1 * 1e-10 * full.value);
    CHECK(cut.truncation_bound <= 0.1 * 1e-10 * full.value);
}

TEST_CASE("N_theorem2 is the scaled integral") {
    double x = 31622.0;
    CHECK(N_theorem2(x, table()) ==
          doctest::Approx(2.0 * x * integral_T0(x, table(), Param::u_form).value)
              .epsilon(1e-12));
}

TEST_CASE("compare assembles one consistent report row") {
    auto rep = compare(10'000, table());
    CHECK(rep.n_exact == 593);
    CHECK(rep.t0_exact == 402);
    CHECK(rep.sum_inv_p == doctest::Approx(201.08546113021026).epsilon(1e-12));
    CHECK(rep.n_exact >= rep.t0_exact);
    CHECK(rep.ratio_n_thm2 == doctest::Approx(0.599279).epsilon(1e-4));
    for (double v : {rep.i_t0, rep.i_recip_p, rep.n_thm2, rep.n_thm1_elem, rep.ratio_n_thm2,
                     rep.ratio_t0, rep.ratio_inv_p, rep.ratio_n_t0}) {
        CHECK(std::isfinite(v));
        CHECK(v > 0.0);
    }
    // identity feed-through: the exact reciprocal sum stays within a bounded
    // ratio of x * integral
    CHECK(rep.ratio_inv_p > 0.5);
    CHECK(rep.ratio_inv_p < 2.0);
    CHECK(rep.ratio_t0 > 0.5);
    CHECK(rep.ratio_t0 < 2.0);
}

TEST_CASE("ratio bands persist at 1e6") {
    auto rep = compare(1'000'000, table());
    CHECK(rep.n_exact == 13567);
    CHECK(rep.t0_exact == 9107);
    CHECK(rep.ratio_t0 > 0.5);
    CHECK(rep.ratio_t0 < 2.0);
    CHECK(rep.ratio_inv_p > 0.5);
    CHECK(rep.ratio_inv_p < 2.0);
}
