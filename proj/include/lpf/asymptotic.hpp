#pragma once

#include <cmath>
#include <vector>

#include "lpf/common.hpp"
#include "lpf/dickman.hpp"

namespace lpf {

// L(x) = sqrt(log x * log log x); requires x > e
double L_of(double x);

// the second-order exponent correction; requires log_3 x >= 0.1 (the factor
// 1 + 2/log_3 x is singular below) and r > -1
double g_r_of(double x, double r);
inline bool g_r_in_range(double x) {
    return x > 1.0 && std::log(x) > 1.0 && std::log(std::log(std::log(x))) >= 0.1;
}

// root of log x = u (x^{1/u^2} - 1); Newton seeded by sqrt(2 log x / log_2 x)
// with geometric bracket expansion and bisection fallback;
// residual <= 1e-10 log x
double u0_solve(double x);

// explicit series terms sqrt(2 log x/log_2 x)(1 - log_3 x/(2 log_2 x)
//                                              + log 2/(2 log_2 x))
double u0_series(double x);

// (sqrt(pi) K / 2^{3/4}) (log x log_2 x)^{3/4} x^{1 - 1/u0} rho(u0) with
// K = 2 when corrected (the repaired constant), K = 1 + log 2 otherwise
double ford_theorem1(double x, const DickmanTable& table, bool corrected);

struct ExponentForms {
    double th1_rhs;       // x exp(-sqrt2 L (1 + g_0))
    double corollary_13;  // x exp(-sqrt2 L)
    double dekoninck_14;  // x exp(-2 L); kept to exhibit the contradiction
};
ExponentForms exponent_forms(double x);

// x exp(-sqrt(2r) L (1 + g_{r-1})), the inverse-S moment shape; r > 0
double theorem3_rhs(double x, double r);

// x exp(-sqrt(2r+2) L (1 + g_r)), the T_r shape; r >= 0
double t_r_rhs(double x, double r);

struct ElementaryAsymptotics {
    double x = 0;
    double L = 0;
    std::vector<double> g_r;  // keyed by the requested r list
    double u0 = 0;
    double u0_series = 0;
};
ElementaryAsymptotics elementary_asymptotics(double x, const std::vector<double>& r_list);

}  // namespace lpf
