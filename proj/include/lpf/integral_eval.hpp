#pragma once

#include "lpf/common.hpp"
#include "lpf/dickman.hpp"
#include "lpf/smarandache.hpp"

namespace lpf {

enum class Param { t_form, u_form };

struct QuadratureResult {
    double value = 0;
    double abs_error_estimate = 0;
    long evaluations = 0;
    Param parametrization = Param::t_form;
    double truncation_bound = 0;  // contribution discarded by the rho tail cut
};

// int_2^x rho(log x / log t) (log t / t^2) dt, or after t = x^{1/u}:
// int_1^{log x/log 2} rho(u) (log x)^2 u^{-3} e^{-log x/u} du
QuadratureResult integral_T0(double x, const DickmanTable& table, Param param,
                             double rel_tol = 1e-10);

// int_2^x rho(log x / log t) t^{-2} dt, u-form rho(u) (log x) u^{-2} e^{-log x/u}
QuadratureResult integral_recip_P(double x, const DickmanTable& table, Param param,
                                  double rel_tol = 1e-10);

// 2 x * integral_T0(x), the leading term of the N(x) integral formula
double N_theorem2(double x, const DickmanTable& table, double rel_tol = 1e-10);

struct AsymptoticReport {
    u64 x = 0;
    u64 n_exact = 0;
    u64 t0_exact = 0;
    double sum_inv_p = 0;
    double i_t0 = 0;
    double i_recip_p = 0;
    double n_thm2 = 0;       // 2 x i_t0
    double n_thm1_elem = 0;  // x exp(-sqrt2 L (1+g0)), NaN below the g_0 domain
    double ratio_n_thm2 = 0;
    double ratio_t0 = 0;     // t0_exact / (x * i_t0)
    double ratio_inv_p = 0;  // sum_inv_p / (x * i_recip_p)
    double ratio_n_t0 = 0;   // n_exact / t0_exact
};

AsymptoticReport compare(u64 x, const DickmanTable& table, double rel_tol = 1e-10,
                         const ScanOptions& scan = {});

}  // namespace lpf
