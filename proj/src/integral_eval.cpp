#include "lpf/integral_eval.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "lpf/asymptotic.hpp"
#include "lpf/quadrature.hpp"

namespace lpf {

namespace {

// Shared driver for the two rho integrals. `weight_pow` selects the t-form
// weight log^w t / t^2, w in {0, 1}; the u-form integrand follows from
// t = x^{1/u}, dt = -t (log x / u^2) du.
QuadratureResult rho_integral(double x, const DickmanTable& table, Param param, double rel_tol,
                              int weight_pow) {
    if (!(x >= 4.0)) throw std::domain_error("rho integral: requires x >= 4");
    const double lx = std::log(x);
    const double u_full = lx / std::log(2.0);  // u at t = 2

    // rho decays superexponentially, so panels in the far tail cost nothing;
    // cut only where the table ends (rho there is < 1e-100 for the default
    // u_max) and record the discarded piece
    const double u_cut = std::min(u_full, table.u_max());
    const double weight_cap = (weight_pow == 1) ? lx * lx : lx;  // coarse integrand cap

    QuadratureResult res;
    res.parametrization = param;
    res.truncation_bound =
        (u_cut < u_full) ? table.rho(u_cut) * weight_cap * (u_full - u_cut) : 0.0;

    QuadOptions opt;
    opt.rel_tol = rel_tol;
    QuadOutcome out;
    if (param == Param::u_form) {
        std::vector<double> pts{1.0};
        for (double k = 2.0; k < u_cut; k += 1.0) pts.push_back(k);  // rho knots
        pts.push_back(u_cut);
        auto f = [&](double u) {
            double w = (weight_pow == 1) ? lx * lx / (u * u * u) : lx / (u * u);
            return table.rho(u) * w * std::exp(-lx / u);
        };
        out = integrate(f, pts, opt);
    } else {
        // panels split at t = x^{1/k} where log x / log t crosses integers
        const double t_lo = std::exp(lx / u_cut);
        std::vector<double> pts{std::max(2.0, t_lo)};
        for (double k = std::floor(u_cut); k >= 2.0; k -= 1.0) {
            double t = std::exp(lx / k);
            if (t > pts.back() * (1.0 + 1e-12) && t < x) pts.push_back(t);
        }
        if (x > pts.back() * (1.0 + 1e-12)) pts.push_back(x);
        auto f = [&](double t) {
            double u = lx / std::log(t);
            if (u > table.u_max()) return 0.0;  // below the tail cut anyway
            double w = (weight_pow == 1) ? std::log(t) : 1.0;
            return table.rho(u) * w / (t * t);
        };
        out = integrate(f, pts, opt);
    }
    res.value = out.value;
    res.abs_error_estimate = out.abs_error;
    res.evaluations = out.evaluations;
    return res;
}

}  // namespace

QuadratureResult integral_T0(double x, const DickmanTable& table, Param param, double rel_tol) {
    return rho_integral(x, table, param, rel_tol, 1);
}

QuadratureResult integral_recip_P(double x, const DickmanTable& table, Param param,
                                  double rel_tol) {
    return rho_integral(x, table, param, rel_tol, 0);
}

double N_theorem2(double x, const DickmanTable& table, double rel_tol) {
    return 2.0 * x * integral_T0(x, table, Param::u_form, rel_tol).value;
}

AsymptoticReport compare(u64 x, const DickmanTable& table, double rel_tol,
                         const ScanOptions& scan) {
    if (x < 10) throw std::domain_error("compare: requires x >= 10");
    AsymptoticReport rep;
    rep.x = x;

    ScanOptions opt = scan;
    opt.with_predicate = true;
    opt.with_smarandache = true;
    ExactSums sums = exact_sums(x, {1.0}, opt);
    if (sums.count_not_divides != sums.count_s_neq_p)
        throw tolerance_error("compare: N(x) oracles disagree");
    rep.n_exact = sums.count_not_divides;
    rep.t0_exact = sums.count_t0;
    rep.sum_inv_p = sums.sum_inv_p_r[0];

    const double xd = static_cast<double>(x);
    rep.i_t0 = integral_T0(xd, table, Param::u_form, rel_tol).value;
    rep.i_recip_p = integral_recip_P(xd, table, Param::u_form, rel_tol).value;
    rep.n_thm2 = 2.0 * xd * rep.i_t0;
    rep.n_thm1_elem = g_r_in_range(xd) ? exponent_forms(xd).th1_rhs
                                       : std::numeric_limits<double>::quiet_NaN();
    rep.ratio_n_thm2 = static_cast<double>(rep.n_exact) / rep.n_thm2;
    rep.ratio_t0 = static_cast<double>(rep.t0_exact) / (xd * rep.i_t0);
    rep.ratio_inv_p = rep.sum_inv_p / (xd * rep.i_recip_p);
    rep.ratio_n_t0 = static_cast<double>(rep.n_exact) / static_cast<double>(rep.t0_exact);
    return rep;
}

}  // namespace lpf
