#include "lpf/asymptotic.hpp"

#include <algorithm>
#include <cmath>

namespace lpf {

double L_of(double x) {
    if (!(std::log(x) > 1.0)) throw std::domain_error("L_of: requires x > e");
    return std::sqrt(std::log(x) * std::log(std::log(x)));
}

double g_r_of(double x, double r) {
    if (!(r > -1.0)) throw std::invalid_argument("g_r_of: requires r > -1");
    if (!g_r_in_range(x)) throw std::domain_error("g_r_of: x below asymptotic range");
    const double l2 = std::log(std::log(x));
    const double l3 = std::log(l2);
    const double lr = std::log(1.0 + r);
    const double log2 = std::log(2.0);
    return ((l3 + lr - 2.0 - log2) / (2.0 * l2)) * (1.0 + 2.0 / l3) -
           (l3 + lr - log2) * (l3 + lr - log2) / (8.0 * l2 * l2);
}

double u0_solve(double x) {
    if (!(x >= 10.0)) throw std::domain_error("u0_solve: requires x >= 10");
    const double lambda = std::log(x);
    auto F = [&](double u) { return u * std::expm1(lambda / (u * u)) - lambda; };
    auto dF = [&](double u) {
        double e = std::exp(lambda / (u * u));
        return std::expm1(lambda / (u * u)) - 2.0 * lambda * e / (u * u);
    };
    const double seed = std::sqrt(2.0 * lambda / std::log(lambda));
    double lo = std::max(1.5, 0.5 * seed), hi = 2.0 * seed;
    // F decreases from +inf to -lambda; expand until the bracket straddles 0
    int guard = 0;
    while (F(lo) < 0.0) {
        lo *= 0.5;
        if (++guard > 60) throw tolerance_error("u0_solve: bracketing failed");
    }
    guard = 0;
    while (F(hi) > 0.0) {
        hi *= 2.0;
        if (++guard > 60) throw tolerance_error("u0_solve: bracketing failed");
    }
    double u = std::clamp(seed, lo, hi);
    for (int it = 0; it < 80; ++it) {
        double f = F(u);
        if (std::abs(f) <= 1e-10 * lambda) return u;
        if (f > 0.0)
            lo = u;  // root lies right of u (F decreasing)
        else
            hi = u;
        double un = u - f / dF(u);
        if (!(un > lo && un < hi)) un = 0.5 * (lo + hi);
        u = un;
    }
    if (std::abs(F(u)) <= 1e-10 * lambda) return u;
    throw tolerance_error("u0_solve: residual contract not met");
}

double u0_series(double x) {
    const double l1 = std::log(x);
    if (!(l1 > 1.0) || !(std::log(l1) > 0.0))
        throw std::domain_error("u0_series: requires x > e^e");
    const double l2 = std::log(l1);
    const double l3 = std::log(l2);
    return std::sqrt(2.0 * l1 / l2) * (1.0 - l3 / (2.0 * l2) + std::log(2.0) / (2.0 * l2));
}

double ford_theorem1(double x, const DickmanTable& table, bool corrected) {
    const double u0 = u0_solve(x);
    if (u0 > table.u_max()) throw std::domain_error("ford_theorem1: u0 beyond rho table");
    const double K = corrected ? 2.0 : 1.0 + std::log(2.0);
    const double l1 = std::log(x), l2 = std::log(l1);
    return std::sqrt(M_PI) * K / std::pow(2.0, 0.75) * std::pow(l1 * l2, 0.75) *
           std::pow(x, 1.0 - 1.0 / u0) * table.rho(u0);
}

ExponentForms exponent_forms(double x) {
    const double L = L_of(x);
    const double g0 = g_r_of(x, 0.0);
    const double s2 = std::sqrt(2.0);
    return ExponentForms{x * std::exp(-s2 * L * (1.0 + g0)), x * std::exp(-s2 * L),
                         x * std::exp(-2.0 * L)};
}

double theorem3_rhs(double x, double r) {
    if (!(r > 0.0)) throw std::invalid_argument("theorem3_rhs: requires r > 0");
    return x * std::exp(-std::sqrt(2.0 * r) * L_of(x) * (1.0 + g_r_of(x, r - 1.0)));
}

double t_r_rhs(double x, double r) {
    if (!(r >= 0.0)) throw std::invalid_argument("t_r_rhs: requires r >= 0");
    return x * std::exp(-std::sqrt(2.0 * r + 2.0) * L_of(x) * (1.0 + g_r_of(x, r)));
}

ElementaryAsymptotics elementary_asymptotics(double x, const std::vector<double>& r_list) {
    ElementaryAsymptotics e;
    e.x = x;
    e.L = L_of(x);
    for (double r : r_list) e.g_r.push_back(g_r_of(x, r));
    e.u0 = u0_solve(x);
    e.u0_series = u0_series(x);
    return e;
}

}  // namespace lpf
