#pragma once

#include <functional>
#include <span>
#include <vector>

#include "lpf/common.hpp"

namespace lpf {

struct QuadOptions {
    double rel_tol = 1e-10;
    double abs_tol = 0.0;         // used when the integral is (near) zero
    long max_evals = 1'000'000;   // hard evaluation ceiling
};

struct QuadOutcome {
    double value = 0.0;
    double abs_error = 0.0;  // estimated
    long evaluations = 0;
};

// Adaptive bisection with an embedded Gauss-Legendre 7/15 rule pair per
// panel. `breakpoints` (sorted, >= 2 entries) seed the initial panels; the
// integrand is assumed smooth inside each seeded panel. Worst-error-first
// refinement; the final sum runs over panels in interval order so the result
// does not depend on refinement scheduling.
QuadOutcome integrate(const std::function<double(double)>& f,
                      std::span<const double> breakpoints,
                      const QuadOptions& opt = {});

inline QuadOutcome integrate(const std::function<double(double)>& f, double a, double b,
                             const QuadOptions& opt = {}) {
    const double pts[2] = {a, b};
    return integrate(f, pts, opt);
}

}  // namespace lpf
