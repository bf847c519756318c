#pragma once

// Cross-module quantities shared by unit and acceptance tests.

#include <cmath>

#include "lpf/factor_sieve.hpp"
#include "lpf/ksum.hpp"
#include "lpf/smooth_count.hpp"

namespace helpers {

using lpf::u64;

// right side of the Psi identity: sum_{p<=x} p^r Psi(x/p, p)
inline double psi_identity_rhs(u64 x, double r, lpf::PsiCalculator& calc) {
    lpf::KahanSum acc;
    lpf::for_each_prime(2, x, [&](u64 p) {
        double term = std::pow(static_cast<double>(p), r) *
                      static_cast<double>(calc.exact(x / p, p));
        acc.add(term);
    });
    return acc.value();
}

// right side of the exclusion bound:
// sum_{2 <= r <= log2 x} sum_{p <= x^{1/r}} Psi(x / p^r, p*r)
inline u64 exclusion_bound_rhs(u64 x, lpf::PsiCalculator& calc) {
    u64 total = 0;
    for (u64 r = 2;; ++r) {
        u64 pr = 1;
        // largest p with p^r <= x, found by scanning primes
        bool any = false;
        for (u64 p = 2;; ++p) {
            // p^r overflow-safe check
            u64 power = 1;
            bool over = false;
            for (u64 i = 0; i < r; ++i) {
                if (power > x / p) {
                    over = true;
                    break;
                }
                power *= p;
            }
            if (over || power > x) break;
            // p must be prime
            bool prime = true;
            for (u64 q = 2; q * q <= p; ++q)
                if (p % q == 0) {
                    prime = false;
                    break;
                }
            if (!prime) continue;
            any = true;
            total += calc.exact(x / power, p * r);
        }
        (void)pr;
        if (!any) break;  // no prime with p^r <= x, and r only grows
    }
    return total;
}

}  // namespace helpers
