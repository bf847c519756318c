#pragma once

#include <functional>
#include <iosfwd>
#include <vector>

#include "lpf/common.hpp"

namespace lpf {

// Per-segment least-prime-factor table for [lo, hi). Entries store the least
// prime factor when it is <= sqrt(hi) and 0 when n itself is prime; spf_of()
// resolves the sentinel. A built sieve is immutable and safe to share
// read-only across threads.
struct FactorSieve {
    u64 lo = 0;
    u64 hi = 0;                    // exclusive
    std::vector<u32> spf;          // indexed by n - lo
    std::vector<u64> base_primes;  // exactly the primes p with p*p <= hi, ascending

    u64 spf_of(u64 n) const {
        u32 e = spf[n - lo];
        return e ? e : n;
    }
};

// prime/exponent pairs with strictly increasing primes; factors.back().prime
// is P(n)
struct Factorization {
    struct Entry {
        u64 prime;
        u32 exp;
    };
    u64 n = 0;
    std::vector<Entry> factors;
};

inline constexpr u64 kSegmentBudget = u64(1) << 24;

FactorSieve build_sieve(u64 lo, u64 hi);
Factorization factorize(const FactorSieve& sieve, u64 n);
u64 largest_prime_factor(const FactorSieve& sieve, u64 n);

// all primes <= x, ascending
std::vector<u64> primes_up_to(u64 x);

// streaming prime enumeration over [lo, hi]; fn(u64 p)
void for_each_prime(u64 lo, u64 hi, const std::function<void(u64)>& fn);

// pi(x) by streaming enumeration
u64 count_primes(u64 x);

// integral_2^x dt/log t by adaptive quadrature; absolute error bounded
// by max(tol, 1e-13 * value)
double pi_approx(double x, double tol = 1e-9);

// segment cache, fixed little-endian: magic, version, lo, hi, packed entries
void save_sieve(const FactorSieve& sieve, std::ostream& os);
FactorSieve load_sieve(std::istream& is);

}  // namespace lpf
