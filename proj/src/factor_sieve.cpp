#include "lpf/factor_sieve.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <ostream>

#include "lpf/binio.hpp"
#include "lpf/quadrature.hpp"

namespace lpf {

namespace {

// simple odd-only sieve for the base primes
std::vector<u64> small_primes(u64 x) {
    std::vector<u64> primes;
    if (x < 2) return primes;
    primes.push_back(2);
    if (x < 3) return primes;
    const u64 m = (x - 1) / 2;  // flags for 3, 5, 7, ...
    std::vector<bool> composite(m + 1, false);
    for (u64 i = 1; i <= m; ++i) {
        u64 p = 2 * i + 1;
        if (p * p > x) break;
        if (composite[i]) continue;
        for (u64 j = (p * p - 1) / 2; j <= m; j += p) composite[j] = true;
    }
    for (u64 i = 1; i <= m; ++i)
        if (!composite[i]) primes.push_back(2 * i + 1);
    return primes;
}

}  // namespace

FactorSieve build_sieve(u64 lo, u64 hi) {
    if (lo < 2) throw std::invalid_argument("build_sieve: lo must be >= 2");
    if (lo >= hi) throw std::invalid_argument("build_sieve: need lo < hi");
    if (hi - lo > kSegmentBudget) throw budget_error("build_sieve: segment exceeds budget");

    FactorSieve s;
    s.lo = lo;
    s.hi = hi;
    s.base_primes = small_primes(isqrt(hi));
    s.spf.assign(hi - lo, 0);
    for (u64 p : s.base_primes) {
        u64 start = ((lo + p - 1) / p) * p;
        for (u64 m = start; m < hi; m += p) {
            u32& e = s.spf[m - lo];
            if (e == 0) e = static_cast<u32>(p);  // first (= least) prime wins
        }
    }
    return s;
}

Factorization factorize(const FactorSieve& sieve, u64 n) {
    if (n < sieve.lo || n >= sieve.hi)
        throw std::out_of_range("factorize: n outside sieve segment");
    Factorization f;
    f.n = n;
    u64 rem = n;
    // the table gives the least factor of n itself; quotients may leave the
    // segment, so continue by trial division over the base primes
    u64 first = sieve.spf_of(n);
    auto strip = [&](u64 p) {
        u32 e = 0;
        while (rem % p == 0) {
            rem /= p;
            ++e;
        }
        if (e) f.factors.push_back({p, e});
    };
    strip(first);
    for (u64 p : sieve.base_primes) {
        if (p <= first) continue;
        if (p * p > rem) break;
        strip(p);
    }
    if (rem > 1) f.factors.push_back({rem, 1});  // one prime > sqrt(hi) may remain
    return f;
}

u64 largest_prime_factor(const FactorSieve& sieve, u64 n) {
    return factorize(sieve, n).factors.back().prime;
}

std::vector<u64> primes_up_to(u64 x) {
    if (x < 2) throw std::invalid_argument("primes_up_to: x must be >= 2");
    if (x > (u64(1) << 31)) throw budget_error("primes_up_to: use for_each_prime beyond 2^31");
    return small_primes(x);
}

void for_each_prime(u64 lo, u64 hi, const std::function<void(u64)>& fn) {
    if (hi < 2 || hi < lo) return;
    lo = std::max<u64>(lo, 2);
    const std::vector<u64> base = small_primes(isqrt(hi));
    for (u64 p : base)
        if (p >= lo && p <= hi) fn(p);
    const u64 seg = u64(1) << 22;
    u64 start = std::max(lo, base.empty() ? u64(2) : base.back() + 1);
    std::vector<bool> comp;
    for (u64 a = start; a <= hi; a += seg) {
        u64 b = std::min(hi, a + seg - 1);
        comp.assign(b - a + 1, false);
        for (u64 p : base) {
            if (p * p > b) break;
            u64 first = std::max(((a + p - 1) / p) * p, p * p);
            for (u64 m = first; m <= b; m += p) comp[m - a] = true;
        }
        for (u64 m = a; m <= b; ++m)
            if (!comp[m - a]) fn(m);
    }
}

u64 count_primes(u64 x) {
    u64 n = 0;
    for_each_prime(2, x, [&](u64) { ++n; });
    return n;
}

double pi_approx(double x, double tol) {
    if (x < 2) throw std::domain_error("pi_approx: x must be >= 2");
    if (x == 2) return 0.0;
    QuadOptions opt;
    // the relative floor keeps huge x feasible in double precision
    opt.rel_tol = 1e-13;
    opt.abs_tol = tol;
    // geometric breakpoints keep early panels away from the t=2 curvature
    std::vector<double> pts{2.0};
    for (double t = 16.0; t < x; t *= t) pts.push_back(t);
    pts.push_back(x);
    auto out = integrate([](double t) { return 1.0 / std::log(t); }, pts, opt);
    return out.value;
}

namespace {
constexpr u32 kSieveMagic = 0x4650534C;  // "LSPF"
constexpr u32 kSieveVersion = 1;
}  // namespace

void save_sieve(const FactorSieve& sieve, std::ostream& os) {
    binio::put_u32(os, kSieveMagic);
    binio::put_u32(os, kSieveVersion);
    binio::put_u64(os, sieve.lo);
    binio::put_u64(os, sieve.hi);
    for (u32 e : sieve.spf) binio::put_u32(os, e);
}

FactorSieve load_sieve(std::istream& is) {
    if (binio::get_u32(is) != kSieveMagic) throw std::runtime_error("sieve cache: bad magic");
    if (binio::get_u32(is) != kSieveVersion)
        throw std::runtime_error("sieve cache: unsupported version");
    u64 lo = binio::get_u64(is);
    u64 hi = binio::get_u64(is);
    if (lo < 2 || lo >= hi || hi - lo > kSegmentBudget)
        throw std::runtime_error("sieve cache: corrupt header");
    FactorSieve s;
    s.lo = lo;
    s.hi = hi;
    s.base_primes = small_primes(isqrt(hi));
    s.spf.resize(hi - lo);
    for (u64 i = 0; i < hi - lo; ++i) s.spf[i] = binio::get_u32(is);
    if (!is) throw std::runtime_error("sieve cache: truncated file");
    return s;
}

}  // namespace lpf
