#pragma once

#include <atomic>
#include <span>
#include <thread>
#include <vector>

#include "lpf/common.hpp"
#include "lpf/factor_sieve.hpp"
#include "lpf/ksum.hpp"

namespace lpf {

// nu_p(k!) = sum_i floor(k / p^i)
inline u64 legendre_valuation(u64 p, u64 k) {
    u64 s = 0;
    while (k) {
        k /= p;
        s += k;
    }
    return s;
}

// minimal k with nu_p(k!) >= a; always a multiple of p. Binary search over
// multiples m*p, m in [1, a]: nu is nondecreasing and nu_p((a*p)!) >= a.
inline u64 smarandache_prime_power(u64 p, u32 a) {
    if (a == 0) throw std::invalid_argument("smarandache_prime_power: a must be >= 1");
    u64 lo = 1, hi = a;
    while (lo < hi) {
        u64 mid = lo + (hi - lo) / 2;
        if (legendre_valuation(p, mid * p) >= a)
            hi = mid;
        else
            lo = mid + 1;
    }
    return lo * p;
}

// S(n) = max over p^a || n of S(p^a)
u64 smarandache(const Factorization& f);

// n | P(n)!  <=>  every p^a || n has a <= nu_p(P(n)!); equals S(n) == P(n)
bool divides_P_factorial(const Factorization& f);

// ---------------------------------------------------------------------------
// Streaming factorization engine. scan_range() splits [first, last] into
// segments, factors every n by dividing base primes out of a residue array,
// and hands each finished segment to the visitor. Workers process disjoint
// segments; visitors typically write into a per-segment slot and the caller
// combines slots in index order, which keeps results identical for any
// thread count.

struct ScanOptions {
    u64 segment_len = u64(1) << 21;
    int threads = 1;
    u64 max_x = 10'000'000'000ULL;  // guard for runaway ranges
    bool with_smarandache = true;   // fill SegmentView::smarand
    bool with_predicate = true;     // fill SegmentView::not_divides (second pass)
};

struct SegmentView {
    u64 lo = 0;  // first n of the segment
    size_t size = 0;
    const u64* max_prime = nullptr;      // P(n)
    const u8* max_prime_exp = nullptr;   // exponent of P(n) in n
    const u64* smarand = nullptr;        // S(n), if requested
    const u8* not_divides = nullptr;     // 1 iff n does not divide P(n)!, if requested
};

namespace detail {

struct SegmentBuffers {
    std::vector<u64> rem, maxp, smax;
    std::vector<u8> maxexp, notdiv;
};

SegmentView factor_segment(u64 a, u64 b, std::span<const u64> base_primes,
                           const ScanOptions& opt, SegmentBuffers& buf);

}  // namespace detail

template <class SegmentFn>
void scan_range(u64 first, u64 last, const ScanOptions& opt, SegmentFn&& fn) {
    if (first < 2) first = 2;
    if (last < first) return;
    if (last > opt.max_x) throw budget_error("scan_range: x beyond configured maximum");
    const std::vector<u64> base = primes_up_to(std::max<u64>(isqrt(last), 2));
    const u64 seg = std::clamp<u64>(opt.segment_len, 1024, kSegmentBudget);
    const size_t nseg = static_cast<size_t>((last - first) / seg) + 1;

    std::atomic<size_t> next{0};
    std::atomic<bool> failed{false};
    auto work = [&]() {
        detail::SegmentBuffers buf;
        for (;;) {
            size_t idx = next.fetch_add(1);
            if (idx >= nseg || failed.load(std::memory_order_relaxed)) break;
            u64 a = first + static_cast<u64>(idx) * seg;
            u64 b = std::min(last, a + seg - 1) + 1;  // exclusive
            SegmentView view = detail::factor_segment(a, b, base, opt, buf);
            fn(view, idx);
        }
    };

    int nt = std::max(1, opt.threads);
    if (nt == 1) {
        work();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(nt);
        for (int t = 0; t < nt; ++t) pool.emplace_back(work);
        for (auto& th : pool) th.join();
    }
}

// ---------------------------------------------------------------------------
// Exact sums over 2 <= n <= x (one ExactSumsReport row)

struct ExactSums {
    u64 x = 0;
    std::vector<double> r_list;
    u64 count_not_divides = 0;  // N(x) by the Legendre predicate
    u64 count_s_neq_p = 0;      // N(x) by S(n) != P(n); must match
    u64 count_t0 = 0;           // T_0(x): P^2(n) | n
    // keyed by r_list position
    std::vector<double> t_r;              // sum over P^2|n of P^-r
    std::vector<double> sum_p_r;          // sum P^r
    std::vector<double> sum_inv_p_r;      // sum P^-r
    std::vector<double> sum_s_r;          // sum S^r
    std::vector<double> sum_inv_s_r;      // sum S^-r
    std::vector<double> sum_ratio_r;      // sum (S/P)^r
    std::vector<double> sum_ratio_inv_r;  // sum (P/S)^r, serves negative exponents
};

ExactSums exact_sums(u64 x, std::vector<double> r_list, const ScanOptions& opt = {});

// N(x): count of 2 <= n <= x with n not dividing P(n)!. Both internal
// oracles are computed and must agree.
u64 count_N(u64 x, const ScanOptions& opt = {});

double sum_T_r(u64 x, double r, const ScanOptions& opt = {});
double sum_inv_P_r(u64 x, double r, const ScanOptions& opt = {});
double sum_P_r(u64 x, double r, const ScanOptions& opt = {});

struct SMoments {
    double sum_s_r = 0;
    double sum_inv_s_r = 0;
    double sum_ratio_r = 0;
};
SMoments sum_S_moments(u64 x, double r, const ScanOptions& opt = {});

}  // namespace lpf
