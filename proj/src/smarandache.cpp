#include "lpf/smarandache.hpp"

#include <algorithm>
#include <cmath>

namespace lpf {

u64 smarandache(const Factorization& f) {
    if (f.factors.empty()) throw std::invalid_argument("smarandache: need n >= 2");
    u64 best = 0;
    for (const auto& e : f.factors) {
        u64 s = (e.exp == 1) ? e.prime : smarandache_prime_power(e.prime, e.exp);
        best = std::max(best, s);
    }
    return best;
}

bool divides_P_factorial(const Factorization& f) {
    if (f.factors.empty()) throw std::invalid_argument("divides_P_factorial: need n >= 2");
    const u64 P = f.factors.back().prime;
    for (const auto& e : f.factors)
        if (e.exp > legendre_valuation(e.prime, P)) return false;
    return true;
}

namespace detail {

SegmentView factor_segment(u64 a, u64 b, std::span<const u64> base_primes,
                           const ScanOptions& opt, SegmentBuffers& buf) {
    const size_t n = static_cast<size_t>(b - a);
    buf.rem.resize(n);
    buf.maxp.assign(n, 0);
    buf.maxexp.assign(n, 0);
    if (opt.with_smarandache) buf.smax.assign(n, 1);
    for (size_t i = 0; i < n; ++i) buf.rem[i] = a + i;

    // pass A: divide out base primes ascending; the last prime to touch a
    // position is its largest sieved prime factor. Primes with p^2 >= b
    // cannot divide any n < b twice and are caught by the leftover test.
    for (u64 p : base_primes) {
        if (p * p >= b) break;
        u64 start = ((a + p - 1) / p) * p;
        for (u64 m = start; m < b; m += p) {
            size_t i = static_cast<size_t>(m - a);
            u64 r = buf.rem[i];
            u32 e = 0;
            do {
                r /= p;
                ++e;
            } while (r % p == 0);
            buf.rem[i] = r;
            buf.maxp[i] = p;
            buf.maxexp[i] = static_cast<u8>(e);
            if (opt.with_smarandache) {
                u64 spp = (e == 1) ? p : smarandache_prime_power(p, e);
                if (spp > buf.smax[i]) buf.smax[i] = spp;
            }
        }
    }
    for (size_t i = 0; i < n; ++i) {
        u64 r = buf.rem[i];
        if (r > 1) {  // a single prime > sqrt(b-1) remains
            buf.maxp[i] = r;
            buf.maxexp[i] = 1;
            if (opt.with_smarandache && r > buf.smax[i]) buf.smax[i] = r;
        }
    }

    // pass B: exponent check a <= nu_p(P!) per prime power, with the cheap
    // bound nu_p(P!) >= floor(P/p) short-circuiting almost every position
    if (opt.with_predicate) {
        buf.notdiv.assign(n, 0);
        for (size_t i = 0; i < n; ++i) buf.rem[i] = a + i;
        for (u64 p : base_primes) {
            if (p * p >= b) break;
            u64 start = ((a + p - 1) / p) * p;
            for (u64 m = start; m < b; m += p) {
                size_t i = static_cast<size_t>(m - a);
                u64 r = buf.rem[i];
                u32 e = 0;
                do {
                    r /= p;
                    ++e;
                } while (r % p == 0);
                buf.rem[i] = r;
                if (buf.notdiv[i]) continue;
                u64 P = buf.maxp[i];
                if (e > P / p && e > legendre_valuation(p, P)) buf.notdiv[i] = 1;
            }
        }
        // leftover prime q equals P(n) with exponent 1 <= nu_q(q!): never flags
    }

    SegmentView view;
    view.lo = a;
    view.size = n;
    view.max_prime = buf.maxp.data();
    view.max_prime_exp = buf.maxexp.data();
    view.smarand = opt.with_smarandache ? buf.smax.data() : nullptr;
    view.not_divides = opt.with_predicate ? buf.notdiv.data() : nullptr;
    return view;
}

}  // namespace detail

namespace {

// v^r with a multiply-only path for small integer r (the common moments)
struct PowSpec {
    double r;
    int ir;
    bool integral;
    explicit PowSpec(double r_) : r(r_) {
        ir = static_cast<int>(std::lround(r_));
        integral = (r_ == static_cast<double>(ir) && ir >= 0 && ir <= 16);
    }
    double operator()(double v) const {
        if (!integral) return std::pow(v, r);
        double acc = 1.0, base = v;
        int e = ir;
        while (e) {
            if (e & 1) acc *= base;
            base *= base;
            e >>= 1;
        }
        return acc;
    }
};

struct SegmentPartial {
    u64 not_divides = 0, s_neq_p = 0, t0 = 0;
    std::vector<KahanSum> t_r, p_r, inv_p_r, s_r, inv_s_r, ratio_r, ratio_inv_r;
};

}  // namespace

ExactSums exact_sums(u64 x, std::vector<double> r_list, const ScanOptions& opt) {
    if (x < 2) throw std::invalid_argument("exact_sums: x must be >= 2");
    const size_t nr = r_list.size();
    std::vector<PowSpec> pw;
    pw.reserve(nr);
    for (double r : r_list) pw.emplace_back(r);

    const u64 seg = std::clamp<u64>(opt.segment_len, 1024, kSegmentBudget);
    const size_t nseg = static_cast<size_t>((x - 2) / seg) + 1;
    std::vector<SegmentPartial> parts(nseg);

    scan_range(2, x, opt, [&](const SegmentView& v, size_t idx) {
        SegmentPartial& part = parts[idx];
        part.t_r.resize(nr);
        part.p_r.resize(nr);
        part.inv_p_r.resize(nr);
        part.s_r.resize(nr);
        part.inv_s_r.resize(nr);
        part.ratio_r.resize(nr);
        part.ratio_inv_r.resize(nr);
        for (size_t i = 0; i < v.size; ++i) {
            const u64 P = v.max_prime[i];
            const bool square = v.max_prime_exp[i] >= 2;
            if (square) ++part.t0;
            if (v.not_divides && v.not_divides[i]) ++part.not_divides;
            u64 S = P;
            if (v.smarand) {
                S = v.smarand[i];
                if (S != P) ++part.s_neq_p;
            }
            for (size_t j = 0; j < nr; ++j) {
                const double pr = pw[j](static_cast<double>(P));
                const double inv_pr = 1.0 / pr;
                part.p_r[j].add(pr);
                part.inv_p_r[j].add(inv_pr);
                if (square) part.t_r[j].add(inv_pr);
                if (v.smarand) {
                    const double sr = (S == P) ? pr : pw[j](static_cast<double>(S));
                    part.s_r[j].add(sr);
                    part.inv_s_r[j].add(1.0 / sr);
                    part.ratio_r[j].add(sr * inv_pr);
                    part.ratio_inv_r[j].add(pr / sr);
                }
            }
        }
    });

    ExactSums out;
    out.x = x;
    out.r_list = std::move(r_list);
    std::vector<KahanSum> acc(7 * nr);
    for (const SegmentPartial& part : parts) {  // fixed combination order
        out.count_not_divides += part.not_divides;
        out.count_s_neq_p += part.s_neq_p;
        out.count_t0 += part.t0;
        if (part.t_r.empty()) continue;  // segment beyond range never ran
        for (size_t j = 0; j < nr; ++j) {
            acc[7 * j + 0].merge(part.t_r[j]);
            acc[7 * j + 1].merge(part.p_r[j]);
            acc[7 * j + 2].merge(part.inv_p_r[j]);
            acc[7 * j + 3].merge(part.s_r[j]);
            acc[7 * j + 4].merge(part.inv_s_r[j]);
            acc[7 * j + 5].merge(part.ratio_r[j]);
            acc[7 * j + 6].merge(part.ratio_inv_r[j]);
        }
    }
    out.t_r.resize(nr);
    out.sum_p_r.resize(nr);
    out.sum_inv_p_r.resize(nr);
    out.sum_s_r.resize(nr);
    out.sum_inv_s_r.resize(nr);
    out.sum_ratio_r.resize(nr);
    out.sum_ratio_inv_r.resize(nr);
    for (size_t j = 0; j < nr; ++j) {
        out.t_r[j] = acc[7 * j + 0].value();
        out.sum_p_r[j] = acc[7 * j + 1].value();
        out.sum_inv_p_r[j] = acc[7 * j + 2].value();
        out.sum_s_r[j] = acc[7 * j + 3].value();
        out.sum_inv_s_r[j] = acc[7 * j + 4].value();
        out.sum_ratio_r[j] = acc[7 * j + 5].value();
        out.sum_ratio_inv_r[j] = acc[7 * j + 6].value();
    }
    return out;
}

u64 count_N(u64 x, const ScanOptions& opt) {
    ScanOptions o = opt;
    o.with_predicate = true;
    o.with_smarandache = true;
    ExactSums s = exact_sums(x, {}, o);
    if (s.count_not_divides != s.count_s_neq_p)
        throw tolerance_error("count_N: predicate and S(n)=P(n) oracles disagree");
    return s.count_not_divides;
}

namespace {
ExactSums single_r(u64 x, double r, const ScanOptions& opt, bool need_smarandache) {
    ScanOptions o = opt;
    o.with_predicate = false;
    o.with_smarandache = need_smarandache;
    return exact_sums(x, {r}, o);
}
}  // namespace

double sum_T_r(u64 x, double r, const ScanOptions& opt) {
    if (r < 0) throw std::invalid_argument("sum_T_r: r must be >= 0");
    return single_r(x, r, opt, false).t_r[0];
}

double sum_inv_P_r(u64 x, double r, const ScanOptions& opt) {
    if (!(r > 0)) throw std::invalid_argument("sum_inv_P_r: r must be > 0");
    return single_r(x, r, opt, false).sum_inv_p_r[0];
}

double sum_P_r(u64 x, double r, const ScanOptions& opt) {
    return single_r(x, r, opt, false).sum_p_r[0];
}

SMoments sum_S_moments(u64 x, double r, const ScanOptions& opt) {
    // negative r routes through the inverse accumulators
    double rr = std::abs(r);
    ExactSums s = single_r(x, rr, opt, true);
    if (r >= 0) return SMoments{s.sum_s_r[0], s.sum_inv_s_r[0], s.sum_ratio_r[0]};
    return SMoments{s.sum_inv_s_r[0], s.sum_s_r[0], s.sum_ratio_inv_r[0]};
}

}  // namespace lpf
