#include "lpf/smooth_count.hpp"

#include <algorithm>
#include <bit>
#include <cmath>

#include "lpf/factor_sieve.hpp"
#include "lpf/smarandache.hpp"

namespace lpf {

PsiCalculator::PsiCalculator(u64 y_max) : y_max_(std::max<u64>(y_max, 2)) {
    primes_ = primes_up_to(y_max_);
}

u64 PsiCalculator::exact(u64 x, u64 y) {
    if (x == 0) return 0;
    y = std::min(y, x);
    if (y < 2) return 1;  // only n = 1
    if (y > y_max_) throw std::invalid_argument("PsiCalculator: y beyond prepared prime range");
    size_t k = static_cast<size_t>(
        std::upper_bound(primes_.begin(), primes_.end(), y) - primes_.begin());
    if (k == 0) return 1;
    return rec(x, k);
}

u64 PsiCalculator::rec(u64 x, size_t k) {
    if (x == 0) return 0;
    if (k == 0) return 1;
    if (primes_[k - 1] >= x) return x;  // every n <= x is smooth
    if (k == 1) return static_cast<u64>(std::bit_width(x));  // 1, 2, 4, ...
    u64 key = 0;
    const u64 stride = static_cast<u64>(primes_.size()) + 1;
    const bool keyed = x <= (~u64(0) - k) / stride;
    if (keyed) {
        key = x * stride + k;
        auto it = memo_.find(key);
        if (it != memo_.end()) return it->second;
    }
    // unrolled left spine: Psi(x, p_k) = Psi(x, 2) + sum_{j=2..k} Psi(x/p_j, p_j)
    u64 total = static_cast<u64>(std::bit_width(x));
    for (size_t j = 2; j <= k; ++j) total += rec(x / primes_[j - 1], j);
    if (keyed) memo_.emplace(key, total);
    return total;
}

u64 psi_sieve(u64 x, u64 y) {
    if (x == 0) return 0;
    if (x == 1) return 1;
    if (x > 100'000'000ULL) throw budget_error("psi_sieve: x beyond direct-scan budget");
    y = std::min(y, x);
    ScanOptions opt;
    opt.with_smarandache = false;
    opt.with_predicate = false;
    const u64 seg = std::clamp<u64>(opt.segment_len, 1024, kSegmentBudget);
    std::vector<u64> partial(static_cast<size_t>((x - 2) / seg) + 1, 0);
    scan_range(2, x, opt, [&](const SegmentView& v, size_t idx) {
        u64 c = 0;
        for (size_t i = 0; i < v.size; ++i)
            if (v.max_prime[i] <= y) ++c;
        partial[idx] = c;
    });
    u64 count = 1;  // n = 1 has an empty prime-factor set
    for (u64 c : partial) count += c;
    return count;
}

u64 psi_exact(const PsiQuery& q) {
    if (q.x == 0) return 0;
    u64 y = std::min(q.x, std::max<u64>(q.y, 2));
    if (y >= q.x) return q.x;
    switch (q.method) {
        case PsiMethod::sieve:
            return psi_sieve(q.x, y);
        case PsiMethod::buchstab:
        case PsiMethod::auto_pick: {
            PsiCalculator calc(y);
            return calc.exact(q.x, y);
        }
    }
    throw std::logic_error("psi_exact: bad method");
}

double psi_dickman(double x, double y, const DickmanTable& table) {
    if (!(y >= 2.0) || !(y <= x)) throw std::domain_error("psi_dickman: need 2 <= y <= x");
    double u = std::log(x) / std::log(y);
    return x * table.rho(u);
}

double psi_elementary_bound(double x, double y) {
    if (!(y >= 2.0) || !(y <= x)) throw std::domain_error("psi_elementary_bound: need 2 <= y <= x");
    return x * std::exp(-std::log(x) / (2.0 * std::log(y)));
}

}  // namespace lpf
