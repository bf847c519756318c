#pragma once

#include <unordered_map>
#include <vector>

#include "lpf/common.hpp"
#include "lpf/dickman.hpp"

namespace lpf {

enum class PsiMethod { sieve, buchstab, auto_pick };

struct PsiQuery {
    u64 x = 1;
    u64 y = 2;  // y > x is treated as y = x
    PsiMethod method = PsiMethod::auto_pick;
};

// Exact Psi(x,y) by the Buchstab recursion
//   Psi(x, p_k) = Psi(x, p_{k-1}) + Psi(x/p_k, p_k),  Psi(x, 2) = floor(log2 x)+1,
// memoized on (floor(x), prime index). n = 1 is counted (empty factor set):
// the identities sum_{n<=x} P^r(n) = sum_p p^r Psi(x/p, p) need the k = 1
// term. Not thread-safe; confine one instance to one worker.
class PsiCalculator {
public:
    explicit PsiCalculator(u64 y_max);

    u64 exact(u64 x, u64 y);

    const std::vector<u64>& primes() const { return primes_; }

private:
    u64 rec(u64 x, size_t k);

    u64 y_max_;
    std::vector<u64> primes_;
    std::unordered_map<u64, u64> memo_;
};

// exact count by direct scan of P(n) over sieve segments; budget x <= 1e8
u64 psi_sieve(u64 x, u64 y);

u64 psi_exact(const PsiQuery& q);

// de Bruijn approximation x * rho(log x / log y)
double psi_dickman(double x, double y, const DickmanTable& table);

// x * exp(-log x / (2 log y)), the elementary bound shape
double psi_elementary_bound(double x, double y);

}  // namespace lpf
