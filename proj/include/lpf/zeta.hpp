#pragma once

#include <vector>

#include "lpf/common.hpp"

namespace lpf {

// Riemann zeta and derivatives at real s > 1 by Euler-Maclaurin (N = 50
// direct terms, 20 Bernoulli corrections), every term differentiated
// analytically in s. Absolute error well below 1e-12 away from s = 1.
double zeta_real(double s);
double zeta_deriv(int i, double s);                    // i-th derivative, i <= 8
std::vector<double> zeta_derivs(double s, int count);  // orders 0 .. count-1

// generalized binomial binom(-j, k) = (-1)^k binom(j+k-1, k), exact integers
double binom_neg(int j, int k);

// x^{r+1} (c_{r,1}/log x + ... + c_{r,M}/log^M x), c_{r,m} = (m-1)! (r+1)^{-m}
double lemma1_expansion(double x, double r, int M);
double lemma1_coeff(double r, int m);

// exact sum_{n <= x/2} n^{-(r+1)} log^{-j}(x/n)
double lemma2_sum_exact(u64 x, double r, int j);
// expansion sum_{k=0..m} zeta^{(k)}(r+1) binom(-j,k) log^{-(j+k)} x
double lemma2_expansion(double x, double r, int j, int m);

// Coefficients of x^{r+1} sum_j a_{j,r} / log^j x for sum_{n<=x} S^r(n).
// a_k composes the prime-sum expansion (index j) with the zeta expansion
// (index k): a_m = sum_{j+k=m, j>=1} c_{r,j} zeta^{(k)}(r+1) binom(-j, k).
struct MomentConstants {
    double r = 0;
    int J = 0;
    std::vector<double> c;            // c[m-1] = c_{r,m}, m = 1..J
    std::vector<double> a;            // a[k-1] = a_{k,r}, k = 1..J
    std::vector<double> zeta_derivs;  // zeta^{(i)}(r+1), i = 0..J-1
};
MomentConstants moment_constants(double r, int J);

double theorem3_moment_rhs(double x, double r, int J, const MomentConstants& mc);

}  // namespace lpf
