#include "lpf/zeta.hpp"

#include <array>
#include <cmath>

#include "lpf/ksum.hpp"

namespace lpf {

namespace {

constexpr int kDirectTerms = 50;   // summed explicitly
constexpr int kBernoulli = 20;     // correction terms B_2 .. B_40
constexpr int kMaxDeriv = 8;

// B_0 .. B_40 via the defining recurrence; the cancellation there costs a few
// digits at B_40, irrelevant against the 50^{-41} scale of the last term
const std::array<double, 2 * kBernoulli + 1>& bernoulli() {
    static const auto table = [] {
        std::array<double, 2 * kBernoulli + 1> b{};
        std::array<std::array<double, 42>, 42> choose{};
        for (int n = 0; n <= 41; ++n) {
            choose[n][0] = 1.0;
            for (int k = 1; k <= n; ++k)
                choose[n][k] = choose[n - 1][k - 1] + (k <= n - 1 ? choose[n - 1][k] : 0.0);
        }
        b[0] = 1.0;
        for (int m = 1; m <= 2 * kBernoulli; ++m) {
            double s = 0.0;
            for (int j = 0; j < m; ++j) s += choose[m + 1][j] * b[j];
            b[m] = -s / choose[m + 1][m];
        }
        return b;
    }();
    return table;
}

// rising factorial s(s+1)...(s+len-1) as monomial coefficients in s
std::vector<double> rising_poly(int len) {
    std::vector<double> poly{1.0};
    for (int j = 0; j < len; ++j) {
        std::vector<double> next(poly.size() + 1, 0.0);
        for (size_t m = 0; m < poly.size(); ++m) {
            next[m + 1] += poly[m];
            next[m] += poly[m] * j;
        }
        poly = std::move(next);
    }
    return poly;
}

double poly_deriv_at(const std::vector<double>& poly, int order, double s) {
    double v = 0.0;
    for (size_t m = static_cast<size_t>(order); m < poly.size(); ++m) {
        double coef = poly[m];
        for (int j = 0; j < order; ++j) coef *= static_cast<double>(m - j);
        v += coef * std::pow(s, static_cast<double>(m - order));
    }
    return v;
}

}  // namespace

std::vector<double> zeta_derivs(double s, int count) {
    if (!(s > 1.0)) throw std::domain_error("zeta: requires s > 1");
    if (count < 1 || count > kMaxDeriv + 1)
        throw std::invalid_argument("zeta: derivative order must be 0..8");
    const double N = kDirectTerms;
    const double logN = std::log(N);
    std::vector<KahanSum> acc(count);

    // sum_{n < N} n^{-s}: i-th s-derivative is (-log n)^i n^{-s}
    for (int n = 1; n < kDirectTerms; ++n) {
        const double ln = std::log(static_cast<double>(n));
        const double base = std::exp(-s * ln);
        double f = base;
        for (int i = 0; i < count; ++i) {
            acc[i].add(f);
            f *= -ln;
        }
    }

    // N^{1-s}/(s-1): Leibniz over N^{1-s} and (s-1)^{-1}
    {
        const double npow = std::exp((1.0 - s) * logN);
        for (int i = 0; i < count; ++i) {
            double term = 0.0;
            double c = 1.0;  // binom(i, m)
            for (int m = 0; m <= i; ++m) {
                // d^m/ds^m N^{1-s} = (-logN)^m N^{1-s}
                // d^{i-m}/ds^{i-m} (s-1)^{-1} = (-1)^{i-m} (i-m)! (s-1)^{-(i-m+1)}
                double dn = std::pow(-logN, m) * npow;
                int k = i - m;
                double dg = (k % 2 ? -1.0 : 1.0) * std::tgamma(k + 1.0) /
                            std::pow(s - 1.0, k + 1.0);
                term += c * dn * dg;
                c = c * (i - m) / (m + 1.0);
            }
            acc[i].add(term);
        }
    }

    // + N^{-s}/2
    {
        const double npow = std::exp(-s * logN);
        double f = 0.5 * npow;
        for (int i = 0; i < count; ++i) {
            acc[i].add(f);
            f *= -logN;
        }
    }

    // + sum_k B_{2k}/(2k)! * s(s+1)...(s+2k-2) * N^{-s-2k+1}
    const auto& B = bernoulli();
    double fact = 1.0;  // (2k)!
    for (int k = 1; k <= kBernoulli; ++k) {
        fact *= (2.0 * k - 1.0) * (2.0 * k);
        const double cb = B[2 * k] / fact;
        const auto poly = rising_poly(2 * k - 1);
        const double npow = std::exp(-(s + 2.0 * k - 1.0) * logN);
        for (int i = 0; i < count; ++i) {
            double term = 0.0;
            double binom = 1.0;
            for (int m = 0; m <= i; ++m) {
                term += binom * poly_deriv_at(poly, m, s) * std::pow(-logN, i - m);
                binom = binom * (i - m) / (m + 1.0);
            }
            acc[i].add(cb * term * npow);
        }
    }

    std::vector<double> out(count);
    for (int i = 0; i < count; ++i) out[i] = acc[i].value();
    return out;
}

double zeta_real(double s) { return zeta_derivs(s, 1)[0]; }

double zeta_deriv(int i, double s) {
    if (i < 0 || i > kMaxDeriv) throw std::invalid_argument("zeta_deriv: order must be 0..8");
    return zeta_derivs(s, i + 1)[static_cast<size_t>(i)];
}

double binom_neg(int j, int k) {
    if (j < 1 || k < 0) throw std::invalid_argument("binom_neg: need j >= 1, k >= 0");
    // (-1)^k binom(j+k-1, k) in exact integer arithmetic
    u64 num = 1;
    for (int i = 1; i <= k; ++i) num = num * static_cast<u64>(j + k - i) / static_cast<u64>(i);
    double v = static_cast<double>(num);
    return (k % 2) ? -v : v;
}

double lemma1_coeff(double r, int m) {
    if (m < 1) throw std::invalid_argument("lemma1_coeff: m >= 1");
    return std::tgamma(static_cast<double>(m)) * std::pow(r + 1.0, -m);
}

double lemma1_expansion(double x, double r, int M) {
    if (!(x >= 10.0) || M < 1) throw std::domain_error("lemma1_expansion: x >= 10, M >= 1");
    const double L = std::log(x);
    double s = 0.0;
    for (int m = M; m >= 1; --m) s = s / L + lemma1_coeff(r, m);
    return std::pow(x, r + 1.0) * s / L;
}

double lemma2_sum_exact(u64 x, double r, int j) {
    if (x < 4 || j < 1) throw std::domain_error("lemma2_sum_exact: x >= 4, j >= 1");
    const double lx = std::log(static_cast<double>(x));
    KahanSum acc;
    for (u64 n = 1; n <= x / 2; ++n) {
        double dn = static_cast<double>(n);
        acc.add(std::pow(dn, -(r + 1.0)) * std::pow(lx - std::log(dn), -j));
    }
    return acc.value();
}

double lemma2_expansion(double x, double r, int j, int m) {
    if (!(x >= 4.0) || j < 1 || m < 0) throw std::domain_error("lemma2_expansion: bad arguments");
    const double L = std::log(x);
    const auto zd = zeta_derivs(r + 1.0, m + 1);
    double s = 0.0;
    for (int k = 0; k <= m; ++k) s += zd[k] * binom_neg(j, k) * std::pow(L, -(j + k));
    return s;
}

MomentConstants moment_constants(double r, int J) {
    if (!(r > 0.0)) throw std::invalid_argument("moment_constants: r must be > 0");
    if (J < 1 || J > kMaxDeriv) throw std::invalid_argument("moment_constants: J must be 1..8");
    MomentConstants mc;
    mc.r = r;
    mc.J = J;
    mc.zeta_derivs = zeta_derivs(r + 1.0, J);
    mc.c.resize(J);
    for (int m = 1; m <= J; ++m) mc.c[m - 1] = lemma1_coeff(r, m);
    mc.a.assign(J, 0.0);
    for (int m = 1; m <= J; ++m) {
        double s = 0.0;
        for (int j = 1; j <= m; ++j) {
            int k = m - j;
            s += mc.c[j - 1] * mc.zeta_derivs[k] * binom_neg(j, k);
        }
        mc.a[m - 1] = s;
    }
    return mc;
}

double theorem3_moment_rhs(double x, double r, int J, const MomentConstants& mc) {
    if (!(x >= 10.0)) throw std::domain_error("theorem3_moment_rhs: x >= 10");
    if (J < 1 || J > mc.J) throw std::invalid_argument("theorem3_moment_rhs: J out of range");
    const double L = std::log(x);
    double s = 0.0;
    for (int j = J; j >= 1; --j) s = s / L + mc.a[j - 1];
    return std::pow(x, r + 1.0) * s / L;
}

}  // namespace lpf
