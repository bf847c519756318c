#pragma once

#include <iosfwd>
#include <vector>

#include "lpf/common.hpp"

namespace lpf {

// Certified piecewise-polynomial table for the Dickman-de Bruijn function
// rho(u): rho = 1 on [0,1], u rho'(u) = -rho(u-1) elsewhere, rho = 0 for
// u < 0. Each unit interval [k, k+1) carries eight aligned polynomial pieces
// in the local variable from each piece's left edge. Construction propagates
// log rho (see dickman.cpp: propagating rho itself loses relative accuracy
// like e^{xi(k)} per unit interval and turns to noise past u ~ 15 in double
// precision); the stored pieces are the exponentiated local series and stay
// relatively accurate through u = 64. residual_bound certifies
// |u rho'(u) + rho(u-1)| over a dense grid together with the per-piece
// truncation estimate from the trailing coefficients.
//
// The table is immutable once built and safe to share across threads.
class DickmanTable {
public:
    static DickmanTable build(double u_max = 64.0, int degree = 30,
                              double residual_target = 1e-10);

    double rho(double u) const;        // 0 for u < 0, 1 on [0,1]
    double rho_deriv(double u) const;  // rho'(u) for u > 0 (one-sided at knots)
    double integrate(double a, double b) const;  // int_a^b rho, via antiderivatives

    double u_max() const { return u_max_; }
    int degree() const { return degree_; }
    double residual_bound() const { return residual_bound_; }

    // cache file: version, u_max, degree, residual_bound, coefficient matrix;
    // little-endian, loads back bit-identically
    void save(std::ostream& os) const;
    static DickmanTable load(std::istream& is);

private:
    DickmanTable() = default;
    size_t piece_index(double u) const;
    static double piece_left(size_t piece);
    double eval_piece(size_t piece, double u, int deriv) const;
    double integrate_piece(size_t piece, double a, double b) const;

    double u_max_ = 0.0;
    int degree_ = 0;
    double residual_bound_ = 0.0;
    size_t intervals_ = 0;        // unit intervals, covers [0, intervals_)
    std::vector<double> coeffs_;  // (intervals_ * subdiv) x (degree_+1), row-major
};

// saddle function: the positive root of e^xi - 1 = u*xi for u > 1;
// Newton seeded by the log-expansion, bisection-safeguarded,
// residual |e^xi - 1 - u xi| <= 1e-12 e^xi
double xi(double u);

// explicit expansion terms log u + log log u + (log log u)/log u, valid u > e
double xi_expansion(double u);

// exp(-u(log u + log_2 u - 1)), the explicit part of the rho expansion
double rho_asymptotic(double u);

struct RhoShiftCheck {
    double lhs;    // rho(u - v)
    double rhs;    // rho(u) * exp(v * xi(u))
    double ratio;  // lhs / rhs
};

// shift identity rho(u-v) ~ rho(u) e^{v xi(u)}; property-test helper
RhoShiftCheck rho_shift_check(const DickmanTable& table, double u, double v);

}  // namespace lpf
