#include "lpf/dickman.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <istream>
#include <ostream>
#include <vector>

#include "lpf/binio.hpp"

namespace lpf {

namespace {
constexpr u32 kTableMagic = 0x4F485244;  // "DRHO"
constexpr u32 kTableVersion = 3;

// Stored representation: eight polynomial pieces per unit interval, local
// variable t = u - (left edge of piece), t in [0, 1/kSubdiv).
constexpr u32 kSubdiv = 8;

// ---------------------------------------------------------------------------
// Construction.
//
// The series recurrence follows the integral form of the delay equation
// interval by interval: on [k, k+1), with s = u - (k + 1/2),
//   (k + 1/2 + s) f'(s) = -g(s)
// where g is the previous interval's series in the same local variable, so
//   c_{m+1} = -(a_m + m c_m) / ((k + 1/2)(m + 1)),
// and c_0 comes from continuity at the left knot.
//
// rho is extraordinarily ill-conditioned to compute forward: a relative
// perturbation injected near u = k (rounding, or series truncation) grows by
// e^{xi(k)} per unit interval, about 10^110 in total by u = 64, and backward
// recurrence does not work either because rho is not the extremal solution
// of the delay equation. The construction therefore runs in fixed-point
// arithmetic with 1536 fraction bits and an internal series degree of 320,
// which leaves ~300 bits of genuine accuracy at u = 64. Only values, never
// the raw recurrence, are rounded to double: each unit interval is re-expanded
// into eight narrow low-degree pieces (Taylor shifts of the internal series),
// which evaluate in plain double to ~1e-14 relative accuracy everywhere.
//
// The only operations the construction needs are big +/-, multiply and
// divide by small integers, and binary shifts; BigFixed implements exactly
// those.

constexpr int kFracLimbs = 24;  // 1536 fraction bits
constexpr int kLimbs = kFracLimbs + 2;
constexpr int kInternalDegree = 320;

struct BigFixed {
    bool neg = false;
    std::array<u64, kLimbs> mag{};  // little-endian; value = mag * 2^-1536

    static BigFixed one() {
        BigFixed x;
        x.mag[kFracLimbs] = 1;
        return x;
    }

    bool is_zero() const {
        for (u64 l : mag)
            if (l) return false;
        return true;
    }

    static int cmp_mag(const BigFixed& a, const BigFixed& b) {
        for (int i = kLimbs - 1; i >= 0; --i) {
            if (a.mag[i] != b.mag[i]) return a.mag[i] < b.mag[i] ? -1 : 1;
        }
        return 0;
    }

    static void add_mag(const std::array<u64, kLimbs>& a, const std::array<u64, kLimbs>& b,
                        std::array<u64, kLimbs>& out) {
        unsigned __int128 carry = 0;
        for (int i = 0; i < kLimbs; ++i) {
            unsigned __int128 s = carry + a[i];
            s += b[i];
            out[i] = static_cast<u64>(s);
            carry = s >> 64;
        }
    }

    // requires |a| >= |b|
    static void sub_mag(const std::array<u64, kLimbs>& a, const std::array<u64, kLimbs>& b,
                        std::array<u64, kLimbs>& out) {
        unsigned __int128 borrow = 0;
        for (int i = 0; i < kLimbs; ++i) {
            unsigned __int128 d = static_cast<unsigned __int128>(a[i]) - b[i] - borrow;
            out[i] = static_cast<u64>(d);
            borrow = (d >> 127) & 1;
        }
    }

    BigFixed plus(const BigFixed& o) const {
        BigFixed r;
        if (neg == o.neg) {
            add_mag(mag, o.mag, r.mag);
            r.neg = neg;
        } else {
            int c = cmp_mag(*this, o);
            if (c == 0) return r;  // zero
            if (c > 0) {
                sub_mag(mag, o.mag, r.mag);
                r.neg = neg;
            } else {
                sub_mag(o.mag, mag, r.mag);
                r.neg = o.neg;
            }
        }
        return r;
    }

    BigFixed minus(const BigFixed& o) const {
        BigFixed f = o;
        f.neg = !f.neg;
        return plus(f);
    }

    BigFixed times_small(i64 f) const {
        BigFixed r;
        r.neg = neg != (f < 0);
        u64 uf = static_cast<u64>(f < 0 ? -f : f);
        unsigned __int128 carry = 0;
        for (int i = 0; i < kLimbs; ++i) {
            unsigned __int128 p = static_cast<unsigned __int128>(mag[i]) * uf + carry;
            r.mag[i] = static_cast<u64>(p);
            carry = p >> 64;
        }
        if (r.is_zero()) r.neg = false;
        return r;
    }

    BigFixed div_small(u64 d) const {
        BigFixed r;
        r.neg = neg;
        unsigned __int128 rem = 0;
        for (int i = kLimbs - 1; i >= 0; --i) {
            unsigned __int128 cur = (rem << 64) | mag[i];
            r.mag[i] = static_cast<u64>(cur / d);
            rem = cur % d;
        }
        if (r.is_zero()) r.neg = false;
        return r;
    }

    BigFixed shr(unsigned bits) const {
        BigFixed r;
        r.neg = neg;
        unsigned limb = bits / 64, off = bits % 64;
        for (int i = 0; i + static_cast<int>(limb) < kLimbs; ++i) {
            u64 lo = mag[i + limb] >> off;
            u64 hi = (off && i + limb + 1 < static_cast<unsigned>(kLimbs))
                         ? mag[i + limb + 1] << (64 - off)
                         : 0;
            r.mag[i] = lo | hi;
        }
        if (r.is_zero()) r.neg = false;
        return r;
    }

    double to_double() const {
        int top = kLimbs - 1;
        while (top >= 0 && mag[top] == 0) --top;
        if (top < 0) return 0.0;
        // three limbs carry far more than the 53 bits a double keeps
        double v = 0.0;
        for (int i = top; i >= 0 && i >= top - 2; --i)
            v += std::ldexp(static_cast<double>(mag[i]), 64 * (i - kFracLimbs));
        return neg ? -v : v;
    }
};

}  // namespace

DickmanTable DickmanTable::build(double u_max, int degree, double residual_target) {
    if (u_max < 2.0) throw std::invalid_argument("DickmanTable: u_max must be >= 2");
    if (u_max > 100.0) throw std::invalid_argument("DickmanTable: u_max beyond supported range");
    if (degree < 10) throw std::invalid_argument("DickmanTable: degree must be >= 10");
    if (degree > 100) throw std::invalid_argument("DickmanTable: degree must be <= 100");
    DickmanTable t;
    t.u_max_ = u_max;
    t.degree_ = degree;
    t.intervals_ = static_cast<size_t>(std::ceil(u_max));
    const size_t width = static_cast<size_t>(degree) + 1;
    t.coeffs_.assign(t.intervals_ * kSubdiv * width, 0.0);
    for (u32 i = 0; i < kSubdiv; ++i) t.coeffs_[i * width] = 1.0;  // rho = 1 on [0,1)

    const int N = kInternalDegree;
    std::vector<BigFixed> a(N + 1), c(N + 1), deriv(N + 1);
    a[0] = BigFixed::one();

    double truncation = 0.0;
    for (size_t k = 1; k < t.intervals_; ++k) {
        // series recurrence in the midpoint variable s = u - (k + 1/2):
        // c_{m+1} = -(a_m + m c_m) * 2 / ((2k+1)(m+1))
        const u64 two_k1 = 2 * static_cast<u64>(k) + 1;
        c.assign(N + 1, BigFixed{});
        for (int m = 0; m < N; ++m) {
            BigFixed num = a[m].plus(c[m].times_small(m));
            num = num.times_small(2).div_small(two_k1 * static_cast<u64>(m + 1));
            if (!num.is_zero()) num.neg = !num.neg;
            c[m + 1] = num;
        }
        // continuity: f(-1/2) = rho(k) = previous series at +1/2
        BigFixed rho_k;
        for (int m = N; m >= 0; --m) rho_k = rho_k.shr(1).plus(a[m]);
        BigFixed partial;  // sum_{m>=1} c_m (-1/2)^m via Horner
        for (int m = N; m >= 1; --m) {
            BigFixed half = partial.shr(1);
            if (!half.is_zero()) half.neg = !half.neg;
            partial = c[m].plus(half);
        }
        partial = partial.shr(1);
        if (!partial.is_zero()) partial.neg = !partial.neg;
        c[0] = rho_k.minus(partial);

        // re-expand into the eight stored pieces: Taylor shift to each piece's
        // left edge via successive scaled derivatives g_m = f^{(m)}/m!
        deriv = c;
        for (int m = 0; m <= degree; ++m) {
            for (u32 i = 0; i < kSubdiv; ++i) {
                // Horner at s_i = (i - 4)/8
                const i64 num = static_cast<i64>(i) - 4;
                BigFixed v;
                for (int j = N; j >= 0; --j) v = v.times_small(num).shr(3).plus(deriv[j]);
                t.coeffs_[(k * kSubdiv + i) * width + m] = v.to_double();
            }
            for (int j = 0; j < N; ++j)
                deriv[j] = deriv[j + 1].times_small(j + 1).div_small(static_cast<u64>(m + 1));
            deriv[N] = BigFixed{};
        }
        a = c;
    }

    for (size_t p = kSubdiv; p < t.intervals_ * kSubdiv; ++p) {
        double tail = std::abs(t.coeffs_[p * width + degree]) *
                      std::pow(1.0 / kSubdiv, degree);
        truncation = std::max(truncation, 2.0 * tail);
    }

    // certificate: delay-equation residual on a dense grid
    double max_residual = 0.0;
    for (size_t k = 1; k < t.intervals_; ++k) {
        for (int j = 0; j <= 128; ++j) {
            double u = static_cast<double>(k) + j / 128.0;
            if (u > u_max) break;
            double r = u * t.rho_deriv(u) + t.rho(u - 1.0);
            max_residual = std::max(max_residual, std::abs(r));
        }
    }
    t.residual_bound_ = max_residual + truncation;
    if (t.residual_bound_ > residual_target)
        throw tolerance_error("DickmanTable: residual target unattainable at this degree");
    return t;
}

size_t DickmanTable::piece_index(double u) const {
    size_t k = static_cast<size_t>(std::floor(u));
    if (k >= intervals_) k = intervals_ - 1;
    double frac = u - static_cast<double>(k);
    u32 i = static_cast<u32>(frac * kSubdiv);
    if (i >= kSubdiv) i = kSubdiv - 1;
    return k * kSubdiv + i;
}

double DickmanTable::piece_left(size_t piece) {
    return static_cast<double>(piece) / kSubdiv;
}

double DickmanTable::eval_piece(size_t piece, double u, int deriv) const {
    const size_t width = static_cast<size_t>(degree_) + 1;
    const double* c = &coeffs_[piece * width];
    const double t = u - piece_left(piece);
    double v = 0.0;
    if (deriv == 0) {
        for (int m = degree_; m >= 0; --m) v = v * t + c[m];
    } else {
        for (int m = degree_; m >= 1; --m) v = v * t + m * c[m];
    }
    return v;
}

double DickmanTable::rho(double u) const {
    if (u < 0.0) return 0.0;
    if (u <= 1.0) return 1.0;
    if (u > u_max_) throw std::domain_error("DickmanTable::rho: u beyond table");
    return eval_piece(piece_index(u), u, 0);
}

double DickmanTable::rho_deriv(double u) const {
    if (u < 0.0 || u > u_max_) throw std::domain_error("DickmanTable::rho_deriv: out of range");
    if (u < 1.0) return 0.0;
    return eval_piece(piece_index(u), u, 1);
}

double DickmanTable::integrate_piece(size_t piece, double a, double b) const {
    const size_t width = static_cast<size_t>(degree_) + 1;
    const double* c = &coeffs_[piece * width];
    const double left = piece_left(piece);
    auto anti = [&](double u) {
        const double t = u - left;
        double v = 0.0;
        for (int m = degree_; m >= 0; --m) v = v * t + c[m] / (m + 1);
        return v * t;
    };
    return anti(b) - anti(a);
}

double DickmanTable::integrate(double a, double b) const {
    if (a > b) return -integrate(b, a);
    if (b > u_max_) throw std::domain_error("DickmanTable::integrate: beyond table");
    a = std::max(a, 0.0);
    if (a >= b) return 0.0;
    const double step = 1.0 / kSubdiv;
    double total = 0.0;
    size_t first = piece_index(a);
    size_t last = piece_index(std::nextafter(b, a));
    for (size_t p = first; p <= last; ++p) {
        double plo = static_cast<double>(p) * step;
        double phi = plo + step;
        double lo = std::max(a, plo);
        double hi = std::min(b, phi);
        if (hi <= lo) continue;
        total += integrate_piece(p, lo, hi);
    }
    return total;
}

void DickmanTable::save(std::ostream& os) const {
    binio::put_u32(os, kTableMagic);
    binio::put_u32(os, kTableVersion);
    binio::put_f64(os, u_max_);
    binio::put_u32(os, static_cast<u32>(degree_));
    binio::put_u32(os, static_cast<u32>(intervals_));
    binio::put_u32(os, kSubdiv);
    binio::put_f64(os, residual_bound_);
    for (double c : coeffs_) binio::put_f64(os, c);
}

DickmanTable DickmanTable::load(std::istream& is) {
    if (binio::get_u32(is) != kTableMagic) throw std::runtime_error("rho cache: bad magic");
    if (binio::get_u32(is) != kTableVersion)
        throw std::runtime_error("rho cache: unsupported version");
    DickmanTable t;
    t.u_max_ = binio::get_f64(is);
    t.degree_ = static_cast<int>(binio::get_u32(is));
    t.intervals_ = binio::get_u32(is);
    u32 subdiv = binio::get_u32(is);
    t.residual_bound_ = binio::get_f64(is);
    if (t.u_max_ < 2.0 || t.degree_ < 10 || t.intervals_ == 0 || t.intervals_ > (1u << 20) ||
        subdiv != kSubdiv)
        throw std::runtime_error("rho cache: corrupt header");
    t.coeffs_.resize(t.intervals_ * kSubdiv * (static_cast<size_t>(t.degree_) + 1));
    for (double& c : t.coeffs_) c = binio::get_f64(is);
    if (!is) throw std::runtime_error("rho cache: truncated file");
    return t;
}

double xi(double u) {
    if (!(u > 1.0)) throw std::domain_error("xi: requires u > 1");
    // f(z) = e^z - 1 - u z has roots 0 and xi > log u; keep the iterate right
    // of log u where f is increasing
    const double lo0 = std::log(u);
    double z = (u > M_E) ? std::log(u) + std::log(std::log(u)) * (1.0 + 1.0 / std::log(u))
                         : 2.0 * (u - 1.0);
    double lo = lo0, hi = std::max(z, lo0) + 1.0;
    while (std::expm1(hi) - u * hi <= 0.0) {
        hi *= 2.0;
        if (hi > 1e6) throw tolerance_error("xi: bracketing failed");
    }
    z = std::clamp(z, lo, hi);
    for (int it = 0; it < 30; ++it) {
        double ez = std::exp(z);
        double f = ez - 1.0 - u * z;
        if (std::abs(f) <= 1e-12 * ez) return z;
        if (f > 0.0)
            hi = z;
        else
            lo = z;
        double step = f / (ez - u);
        double zn = z - step;
        if (!(zn > lo && zn < hi)) zn = 0.5 * (lo + hi);
        z = zn;
    }
    if (std::abs(std::expm1(z) - u * z) <= 1e-12 * std::exp(z)) return z;
    throw tolerance_error("xi: residual contract not met in 30 iterations");
}

double xi_expansion(double u) {
    if (!(u > M_E)) throw std::domain_error("xi_expansion: requires u > e");
    double l1 = std::log(u);
    double l2 = std::log(l1);
    return l1 + l2 + l2 / l1;
}

double rho_asymptotic(double u) {
    if (!(u > M_E)) throw std::domain_error("rho_asymptotic: requires u > e");
    double l1 = std::log(u);
    double l2 = std::log(l1);
    return std::exp(-u * (l1 + l2 - 1.0));
}

RhoShiftCheck rho_shift_check(const DickmanTable& table, double u, double v) {
    if (!(u > 2.0) || std::abs(v) > 0.5 * u)
        throw std::domain_error("rho_shift_check: need u > 2 and |v| <= u/2");
    double lhs = table.rho(u - v);
    double rhs = table.rho(u) * std::exp(v * xi(u));
    return RhoShiftCheck{lhs, rhs, lhs / rhs};
}

}  // namespace lpf
