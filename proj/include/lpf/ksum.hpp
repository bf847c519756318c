#pragma once

#include <cmath>

namespace lpf {

// Neumaier-compensated accumulator. Partial sums from disjoint segments are
// merged in a fixed order to keep results deterministic under parallel runs.
struct KahanSum {
    double s = 0.0;
    double c = 0.0;

    void add(double x) {
        double t = s + x;
        if (std::abs(s) >= std::abs(x))
            c += (s - t) + x;
        else
            c += (x - t) + s;
        s = t;
    }

    void merge(const KahanSum& o) {
        add(o.s);
        add(o.c);
    }

    double value() const { return s + c; }
};

}  // namespace lpf
