#include "lpf/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <queue>

#include "lpf/ksum.hpp"

namespace lpf {

namespace {

struct GaussRule {
    std::vector<double> nodes;    // on (-1, 1)
    std::vector<double> weights;  // sum to 2
};

// Nodes are the roots of the Legendre polynomial P_n, found by Newton from
// the Chebyshev-like initial guess; weights w = 2 / ((1-x^2) P_n'(x)^2).
GaussRule make_gauss(int n) {
    GaussRule r;
    r.nodes.resize(n);
    r.weights.resize(n);
    for (int i = 0; i < n; ++i) {
        double x = std::cos(M_PI * (i + 0.75) / (n + 0.5));
        double dp = 0.0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0, p1 = x;
            for (int k = 2; k <= n; ++k) {
                double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            dp = n * (x * p1 - p0) / (x * x - 1.0);
            double dx = p1 / dp;
            x -= dx;
            if (std::abs(dx) < 1e-15) {
                // one more sweep to settle, then recompute dp
                p0 = 1.0;
                p1 = x;
                for (int k = 2; k <= n; ++k) {
                    double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                    p0 = p1;
                    p1 = p2;
                }
                dp = n * (x * p1 - p0) / (x * x - 1.0);
                break;
            }
        }
        r.nodes[n - 1 - i] = x;  // ascending
        r.weights[n - 1 - i] = 2.0 / ((1.0 - x * x) * dp * dp);
    }
    return r;
}

const GaussRule& rule_low() {
    static const GaussRule r = make_gauss(7);
    return r;
}

const GaussRule& rule_high() {
    static const GaussRule r = make_gauss(15);
    return r;
}

struct Panel {
    double a, b;
    double value;  // high-order estimate
    double err;    // |high - low|
};

struct PanelWorse {
    // strict weak order; ties broken by interval position for determinism
    bool operator()(const Panel& x, const Panel& y) const {
        if (x.err != y.err) return x.err < y.err;
        if (x.a != y.a) return x.a > y.a;
        return x.b > y.b;
    }
};

}  // namespace

QuadOutcome integrate(const std::function<double(double)>& f,
                      std::span<const double> breakpoints, const QuadOptions& opt) {
    if (breakpoints.size() < 2) throw std::invalid_argument("integrate: need >= 2 breakpoints");
    const GaussRule& lo = rule_low();
    const GaussRule& hi = rule_high();

    long evals = 0;
    auto eval_panel = [&](double a, double b) -> Panel {
        const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
        double vh = 0.0, vl = 0.0;
        for (size_t i = 0; i < hi.nodes.size(); ++i)
            vh += hi.weights[i] * f(mid + half * hi.nodes[i]);
        for (size_t i = 0; i < lo.nodes.size(); ++i)
            vl += lo.weights[i] * f(mid + half * lo.nodes[i]);
        evals += static_cast<long>(hi.nodes.size() + lo.nodes.size());
        vh *= half;
        vl *= half;
        return Panel{a, b, vh, std::abs(vh - vl)};
    };

    std::priority_queue<Panel, std::vector<Panel>, PanelWorse> queue;
    std::vector<Panel> done;
    double total = 0.0, total_err = 0.0;
    for (size_t i = 0; i + 1 < breakpoints.size(); ++i) {
        if (!(breakpoints[i] < breakpoints[i + 1]))
            throw std::invalid_argument("integrate: breakpoints must be strictly increasing");
        Panel p = eval_panel(breakpoints[i], breakpoints[i + 1]);
        total += p.value;
        total_err += p.err;
        queue.push(p);
    }

    auto tolerance = [&](double est) {
        return std::max(opt.abs_tol, opt.rel_tol * std::abs(est));
    };

    while (total_err > tolerance(total) && !queue.empty()) {
        if (evals >= opt.max_evals)
            throw budget_error("integrate: evaluation ceiling reached before tolerance");
        Panel worst = queue.top();
        queue.pop();
        if (worst.err <= 0.0 || worst.b - worst.a < 1e-15 * (std::abs(worst.a) + 1.0)) {
            done.push_back(worst);  // cannot usefully split further
            continue;
        }
        double m = 0.5 * (worst.a + worst.b);
        Panel left = eval_panel(worst.a, m);
        Panel right = eval_panel(m, worst.b);
        total += left.value + right.value - worst.value;
        total_err += left.err + right.err - worst.err;
        queue.push(left);
        queue.push(right);
    }

    while (!queue.empty()) {
        done.push_back(queue.top());
        queue.pop();
    }
    std::sort(done.begin(), done.end(),
              [](const Panel& x, const Panel& y) { return x.a < y.a; });
    KahanSum sum, err;
    for (const Panel& p : done) {
        sum.add(p.value);
        err.add(p.err);
    }
    double final_err = err.value();
    if (final_err > tolerance(sum.value()) * 1.0001)
        throw tolerance_error("integrate: requested tolerance not reached");
    return QuadOutcome{sum.value(), final_err, evals};
}

}  // namespace lpf
