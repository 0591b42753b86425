#pragma once

#include <cmath>
#include <complex>
#include <limits>
#include <map>
#include <mutex>
#include <vector>

#include "parashift/errors.hpp"

namespace parashift {

struct QuadratureOptions {
    int order = 32;        // Gauss-Legendre points per panel
    double rel_tol = 1e-12;
    int max_depth = 40;    // bisection levels before giving up
};

struct GaussLegendreRule {
    std::vector<double> nodes;    // on (-1, 1), symmetric
    std::vector<double> weights;
};

// Nodes and weights by Newton iteration on the Legendre recurrence.
inline GaussLegendreRule make_gauss_legendre_rule(int order) {
    if (order < 2) throw DomainError("Gauss-Legendre order must be >= 2");
    GaussLegendreRule rule;
    rule.nodes.resize(order);
    rule.weights.resize(order);
    const int half = (order + 1) / 2;
    for (int i = 0; i < half; ++i) {
        double z = std::cos(M_PI * (i + 0.75) / (order + 0.5));
        double pp = 0.0;
        for (int iter = 0; iter < 100; ++iter) {
            double p1 = 1.0, p2 = 0.0;
            for (int j = 0; j < order; ++j) {
                const double p3 = p2;
                p2 = p1;
                p1 = ((2.0 * j + 1.0) * z * p2 - j * p3) / (j + 1);
            }
            pp = order * (z * p1 - p2) / (z * z - 1.0);
            const double dz = p1 / pp;
            z -= dz;
            if (std::fabs(dz) < 1e-15) break;
        }
        rule.nodes[i] = -z;
        rule.nodes[order - 1 - i] = z;
        rule.weights[i] = 2.0 / ((1.0 - z * z) * pp * pp);
        rule.weights[order - 1 - i] = rule.weights[i];
    }
    return rule;
}

inline const GaussLegendreRule& gauss_legendre_rule(int order) {
    static std::mutex mutex;
    static std::map<int, GaussLegendreRule> cache;
    std::lock_guard<std::mutex> lock(mutex);
    auto it = cache.find(order);
    if (it == cache.end()) it = cache.emplace(order, make_gauss_legendre_rule(order)).first;
    return it->second;
}

template <class F>
std::complex<double> gauss_panel(F&& f, double a, double b, const GaussLegendreRule& rule) {
    const double mid = 0.5 * (a + b);
    const double halfwidth = 0.5 * (b - a);
    std::complex<double> sum = 0.0;
    for (std::size_t i = 0; i < rule.nodes.size(); ++i)
        sum += rule.weights[i] * f(mid + halfwidth * rule.nodes[i]);
    return halfwidth * sum;
}

namespace detail {

struct PanelEstimate {
    std::complex<double> integral;
    double l1 = 0.0;  // sum of |w_i f_i| * halfwidth; the roundoff scale of the sum
};

template <class F>
PanelEstimate gauss_panel_l1(F& f, double a, double b, const GaussLegendreRule& rule) {
    const double mid = 0.5 * (a + b);
    const double halfwidth = 0.5 * (b - a);
    PanelEstimate e;
    for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
        const std::complex<double> term = rule.weights[i] * f(mid + halfwidth * rule.nodes[i]);
        e.integral += term;
        e.l1 += std::abs(term);
    }
    e.integral *= halfwidth;
    e.l1 *= halfwidth;
    return e;
}

template <class F>
std::complex<double> refine_panel(F& f, double a, double b, std::complex<double> whole,
                                  double tol_per_length, int depth, const GaussLegendreRule& rule,
                                  const QuadratureOptions& opts) {
    const double mid = 0.5 * (a + b);
    const PanelEstimate left = gauss_panel_l1(f, a, mid, rule);
    const PanelEstimate right = gauss_panel_l1(f, mid, b, rule);
    const std::complex<double> refined = left.integral + right.integral;
    // The second term is the roundoff floor of the panel sums themselves; when
    // a requested tolerance dips below it, refinement would otherwise recurse
    // forever (both sides of the plain test scale linearly with b - a).
    const double noise_floor =
        16.0 * std::numeric_limits<double>::epsilon() * (left.l1 + right.l1);
    if (std::abs(whole - refined) <= tol_per_length * (b - a) + noise_floor) return refined;
    if (depth >= opts.max_depth)
        throw QuadratureFailure("adaptive refinement hit max depth without stabilizing");
    return refine_panel(f, a, mid, left.integral, tol_per_length, depth + 1, rule, opts) +
           refine_panel(f, mid, b, right.integral, tol_per_length, depth + 1, rule, opts);
}

}  // namespace detail

// Adaptive integral of f over the consecutive panels [edges[0], edges[1]],
// [edges[1], edges[2]], ... The tolerance is relative to the L1 size of the
// initial panel estimates, so cancellation between panels does not trigger
// runaway refinement.
template <class F>
std::complex<double> integrate_adaptive(F&& f, const std::vector<double>& edges,
                                        const QuadratureOptions& opts = {}) {
    if (edges.size() < 2) return 0.0;
    const GaussLegendreRule& rule = gauss_legendre_rule(opts.order);
    std::vector<std::complex<double>> first_pass(edges.size() - 1);
    double scale = 0.0;
    double total_length = 0.0;
    for (std::size_t i = 0; i + 1 < edges.size(); ++i) {
        if (!(edges[i] < edges[i + 1]))
            throw DomainError("integration panel edges must be strictly increasing");
        first_pass[i] = gauss_panel(f, edges[i], edges[i + 1], rule);
        scale += std::abs(first_pass[i]);
        total_length += edges[i + 1] - edges[i];
    }
    const double tol_per_length = std::max(opts.rel_tol * scale, 1e-300) / total_length;
    std::complex<double> sum = 0.0;
    for (std::size_t i = 0; i + 1 < edges.size(); ++i)
        sum += detail::refine_panel(f, edges[i], edges[i + 1], first_pass[i], tol_per_length, 0,
                                    rule, opts);
    return sum;
}

template <class F>
std::complex<double> integrate_adaptive(F&& f, double a, double b,
                                        const QuadratureOptions& opts = {}) {
    return integrate_adaptive(std::forward<F>(f), std::vector<double>{a, b}, opts);
}

}  // namespace parashift
