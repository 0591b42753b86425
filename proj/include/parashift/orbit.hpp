#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <vector>

#include "parashift/errors.hpp"
#include "parashift/halfplane_map.hpp"

namespace parashift {

// Forward orbit z_0, ..., z_N stored as coordinate series.
struct Orbit {
    std::vector<double> x;
    std::vector<double> y;
    bool y_cap_hit = false;  // iteration stopped early because y exceeded the cap

    std::size_t size() const { return x.size(); }
    std::size_t steps() const { return x.empty() ? 0 : x.size() - 1; }
    HalfPlanePoint point(std::size_t n) const { return {x[n], y[n]}; }
};

struct IterateOptions {
    QuadratureOptions quad;
    double y_cap = 0.0;              // 0 disables the cap
    double im_drop_rel_tol = 1e-12;  // allowed relative dip of y before declaring breakdown
    double overflow_limit = 1e154;
};

inline Orbit iterate(const ParabolicMap& map, const HalfPlanePoint& z0, long n_steps,
                     const IterateOptions& opts = {}) {
    require_upper_half_plane(z0);
    if (n_steps < 0) throw DomainError("n_steps must be >= 0");
    Orbit orbit;
    orbit.x.reserve(static_cast<std::size_t>(n_steps) + 1);
    orbit.y.reserve(static_cast<std::size_t>(n_steps) + 1);
    orbit.x.push_back(z0.x);
    orbit.y.push_back(z0.y);
    HalfPlanePoint z = z0;
    for (long n = 0; n < n_steps; ++n) {
        const HalfPlanePoint next = evaluate(map, z, opts.quad);
        if (!std::isfinite(next.x) || !std::isfinite(next.y) ||
            std::fabs(next.x) > opts.overflow_limit || next.y > opts.overflow_limit)
            throw Overflow("orbit left the representable range");
        if (next.y < z.y * (1.0 - opts.im_drop_rel_tol))
            throw NumericalBreakdown("imaginary part decreased along the orbit");
        orbit.x.push_back(next.x);
        orbit.y.push_back(next.y);
        z = next;
        if (opts.y_cap > 0.0 && next.y > opts.y_cap) {
            orbit.y_cap_hit = true;
            break;
        }
    }
    return orbit;
}

// |z - w| / |z - conj(w)|, the pseudo-hyperbolic distance on the half-plane.
inline double pseudo_hyperbolic_distance(const HalfPlanePoint& z, const HalfPlanePoint& w) {
    const double dx = z.x - w.x;
    const double dy = z.y - w.y;
    const double sy = z.y + w.y;
    return std::sqrt((dx * dx + dy * dy) / (dx * dx + sy * sy));
}

// Extrapolated limit of a numeric sequence.
struct LimitEstimate {
    double value = 0.0;
    double error_indicator = std::numeric_limits<double>::infinity();
    bool converged = false;
};

// A limit is treated as zero when the extrapolated value is within 10x its
// error indicator.
inline bool indicates_zero_limit(const LimitEstimate& e) {
    return std::fabs(e.value) <= 10.0 * e.error_indicator;
}

// Aitken delta-squared extrapolation along the sequence; the last accelerated
// value wins. The error indicator combines the spread of the accelerated tail
// with the distance to the raw tail, which stays honest on algebraically
// convergent sequences.
inline LimitEstimate aitken_limit(const std::vector<double>& seq, double tol = 1e-6) {
    LimitEstimate est;
    if (seq.empty()) return est;
    if (seq.size() < 3) {
        est.value = seq.back();
        if (seq.size() == 2) {
            est.error_indicator = std::fabs(seq[1] - seq[0]);
            est.converged = est.error_indicator <= tol;
        }
        return est;
    }
    double last_accel = 0.0, prev_accel = 0.0;
    bool have_last = false, have_prev = false;
    for (std::size_t i = 0; i + 2 < seq.size(); ++i) {
        const double d1 = seq[i + 1] - seq[i];
        const double d2 = seq[i + 2] - seq[i + 1];
        const double denom = d2 - d1;
        if (std::fabs(denom) <= 1e-14 * (std::fabs(d1) + std::fabs(d2)) || denom == 0.0)
            continue;  // denominator underflow: skip this triple
        const double accel = seq[i + 2] - d2 * d2 / denom;
        prev_accel = last_accel;
        have_prev = have_last;
        last_accel = accel;
        have_last = true;
    }
    if (!have_last) {
        // Degenerate (e.g. constant) sequence: fall back to the raw tail.
        est.value = seq.back();
        est.error_indicator = std::fabs(seq[seq.size() - 1] - seq[seq.size() - 2]);
        est.converged = est.error_indicator <= tol;
        return est;
    }
    est.value = last_accel;
    const double spread = have_prev ? std::fabs(last_accel - prev_accel)
                                    : std::numeric_limits<double>::infinity();
    double err = std::fabs(last_accel - seq.back());
    if (have_prev) err = std::max(err, spread);
    est.error_indicator = err;
    // Convergence tracks the accelerated tail settling; the error indicator
    // stays wide (distance to the raw tail) so algebraically convergent
    // sequences are not overtrusted.
    est.converged = spread <= tol;
    return est;
}

// Limit quantities read off one orbit: the Pommerenke quotient b, the height
// limit Y, the horizontal step limit, the hyperbolic step, and the running
// sums of (y_{k+1} - y_k) / y_k.
struct OrbitDiagnostics {
    LimitEstimate b_hat;      // lim (x_{n+1} - x_n) / y_n
    LimitEstimate Y_hat;      // lim y_n
    LimitEstimate delta_hat;  // lim x_{n+1} - x_n
    LimitEstimate step_hat;   // lim rho(z_{n+1}, z_n)
    std::vector<double> series_partial_sums;
};

struct DiagnosticsOptions {
    std::size_t min_points = 1000;
    double aitken_tol = 1e-6;
};

inline OrbitDiagnostics pommerenke_quantities(const Orbit& orbit,
                                              const DiagnosticsOptions& opts = {}) {
    if (orbit.size() < opts.min_points)
        throw InsufficientOrbit("orbit too short for limit extraction");
    const std::size_t n = orbit.steps();
    std::vector<double> b_seq(n), dx(n), step(n), series(n);
    double running = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
        dx[k] = orbit.x[k + 1] - orbit.x[k];
        b_seq[k] = dx[k] / orbit.y[k];
        step[k] = pseudo_hyperbolic_distance(orbit.point(k + 1), orbit.point(k));
        running += (orbit.y[k + 1] - orbit.y[k]) / orbit.y[k];
        series[k] = running;
    }
    OrbitDiagnostics diag;
    diag.b_hat = aitken_limit(b_seq, opts.aitken_tol);
    diag.Y_hat = aitken_limit(orbit.y, opts.aitken_tol);
    diag.delta_hat = aitken_limit(dx, opts.aitken_tol);
    diag.step_hat = aitken_limit(step, opts.aitken_tol);
    diag.series_partial_sums = std::move(series);
    return diag;
}

enum class ShiftOracleKind { BoundedShift, UnboundedShift, Inconclusive };

struct ShiftOracleResult {
    ShiftOracleKind kind = ShiftOracleKind::Inconclusive;
    double Y = 0.0;             // height limit estimate, valid for BoundedShift
    double gamma_hat = 0.0;     // fitted power-law exponent of the series terms
    double tail_estimate = 0.0; // extrapolated remainder of the series
};

struct ShiftOracleOptions {
    long n_max = 100000;
    double tolerance = 1e-2;        // acceptable extrapolated series remainder
    double divergence_factor = 1e6; // y cap at divergence_factor * y_0
    QuadratureOptions quad;
};

namespace detail {

inline double median_of(std::vector<double> v) {
    if (v.empty()) return 0.0;
    const std::size_t mid = v.size() / 2;
    std::nth_element(v.begin(), v.begin() + mid, v.end());
    return v[mid];
}

}  // namespace detail

// Series-based boundedness verdict on an already computed orbit. Boundedness
// of y_n is equivalent to summability of s_n = (y_{n+1} - y_n) / y_n, so the
// verdict comes from the decay profile of s_n over the tail window: a clearly
// summable profile with a small extrapolated remainder is BoundedShift, a
// harmonic-or-slower profile is UnboundedShift, anything in between stays
// Inconclusive.
inline ShiftOracleResult shift_verdict_from_orbit(const Orbit& orbit,
                                                  const ShiftOracleOptions& opts = {}) {
    ShiftOracleResult result;
    if (orbit.y_cap_hit) {
        result.kind = ShiftOracleKind::UnboundedShift;
        result.tail_estimate = std::numeric_limits<double>::infinity();
        return result;
    }
    const std::size_t n = orbit.steps();
    if (n < 64) return result;  // too short for a profile fit

    std::vector<double> s(n);
    for (std::size_t k = 0; k < n; ++k) s[k] = (orbit.y[k + 1] - orbit.y[k]) / orbit.y[k];

    const std::size_t w0 = n / 2;
    double smax = 0.0;
    for (std::size_t k = w0; k < n; ++k) smax = std::max(smax, s[k]);
    if (smax <= 1e-14) {
        // Height gain below noise: y has numerically stopped moving.
        result.kind = ShiftOracleKind::BoundedShift;
        result.Y = aitken_limit(orbit.y).value;
        result.gamma_hat = std::numeric_limits<double>::infinity();
        return result;
    }

    // Log-log least-squares fit of s_k ~ C * k^(-gamma) over the tail window.
    const std::size_t stride = std::max<std::size_t>(1, (n - w0) / 512);
    double sum_lx = 0.0, sum_ly = 0.0, sum_lxx = 0.0, sum_lxy = 0.0;
    std::size_t count = 0;
    std::vector<double> k_times_s;
    for (std::size_t k = w0; k < n; k += stride) {
        if (!(s[k] > 0.0)) continue;
        const double lx = std::log(static_cast<double>(k));
        const double ly = std::log(s[k]);
        sum_lx += lx;
        sum_ly += ly;
        sum_lxx += lx * lx;
        sum_lxy += lx * ly;
        k_times_s.push_back(static_cast<double>(k) * s[k]);
        ++count;
    }
    if (count < 8) return result;
    const double denom = count * sum_lxx - sum_lx * sum_lx;
    if (denom <= 0.0) return result;
    result.gamma_hat = -(count * sum_lxy - sum_lx * sum_ly) / denom;

    // Geometric remainder bound from the window's endpoint ratio.
    std::size_t k_first = w0, k_last = n - 1;
    while (k_first < n && !(s[k_first] > 0.0)) ++k_first;
    while (k_last > k_first && !(s[k_last] > 0.0)) --k_last;
    double tail_geo = std::numeric_limits<double>::infinity();
    if (k_last > k_first) {
        const double ratio =
            std::pow(s[k_last] / s[k_first], 1.0 / static_cast<double>(k_last - k_first));
        if (ratio < 1.0) tail_geo = s[k_last] * ratio / (1.0 - ratio);
    }
    result.tail_estimate = tail_geo;

    if (result.gamma_hat <= 1.2) {
        if (detail::median_of(std::move(k_times_s)) >= 1e-8)
            result.kind = ShiftOracleKind::UnboundedShift;
        return result;
    }
    if (tail_geo <= opts.tolerance) {
        result.kind = ShiftOracleKind::BoundedShift;
        result.Y = aitken_limit(orbit.y).value;
    }
    return result;
}

inline ShiftOracleResult shift_oracle(const ParabolicMap& map, const HalfPlanePoint& z0,
                                      long n_max = 100000, double tolerance = 1e-2) {
    ShiftOracleOptions opts;
    opts.n_max = n_max;
    opts.tolerance = tolerance;
    IterateOptions iter;
    iter.quad = opts.quad;
    iter.y_cap = opts.divergence_factor * z0.y;
    const Orbit orbit = iterate(map, z0, opts.n_max, iter);
    return shift_verdict_from_orbit(orbit, opts);
}

// Extrapolated limit of Re(z_n)/n, the orbit's horizontal speed.
inline LimitEstimate drift_limit(const Orbit& orbit, const DiagnosticsOptions& opts = {}) {
    if (orbit.size() < opts.min_points)
        throw InsufficientOrbit("orbit too short for drift estimation");
    std::vector<double> seq(orbit.steps());
    for (std::size_t k = 1; k <= orbit.steps(); ++k)
        seq[k - 1] = orbit.x[k] / static_cast<double>(k);
    return aitken_limit(seq, opts.aitken_tol);
}

// |Im z_N| / N, reported alongside drift_limit; tends to zero exactly when
// the height stays bounded.
inline double drift_imaginary_residual(const Orbit& orbit) {
    if (orbit.steps() == 0) return 0.0;
    return std::fabs(orbit.y.back()) / static_cast<double>(orbit.steps());
}

}  // namespace parashift
