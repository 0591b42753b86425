#pragma once

#include <cmath>
#include <complex>
#include <utility>

#include "parashift/errors.hpp"
#include "parashift/measure.hpp"

namespace parashift {

// Point of the upper half-plane, z = x + iy with y > 0.
struct HalfPlanePoint {
    double x = 0.0;
    double y = 1.0;

    std::complex<double> to_complex() const { return {x, y}; }
    static HalfPlanePoint from_complex(std::complex<double> z) { return {z.real(), z.imag()}; }
};

inline void require_upper_half_plane(const HalfPlanePoint& z) {
    if (!(z.y > 0.0) || !std::isfinite(z.x) || !std::isfinite(z.y))
        throw DomainError("point must lie in the upper half-plane (finite, Im z > 0)");
}

// Parabolic self-map of the upper half-plane with Denjoy-Wolff point at
// infinity, in Herglotz form:
//
//   f(z) = z + beta + int (1 + t z) / (t - z) dmu(t),
//
// with beta real and mu a finite positive measure, not both null.
class ParabolicMap {
public:
    ParabolicMap(double beta, RealMeasure mu) : beta_(beta), mu_(std::move(mu)) {
        if (!std::isfinite(beta_)) throw ValidationError("beta must be finite");
        if (beta_ == 0.0 && mu_.empty())
            throw ValidationError(
                "beta = 0 with an empty measure is the identity, not a parabolic map");
    }

    double beta() const { return beta_; }
    const RealMeasure& mu() const { return mu_; }

private:
    double beta_;
    RealMeasure mu_;
};

inline std::complex<double> herglotz_kernel(double t, std::complex<double> z) {
    return (1.0 + t * z) / (t - z);
}

// Quadrature setup for one evaluation point: panels split at Re z (the
// kernel's pole sits at distance Im z above it) and the tail far zone pushed
// past |z|.
inline KernelIntegrationOptions evaluation_options(const HalfPlanePoint& z,
                                                   const QuadratureOptions& quad) {
    KernelIntegrationOptions opts;
    opts.quad = quad;
    opts.split_points = {z.x};
    opts.scale_radius = std::fabs(z.x) + z.y;
    return opts;
}

inline HalfPlanePoint evaluate(const ParabolicMap& map, const HalfPlanePoint& z,
                               const QuadratureOptions& quad = {}) {
    require_upper_half_plane(z);
    const std::complex<double> zc = z.to_complex();
    const auto opts = evaluation_options(z, quad);
    const std::complex<double> w =
        zc + map.beta() + integrate_kernel(map.mu(), [&](double t) { return herglotz_kernel(t, zc); }, opts);
    if (!(w.imag() > 0.0))
        throw NumericalBreakdown("evaluation left the upper half-plane");
    return HalfPlanePoint::from_complex(w);
}

// Im f(z) - Im z as a direct integral: Im z * int (1+t^2) / |t - z|^2 dmu(t).
inline double imaginary_gain(const ParabolicMap& map, const HalfPlanePoint& z,
                             const QuadratureOptions& quad = {}) {
    require_upper_half_plane(z);
    const auto opts = evaluation_options(z, quad);
    auto kernel = [&](double t) -> std::complex<double> {
        const double dx = t - z.x;
        return (1.0 + t * t) / (dx * dx + z.y * z.y);
    };
    return z.y * integrate_kernel(map.mu(), kernel, opts).real();
}

// Asymptotic horizontal speed beta - int t dmu(t). Requires int |t| dmu < inf.
inline double drift(const ParabolicMap& map) {
    return map.beta() - moment(map.mu(), MomentKind::first).value();
}

}  // namespace parashift
