#pragma once

#include <cmath>
#include <complex>
#include <utility>

#include "parashift/classifier.hpp"
#include "parashift/errors.hpp"
#include "parashift/halfplane_map.hpp"
#include "parashift/orbit.hpp"

namespace parashift {

// A disk self-map g presented through its half-plane conjugate: tau is the
// Denjoy-Wolff point of g on the unit circle and `map` the conjugated
// half-plane map, g = S^{-1} o f o S with S(z) = i (tau + z) / (tau - z).
class DiskSetting {
public:
    DiskSetting(std::complex<double> tau, ParabolicMap map) : tau_(tau), map_(std::move(map)) {
        if (std::fabs(std::abs(tau_) - 1.0) > 1e-9)
            throw ValidationError("tau must lie on the unit circle");
    }

    std::complex<double> tau() const { return tau_; }
    const ParabolicMap& map() const { return map_; }

private:
    std::complex<double> tau_;
    ParabolicMap map_;
};

inline HalfPlanePoint cayley(const DiskSetting& setting, std::complex<double> z) {
    if (!(std::abs(z) < 1.0)) throw DomainError("cayley requires |z| < 1");
    const std::complex<double> i(0.0, 1.0);
    return HalfPlanePoint::from_complex(i * (setting.tau() + z) / (setting.tau() - z));
}

inline std::complex<double> cayley_inverse(const DiskSetting& setting, const HalfPlanePoint& w) {
    require_upper_half_plane(w);
    const std::complex<double> i(0.0, 1.0);
    const std::complex<double> wc = w.to_complex();
    return setting.tau() * (wc - i) / (wc + i);
}

// |g^n(z) - tau| via the half-plane orbit: g^n(z) - tau = -2 i tau / (f^n(S(z)) + i),
// so the gap is 2 / |f^n(S(z)) + i|. No disk-side iteration is performed.
inline double disk_gap_from_point(const HalfPlanePoint& w) {
    const double re = w.x;
    const double im = w.y + 1.0;
    return 2.0 / std::sqrt(re * re + im * im);
}

inline double disk_orbit_gap(const DiskSetting& setting, std::complex<double> z, long n,
                             const IterateOptions& opts = {}) {
    const Orbit orbit = iterate(setting.map(), cayley(setting, z), n, opts);
    return disk_gap_from_point(orbit.point(orbit.size() - 1));
}

// Gap sequence |g^n(z) - tau| for n = 0..horizon from a single half-plane orbit.
inline std::vector<double> disk_gap_series(const DiskSetting& setting, std::complex<double> z,
                                           long horizon, const IterateOptions& opts = {}) {
    const Orbit orbit = iterate(setting.map(), cayley(setting, z), horizon, opts);
    std::vector<double> gaps(orbit.size());
    for (std::size_t n = 0; n < orbit.size(); ++n) gaps[n] = disk_gap_from_point(orbit.point(n));
    return gaps;
}

// The limit of n |g^n - tau| for finite-shift maps: C = 2 / |drift|.
inline double rate_constant(const DiskSetting& setting) {
    if (!classify_shift(setting.map()).finite_shift())
        throw NotFiniteShift("rate constant requires a finite-shift map");
    return 2.0 / std::fabs(drift(setting.map()));
}

// Extrapolated limit of n |g^n(z) - tau|, to be compared with rate_constant.
inline LimitEstimate verify_rate(const DiskSetting& setting, std::complex<double> z, long horizon,
                                 double aitken_tol = 1e-6) {
    const std::vector<double> gaps = disk_gap_series(setting, z, horizon);
    std::vector<double> seq;
    seq.reserve(gaps.size() > 0 ? gaps.size() - 1 : 0);
    for (std::size_t n = 1; n < gaps.size(); ++n)
        seq.push_back(static_cast<double>(n) * gaps[n]);
    return aitken_limit(seq, aitken_tol);
}

}  // namespace parashift
