#pragma once

// Shared test fixtures: deterministic random measures / points and a slow
// high-precision reference for atom-only maps.

#include <complex>
#include <vector>

#include "parashift/halfplane_map.hpp"
#include "parashift/measure.hpp"
#include "parashift/random_maps.hpp"

namespace testutil {

using namespace parashift;

inline HalfPlanePoint random_point(DeterministicRng& rng) {
    return {rng.uniform(-5.0, 5.0), 0.05 + 5.0 * rng.uniform()};
}

// Mixed measure with at least one component; tail exponents stay clear of the
// p = 1 mass boundary.
inline RealMeasure random_mixed_measure(DeterministicRng& rng) {
    RealMeasure m;
    const int n_atoms = rng.uniform_int(0, 3);
    for (int i = 0; i < n_atoms; ++i)
        m.add(Atom{rng.uniform(-4.0, 4.0), 0.05 + rng.uniform(0.0, 2.0)});
    const int n_pieces = rng.uniform_int(0, 2);
    for (int i = 0; i < n_pieces; ++i) {
        const double a = rng.uniform(-4.0, 3.0);
        m.add(HistogramPiece{a, a + 0.1 + rng.uniform(0.0, 3.0), 0.05 + rng.uniform(0.0, 1.5)});
    }
    const int n_tails = rng.uniform_int(0, 2);
    for (int i = 0; i < n_tails; ++i) {
        m.add(PowerTail{rng.uniform() < 0.5 ? TailSide::positive : TailSide::negative,
                        0.5 + rng.uniform(0.0, 2.5), 0.05 + rng.uniform(0.0, 2.0),
                        1.1 + rng.uniform(0.0, 3.0)});
    }
    if (m.empty()) m.add(Atom{rng.uniform(-4.0, 4.0), 0.5 + rng.uniform()});
    return m;
}

// Direct Herglotz sum in extended precision; only valid for atom-only maps.
inline std::complex<double> atom_map_reference(const ParabolicMap& map, std::complex<double> z) {
    const std::complex<long double> zl(z.real(), z.imag());
    std::complex<long double> acc = zl + static_cast<long double>(map.beta());
    for (const Atom& a : map.mu().atoms()) {
        const long double t = a.t;
        acc += static_cast<long double>(a.mass) * (1.0L + t * zl) / (t - zl);
    }
    return {static_cast<double>(acc.real()), static_cast<double>(acc.imag())};
}

}  // namespace testutil
