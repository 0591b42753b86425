#pragma once

#include <cstdint>
#include <random>

#include "parashift/halfplane_map.hpp"
#include "parashift/measure.hpp"

namespace parashift {

// Seeded generator with an explicit uniform mapping, so identical seeds give
// identical maps on every platform.
class DeterministicRng {
public:
    explicit DeterministicRng(std::uint64_t seed) : engine_(seed) {}

    // Uniform in [0, 1).
    double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    int uniform_int(int lo, int hi) {
        const int span = hi - lo + 1;
        int v = lo + static_cast<int>(uniform() * span);
        return v > hi ? hi : v;
    }

private:
    std::mt19937_64 engine_;
};

struct RandomMapOptions {
    int max_atoms = 4;
    double position_range = 5.0;  // atom positions in [-range, range]
    double mass_max = 2.0;        // masses in (0, mass_max]
    double beta_range = 3.0;      // beta in [-range, range]
    double drift_min = 0.1;       // redraw until |drift| >= drift_min
};

// Random atom-only map with the drift bounded away from the tie line.
inline ParabolicMap random_atom_map(std::uint64_t seed, const RandomMapOptions& opts = {}) {
    DeterministicRng rng(seed);
    for (int attempt = 0; attempt < 10000; ++attempt) {
        const int n_atoms = rng.uniform_int(1, opts.max_atoms);
        RealMeasure mu;
        for (int i = 0; i < n_atoms; ++i) {
            const double t = rng.uniform(-opts.position_range, opts.position_range);
            const double mass = opts.mass_max * (1.0 - rng.uniform());  // (0, mass_max]
            mu.add(Atom{t, mass});
        }
        const double beta = rng.uniform(-opts.beta_range, opts.beta_range);
        ParabolicMap map(beta, std::move(mu));
        if (std::fabs(drift(map)) >= opts.drift_min) return map;
    }
    throw DomainError("random map generation failed to clear the drift filter");
}

}  // namespace parashift
