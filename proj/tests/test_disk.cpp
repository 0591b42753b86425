#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <complex>

#include "helpers.hpp"
#include "parashift/disk.hpp"

using namespace parashift;

namespace {

ParabolicMap translation() {
    RealMeasure empty;
    return ParabolicMap(1.0, empty);
}

std::complex<double> random_disk_point(DeterministicRng& rng) {
    const double r = 0.95 * std::sqrt(rng.uniform());
    const double phi = rng.uniform(0.0, 2.0 * M_PI);
    return std::polar(r, phi);
}

}  // namespace

TEST_CASE("disk setting validation", "[disk]") {
    CHECK_THROWS_AS(DiskSetting({0.5, 0.0}, translation()), ValidationError);
    CHECK_THROWS_AS(DiskSetting({1.1, 0.0}, translation()), ValidationError);
    CHECK_NOTHROW(DiskSetting({0.0, 1.0}, translation()));
    CHECK_NOTHROW(DiskSetting(std::polar(1.0, 2.3), translation()));
}

TEST_CASE("cayley map basics", "[disk]") {
    const DiskSetting setting({1.0, 0.0}, translation());
    const HalfPlanePoint w = cayley(setting, {0.0, 0.0});
    CHECK(w.x == Catch::Approx(0.0).margin(1e-15));
    CHECK(w.y == Catch::Approx(1.0).epsilon(1e-15));
    CHECK_THROWS_AS(cayley(setting, {1.0, 0.0}), DomainError);
    CHECK_THROWS_AS(cayley(setting, {0.0, -1.2}), DomainError);
    CHECK_THROWS_AS(cayley_inverse(setting, {0.0, -1.0}), DomainError);
}

TEST_CASE("cayley round trips", "[disk]") {
    DeterministicRng rng(91);
    const DiskSetting settings[] = {
        DiskSetting({1.0, 0.0}, translation()),
        DiskSetting(std::polar(1.0, 0.8), translation()),
        DiskSetting({0.0, -1.0}, translation()),
    };
    for (const auto& setting : settings) {
        for (int trial = 0; trial < 300; ++trial) {
            const std::complex<double> z = random_disk_point(rng);
            const std::complex<double> back = cayley_inverse(setting, cayley(setting, z));
            CHECK(std::abs(back - z) <= 1e-12);

            const HalfPlanePoint w = testutil::random_point(rng);
            const HalfPlanePoint forward = cayley(setting, cayley_inverse(setting, w));
            CHECK(std::abs(forward.to_complex() - w.to_complex()) <= 1e-12 * std::abs(w.to_complex()));
        }
    }
}

TEST_CASE("gap formula equals the boundary distance", "[disk]") {
    // 2 / |S(z) + i| = |z - tau| exactly
    DeterministicRng rng(92);
    const DiskSetting setting(std::polar(1.0, 1.1), translation());
    for (int trial = 0; trial < 200; ++trial) {
        const std::complex<double> z = random_disk_point(rng);
        const double gap = disk_gap_from_point(cayley(setting, z));
        CHECK(gap == Catch::Approx(std::abs(z - setting.tau())).epsilon(1e-12));
    }
}

TEST_CASE("rotating tau and the base point together changes nothing", "[disk]") {
    const ParabolicMap map = translation();
    const DiskSetting base({1.0, 0.0}, map);
    const std::complex<double> rot = std::polar(1.0, 2.0);
    const DiskSetting rotated(rot, map);

    DeterministicRng rng(93);
    for (int trial = 0; trial < 20; ++trial) {
        const std::complex<double> z = random_disk_point(rng);
        for (long n : {0L, 3L, 17L}) {
            const double g1 = disk_orbit_gap(base, z, n);
            const double g2 = disk_orbit_gap(rotated, rot * z, n);
            CHECK(g1 == Catch::Approx(g2).epsilon(1e-12));
        }
    }
}

TEST_CASE("short pointwise disk iteration matches the gap formula", "[disk]") {
    // iterate g = S^{-1} o f o S directly on the disk for a few steps and
    // compare the boundary distance with the half-plane route
    RealMeasure origin;
    origin.add(Atom{0.0, 1.0});
    const ParabolicMap maps[] = {translation(), ParabolicMap(1.0, origin)};
    for (const auto& map : maps) {
        const DiskSetting setting(std::polar(1.0, 0.4), map);
        std::complex<double> z(0.2, -0.3);
        for (long n = 0; n <= 20; ++n) {
            CHECK(std::abs(z) < 1.0);
            const double direct = std::abs(z - setting.tau());
            const double via_halfplane = disk_orbit_gap(setting, {0.2, -0.3}, n);
            CHECK(direct == Catch::Approx(via_halfplane).epsilon(1e-9));
            z = cayley_inverse(setting, evaluate(map, cayley(setting, z)));
        }
    }
}

TEST_CASE("translation gap decay in closed form", "[disk]") {
    // S(0) = i walks right at unit speed: gap_n = 2 / sqrt(n^2 + 4)
    const DiskSetting setting({1.0, 0.0}, translation());
    const std::vector<double> gaps = disk_gap_series(setting, {0.0, 0.0}, 100);
    REQUIRE(gaps.size() == 101);
    for (long n = 0; n <= 100; ++n) {
        const double expected = 2.0 / std::sqrt(static_cast<double>(n) * n + 4.0);
        CHECK(gaps[static_cast<std::size_t>(n)] == Catch::Approx(expected).epsilon(1e-13));
    }

    CHECK(gaps[4] == Catch::Approx(2.0 / std::sqrt(20.0)).epsilon(1e-14));
    CHECK(disk_orbit_gap(setting, {0.0, 0.0}, 0) == Catch::Approx(1.0).epsilon(1e-14));

    // raw scaled gap at n = 10^4 is already within 0.1% of the limit 2
    const long n = 10000;
    const double gap = disk_orbit_gap(setting, {0.0, 0.0}, n);
    CHECK(std::fabs(n * gap - 2.0) / 2.0 < 1e-3);

    const LimitEstimate est = verify_rate(setting, {0.0, 0.0}, n);
    CHECK(est.value == Catch::Approx(2.0).epsilon(1e-6));
}

TEST_CASE("rate constant from the drift", "[disk]") {
    CHECK(rate_constant(DiskSetting({1.0, 0.0}, translation())) == Catch::Approx(2.0));

    RealMeasure tail;
    tail.add(PowerTail{TailSide::positive, 1.0, 1.0, 2.5});
    CHECK(rate_constant(DiskSetting({1.0, 0.0}, ParabolicMap(0.0, tail))) ==
          Catch::Approx(1.0));  // drift -2

    RealMeasure origin;
    origin.add(Atom{0.0, 1.0});
    CHECK_THROWS_AS(rate_constant(DiskSetting({1.0, 0.0}, ParabolicMap(0.0, origin))),
                    NotFiniteShift);
}

TEST_CASE("measured rate approaches the constant", "[disk]") {
    RealMeasure origin;
    origin.add(Atom{0.0, 1.0});
    const DiskSetting setting({1.0, 0.0}, ParabolicMap(1.0, origin));
    const LimitEstimate est = verify_rate(setting, {0.0, 0.0}, 30000);
    const double constant = rate_constant(setting);  // 2
    CHECK(std::fabs(est.value - constant) / constant < 0.02);
}
