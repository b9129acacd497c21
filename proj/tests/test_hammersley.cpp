#include <cmath>
#include <sstream>
#include <vector>

#include "doctest.h"

#include "hlab/errors.hpp"
#include "hlab/hammersley.hpp"
#include "hlab/poisson_plane.hpp"
#include "hlab/rng.hpp"

using namespace hlab;

namespace {

ParticleConfig unit_density_particles(std::uint64_t seed, int count) {
    SplitMix64 rng(seed);
    ParticleConfig z;
    z.i_min = 0;
    double pos = 0.0;
    for (int i = 0; i < count; ++i) {
        pos += rng.exponential(1.0);
        z.positions.push_back(pos);
    }
    return z;
}

std::vector<std::int64_t> all_labels(const ParticleConfig& z) {
    std::vector<std::int64_t> out;
    for (std::int64_t k = z.i_min; k <= z.i_max(); ++k) out.push_back(k);
    return out;
}

} // namespace

TEST_CASE("particle config validation and access") {
    ParticleConfig z;
    z.i_min = 3;
    z.positions = {1.0, 2.5, 2.5};
    z.validate(); // nondecreasing is allowed
    CHECK(z.i_max() == 5);
    CHECK(z.pos(4) == 2.5);
    CHECK(tagged_position(z, 3) == 1.0);
    CHECK_THROWS_AS(z.pos(2), domain_violation);
    CHECK_THROWS_AS(z.pos(6), domain_violation);

    ParticleConfig bad;
    bad.positions = {2.0, 1.0};
    CHECK_THROWS_AS(bad.validate(), domain_violation);
}

TEST_CASE("window exponent and width scaling") {
    CHECK(window_exponent(1.0, 0.25, 0.05) == doctest::Approx(0.75).epsilon(1e-15));
    // the transversal-fluctuation term dominates once beta is large
    CHECK(window_exponent(1.0, 0.5, 0.05) ==
          doctest::Approx(2.0 / 3.0 + 0.05).epsilon(1e-12));
    WindowPolicy p;
    p.scale_n = 256.0;
    // width = b * scale^xi, rounded up
    CHECK(p.initial_width() ==
          static_cast<std::int64_t>(std::ceil(p.b * std::pow(256.0, p.xi()))));
}

TEST_CASE("event-driven and variational constructions agree bitwise") {
    for (int c = 0; c < 20; ++c) {
        auto z0 = unit_density_particles(100 + c, 80);
        PointStore store(200 + c);
        double t = (c % 3 == 0) ? 0.5 : (c % 3 == 1 ? 2.0 : 7.0);

        auto ed = evolve_event_driven(z0, store, t);
        auto labels = all_labels(z0);
        auto vr = evolve_variational(z0, store, t, labels, WindowPolicy::exhaustive());
        auto ref = evolve_variational_reference(z0, store, t, labels, WindowPolicy::exhaustive());

        REQUIRE(vr.positions.size() == labels.size());
        REQUIRE(ref.positions.size() == labels.size());
        for (std::size_t j = 0; j < labels.size(); ++j) {
            CHECK(vr.positions[j] == ed.pos(labels[j]));
            CHECK(ref.positions[j] == ed.pos(labels[j]));
            CHECK(vr.minimizers[j] == ref.minimizers[j]);
        }
    }
}

TEST_CASE("windowed minimization reproduces the exhaustive answer") {
    auto z0 = unit_density_particles(42, 150);
    PointStore store(43);
    const double t = 3.0;
    std::vector<std::int64_t> labels{60, 75, 90, 120, 149};

    auto full = evolve_variational(z0, store, t, labels, WindowPolicy::exhaustive());
    WindowPolicy windowed;
    windowed.scale_n = 150.0;
    windowed.center_offset = static_cast<std::int64_t>(2.0 * t);
    windowed.edge_rule = EdgeRule::approximation_guard;
    auto win = evolve_variational(z0, store, t, labels, windowed);
    for (std::size_t j = 0; j < labels.size(); ++j) {
        CHECK(win.positions[j] == full.positions[j]);
        CHECK(win.minimizers[j] == full.minimizers[j]);
    }
}

TEST_CASE("evolution composes in time") {
    auto z0 = unit_density_particles(7, 60);
    PointStore store(8);
    auto direct = evolve_event_driven(z0, store, 5.0);
    auto half = evolve_event_driven(z0, store, 2.25);
    auto resumed = evolve_event_driven(half, store, 5.0);
    CHECK(resumed.time_stamp == 5.0);
    for (std::int64_t k = z0.i_min; k <= z0.i_max(); ++k)
        CHECK(resumed.pos(k) == direct.pos(k));
}

TEST_CASE("particles only move left and never cross") {
    auto z0 = unit_density_particles(21, 100);
    PointStore store(22);
    auto z1 = evolve_event_driven(z0, store, 1.0);
    auto z2 = evolve_event_driven(z1, store, 4.0);
    for (std::int64_t k = z0.i_min; k <= z0.i_max(); ++k) {
        CHECK(z1.pos(k) <= z0.pos(k));
        CHECK(z2.pos(k) <= z1.pos(k));
    }
    for (std::int64_t k = z2.i_min + 1; k <= z2.i_max(); ++k)
        CHECK(z2.pos(k) > z2.pos(k - 1));
}

TEST_CASE("time zero and empty windows are no-ops") {
    auto z0 = unit_density_particles(3, 10);
    PointStore store(4);
    auto same = evolve_event_driven(z0, store, 0.0);
    for (std::int64_t k = z0.i_min; k <= z0.i_max(); ++k)
        CHECK(same.pos(k) == z0.pos(k));
    CHECK_THROWS_AS(evolve_event_driven(same, store, -1.0), domain_violation);
}

TEST_CASE("diffusive covariance is exact for powers of two") {
    for (int c = 0; c < 10; ++c) {
        auto z0 = unit_density_particles(900 + c, 50);
        PointStore store(1900 + c);
        CHECK(scaling_covariance_check(z0, store, 3.0, 2.0));
        if (c < 3) CHECK(scaling_covariance_check(z0, store, 2.0, 4.0));
    }
}

TEST_CASE("window exhaustion raises instead of returning a wrong answer") {
    auto z0 = unit_density_particles(77, 200);
    PointStore store(78);
    WindowPolicy tiny;
    tiny.scale_n = 1.0;
    tiny.max_widenings = 0;
    tiny.center_offset = 0;
    tiny.edge_rule = EdgeRule::approximation_guard;
    std::vector<std::int64_t> labels{190};
    // t large enough that the true minimizer sits well below the two-candidate
    // window, so the edge hit cannot be widened away
    CHECK_THROWS_AS(evolve_variational(z0, store, 6.0, labels, tiny), window_exhausted);
    CHECK_THROWS_AS(evolve_variational_reference(z0, store, 6.0, labels, tiny),
                    window_exhausted);
}

TEST_CASE("a minimizer on the true left end of the system is legitimate") {
    auto z0 = unit_density_particles(55, 12);
    PointStore store(56);
    const double t = 6.0; // deep enough that label 0 is often the minimizer
    std::vector<std::int64_t> labels{2, 5};

    auto ed = evolve_event_driven(z0, store, t);
    WindowPolicy exact;
    exact.scale_n = 12.0;
    exact.center_offset = 8;
    exact.max_widenings = 8;
    exact.edge_rule = EdgeRule::exact_boundary;
    auto vr = evolve_variational(z0, store, t, labels, exact);
    for (std::size_t j = 0; j < labels.size(); ++j)
        CHECK(vr.positions[j] == ed.pos(labels[j]));
}

TEST_CASE("trajectory csv lists snapshots in order") {
    ParticleConfig a;
    a.i_min = 1;
    a.positions = {0.5, 1.5};
    ParticleConfig b = a;
    b.positions = {0.25, 1.5};
    b.time_stamp = 2.0;
    std::vector<ParticleConfig> snaps{a, b};
    std::ostringstream os;
    write_trajectory_csv(os, snaps);
    CHECK(os.str() ==
          "# hammersley-lab v1\nlabel,time,position\n"
          "1,0,0.5\n2,0,1.5\n1,2,0.25\n2,2,1.5\n");
}
