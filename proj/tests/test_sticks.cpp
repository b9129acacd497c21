#include <cmath>
#include <numeric>
#include <sstream>
#include <vector>

#include "doctest.h"

#include "hlab/errors.hpp"
#include "hlab/piecewise.hpp"
#include "hlab/poisson_plane.hpp"
#include "hlab/rng.hpp"
#include "hlab/stats.hpp"
#include "hlab/sticks.hpp"

using namespace hlab;

TEST_CASE("stick config validation") {
    StickConfig s;
    s.i_min = 2;
    s.heights = {1.0, 0.0, 2.5};
    s.validate();
    CHECK(s.i_max() == 4);
    CHECK(s.height(3) == 0.0);
    CHECK_THROWS_AS(s.height(1), domain_violation);
    StickConfig bad;
    bad.heights = {1.0, -0.5};
    CHECK_THROWS_AS(bad.validate(), domain_violation);
}

TEST_CASE("perturbation profile validation and site means") {
    PerturbationProfile prof;
    prof.q = 2.0;
    prof.beta = 0.25;
    prof.n = 16;
    prof.v0 = PiecewiseLinearProfile::tent(1.0, 1.0);
    prof.validate();

    // site mean integrates v0 over ((i-1)/n, i/n]; compare with a fixed-grid
    // midpoint rule as an independent reference
    for (std::int64_t i : {-20LL, -3LL, 1LL, 8LL, 17LL}) {
        double a = double(i - 1) / 16.0, b = double(i) / 16.0;
        double acc = 0.0;
        const int m = 4000;
        for (int j = 0; j < m; ++j) acc += prof.v0(a + (b - a) * (j + 0.5) / m);
        acc *= (b - a) / m;
        double expect = 2.0 + std::pow(16.0, 0.75) * acc;
        CHECK(prof.site_mean(i) == doctest::Approx(expect).epsilon(1e-7));
    }

    PerturbationProfile off;
    off.q = 0.5;
    off.beta = 0.1;
    off.n = 2;
    off.v0 = PiecewiseLinearProfile::constant(0.6); // 2^{-0.1}*0.6 > 0.5
    CHECK_THROWS_AS(off.validate(), config_error);
}

TEST_CASE("expected positions telescope over site means") {
    PerturbationProfile prof;
    prof.q = 1.5;
    prof.beta = 0.4;
    prof.n = 32;
    prof.v0 = PiecewiseLinearProfile({-1.0, 0.0, 1.0}, {0.0, 0.8, 0.0});
    double acc = 0.0;
    for (std::int64_t i = 1; i <= 64; ++i) {
        acc += prof.site_mean(i);
        CHECK(prof.expected_initial_position(i) - prof.expected_initial_position(0) ==
              doctest::Approx(acc).epsilon(1e-12));
    }
}

TEST_CASE("sampler is keyed per site") {
    PerturbationProfile prof;
    prof.q = 1.0;
    auto narrow = sample_local_equilibrium(prof, 1, 50, 777);
    auto wide = sample_local_equilibrium(prof, -20, 80, 777);
    for (std::int64_t i = 1; i <= 50; ++i)
        CHECK(narrow.height(i) == wide.height(i));
    auto other = sample_local_equilibrium(prof, 1, 50, 778);
    int diff = 0;
    for (std::int64_t i = 1; i <= 50; ++i)
        if (narrow.height(i) != other.height(i)) ++diff;
    CHECK(diff == 50);
}

TEST_CASE("sampler mean matches the local density") {
    PerturbationProfile prof;
    prof.q = 1.0;
    prof.beta = 0.25;
    prof.n = 8;
    prof.v0 = PiecewiseLinearProfile::tent(1.0, 0.9);
    const std::int64_t site = 4; // 0.5 macroscopic position, inside the tent
    const int reps = 4000;
    std::vector<double> draws;
    for (int r = 0; r < reps; ++r)
        draws.push_back(sample_local_equilibrium(prof, site, site, 10000 + r).height(site));
    auto ms = mean_se(draws);
    CHECK(std::abs(ms.mean - prof.site_mean(site)) < 4.0 * ms.se);
}

TEST_CASE("stick and particle views are inverse") {
    PerturbationProfile prof;
    auto sticks = sample_local_equilibrium(prof, 1, 40, 31337);
    auto z = sticks_to_particles(sticks, 20, 5.0);
    CHECK(z.i_min == 0);
    CHECK(z.i_max() == 40);
    CHECK(z.pos(20) == 5.0);
    z.validate();

    auto back = particles_to_sticks(z);
    CHECK(back.i_min == 1);
    CHECK(back.i_max() == 40);
    for (std::int64_t i = 1; i <= 40; ++i)
        CHECK(back.height(i) == doctest::Approx(sticks.height(i)).epsilon(1e-12));

    auto z2 = sticks_to_particles(back, 0, z.pos(0));
    for (std::int64_t k = 0; k <= 40; ++k)
        CHECK(z2.pos(k) == doctest::Approx(z.pos(k)).epsilon(1e-12));

    ParticleConfig lone;
    lone.positions = {1.0};
    CHECK_THROWS_AS(particles_to_sticks(lone), domain_violation);
    CHECK_THROWS_AS(sticks_to_particles(sticks, 41, 0.0), domain_violation);
}

TEST_CASE("closed-boundary dynamics conserve total mass") {
    PerturbationProfile prof;
    auto eta0 = sample_local_equilibrium(prof, 1, 100, 4711);
    double before = std::accumulate(eta0.heights.begin(), eta0.heights.end(), 0.0);
    // conservation holds up to rounding in the transfer arithmetic, not bitwise
    auto eta1 = evolve_sticks_direct(eta0, 5.0, 999, RightBoundary::closed);
    double after = std::accumulate(eta1.heights.begin(), eta1.heights.end(), 0.0);
    CHECK(std::abs(after - before) <= 1e-12 * before);
    CHECK(eta1.time_stamp == doctest::Approx(5.0));
    for (double h : eta1.heights) CHECK(h >= 0.0);
}

TEST_CASE("open-boundary dynamics bleed mass out on the right") {
    PerturbationProfile prof;
    auto eta0 = sample_local_equilibrium(prof, 1, 100, 4712);
    double before = std::accumulate(eta0.heights.begin(), eta0.heights.end(), 0.0);
    auto eta1 = evolve_sticks_direct(eta0, 5.0, 1000, RightBoundary::open);
    double after = std::accumulate(eta1.heights.begin(), eta1.heights.end(), 0.0);
    CHECK(after < before);
}

TEST_CASE("zero-duration evolution is the identity") {
    PerturbationProfile prof;
    auto eta0 = sample_local_equilibrium(prof, 1, 30, 5);
    auto eta1 = evolve_sticks_direct(eta0, 0.0, 6, RightBoundary::open);
    for (std::int64_t i = 1; i <= 30; ++i)
        CHECK(eta1.height(i) == eta0.height(i));
    CHECK_THROWS_AS(evolve_sticks_direct(eta0, -1.0, 6, RightBoundary::open),
                    domain_violation);
}

TEST_CASE("contamination margin grows linearly in q t") {
    CHECK(left_contamination_margin(1.0, 2.0) >= 8);
    CHECK(left_contamination_margin(1.0, 10.0) > left_contamination_margin(1.0, 2.0));
    CHECK(left_contamination_margin(2.0, 10.0) >= left_contamination_margin(1.0, 10.0));
}

TEST_CASE("direct stick dynamics and the particle construction agree in law") {
    // Start far from equilibrium (all sticks equal) and compare the height
    // law at time t between the Gillespie simulator and sticks derived from
    // the event-driven particle system. Samples are taken at spaced sites
    // away from both edges, pooled over replicas.
    const std::int64_t sites = 120;
    const double t = 1.5;
    const int reps = 60;

    StickConfig flat;
    flat.i_min = 1;
    flat.heights.assign(sites, 1.5);

    std::vector<double> direct_sample, particle_sample, direct_pairs, particle_pairs;
    for (int r = 0; r < reps; ++r) {
        auto direct = evolve_sticks_direct(flat, t, mix_seed({9100, (std::uint64_t)r}),
                                           RightBoundary::open);
        auto z0 = sticks_to_particles(flat, 0, 0.0);
        PointStore store(mix_seed({9200, (std::uint64_t)r}));
        auto zt = evolve_event_driven(z0, store, t);
        auto derived = particles_to_sticks(zt);
        for (std::int64_t i = 30; i <= sites - 10; i += 12) {
            direct_sample.push_back(direct.height(i));
            particle_sample.push_back(derived.height(i));
            direct_pairs.push_back(direct.height(i) + direct.height(i + 1));
            particle_pairs.push_back(derived.height(i) + derived.height(i + 1));
        }
    }

    auto dm = mean_se(direct_sample);
    auto pm = mean_se(particle_sample);
    CHECK(std::abs(dm.mean - pm.mean) < 4.0 * std::hypot(dm.se, pm.se));

    double d1 = ks_statistic_two_sample(direct_sample, particle_sample);
    double n_eff = direct_sample.size() / 2.0;
    CHECK(ks_pvalue(d1, n_eff) > 0.005);
    double d2 = ks_statistic_two_sample(direct_pairs, particle_pairs);
    CHECK(ks_pvalue(d2, n_eff) > 0.005);
}

TEST_CASE("equilibrium is invariant under the direct dynamics") {
    PerturbationProfile prof; // q = 1, flat
    const int reps = 60;
    std::vector<double> heights;
    for (int r = 0; r < reps; ++r) {
        auto eta0 = sample_local_equilibrium(prof, 1, 100, mix_seed({400, (std::uint64_t)r}));
        auto eta1 = evolve_sticks_direct(eta0, 3.0, mix_seed({500, (std::uint64_t)r}),
                                         RightBoundary::open);
        for (std::int64_t i = 30; i <= 90; i += 10) heights.push_back(eta1.height(i));
    }
    double d = ks_statistic_exponential(heights, 1.0);
    CHECK(ks_pvalue(d, static_cast<double>(heights.size())) > 0.005);
}

TEST_CASE("sticks csv layout") {
    StickConfig s;
    s.i_min = 3;
    s.heights = {0.5, 1.25};
    std::ostringstream os;
    write_sticks_csv(os, s);
    CHECK(os.str() == "# hammersley-lab v1\nlabel,height\n3,0.5\n4,1.25\n");
}
