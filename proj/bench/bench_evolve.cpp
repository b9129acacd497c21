// Times the three evolution paths on the same instance: the event-driven
// sweep, the windowed minimization (parallel across labels), and the per-pair
// reference search. Prints wall time and checks the outputs agree bitwise.
//
// Usage: bench_evolve [n_particles] [t] [n_labels]

#include <chrono>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "hlab/hammersley.hpp"
#include "hlab/poisson_plane.hpp"
#include "hlab/rng.hpp"

using clock_type = std::chrono::steady_clock;

static double seconds_since(clock_type::time_point t0) {
    return std::chrono::duration<double>(clock_type::now() - t0).count();
}

int main(int argc, char** argv) {
    std::int64_t n_particles = argc > 1 ? std::atoll(argv[1]) : 20000;
    double t = argc > 2 ? std::atof(argv[2]) : 8.0;
    std::int64_t n_labels = argc > 3 ? std::atoll(argv[3]) : 256;
    if (n_particles < 2 || n_labels < 1 || !(t > 0.0)) {
        std::fprintf(stderr, "usage: bench_evolve [n_particles>=2] [t>0] [n_labels>=1]\n");
        return 2;
    }

    hlab::SplitMix64 rng(12345);
    hlab::ParticleConfig z0;
    z0.i_min = 0;
    double pos = 0.0;
    for (std::int64_t i = 0; i < n_particles; ++i) {
        pos += rng.exponential(1.0);
        z0.positions.push_back(pos);
    }
    hlab::PointStore store(67890);

    // sample labels from the upper half so windows have room below
    std::vector<std::int64_t> labels;
    std::int64_t lo = n_particles / 2;
    std::int64_t step = std::max<std::int64_t>(1, (n_particles - 1 - lo) / n_labels);
    for (std::int64_t k = lo; k < n_particles && static_cast<std::int64_t>(labels.size()) < n_labels;
         k += step)
        labels.push_back(k);

    hlab::WindowPolicy policy;
    policy.center_offset = static_cast<std::int64_t>(2.0 * t);
    // width scales off the instance size; leaving this at 1 gives a window too
    // narrow to certify the minimum
    policy.scale_n = static_cast<double>(n_particles);

#ifdef _OPENMP
    std::printf("threads: %d\n", omp_get_max_threads());
#else
    std::printf("threads: 1 (no OpenMP)\n");
#endif
    std::printf("particles=%lld t=%g labels=%zu\n",
                static_cast<long long>(n_particles), t, labels.size());

    auto t0 = clock_type::now();
    auto ed = hlab::evolve_event_driven(z0, store, t);
    double ed_s = seconds_since(t0);
    std::printf("event-driven:          %8.3f s (all %lld particles)\n", ed_s,
                static_cast<long long>(n_particles));

    t0 = clock_type::now();
    auto vr = hlab::evolve_variational(z0, store, t, labels, policy);
    double vr_s = seconds_since(t0);
    std::printf("variational windowed:  %8.3f s (widenings %d)\n", vr_s, vr.widenings);

    t0 = clock_type::now();
    auto ref = hlab::evolve_variational_reference(z0, store, t, labels, policy);
    double ref_s = seconds_since(t0);
    std::printf("variational reference: %8.3f s (widenings %d)\n", ref_s, ref.widenings);

    int mismatches = 0;
    for (std::size_t j = 0; j < labels.size(); ++j) {
        double expect = ed.positions[labels[j] - ed.i_min];
        if (vr.positions[j] != expect || ref.positions[j] != expect) ++mismatches;
    }
    std::printf("agreement: %s\n", mismatches == 0 ? "bitwise identical" : "MISMATCH");
    if (mismatches != 0) {
        std::fprintf(stderr, "%d of %zu labels disagree\n", mismatches, labels.size());
        return 1;
    }
    std::printf("speedup windowed vs reference: %.2fx\n", ref_s / vr_s);
    return 0;
}
