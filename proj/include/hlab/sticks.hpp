#pragma once
// Stick heights are the interparticle gaps eta(i) = z(i) - z(i-1). This
// module holds the local-equilibrium sampler (independent exponentials whose
// means follow a slowly varying density), the particle <-> stick bijections,
// and a direct Gillespie simulator of the stick dynamics used only for
// distributional cross-checks against the particle constructions.

#include <cstdint>
#include <ostream>
#include <vector>

#include "hlab/hammersley.hpp"
#include "hlab/piecewise.hpp"

namespace hlab {

struct StickConfig {
    std::int64_t i_min = 1;
    std::vector<double> heights; // nonnegative, indexed i_min..i_max
    double time_stamp = 0.0;

    std::int64_t i_max() const {
        return i_min + static_cast<std::int64_t>(heights.size()) - 1;
    }
    double height(std::int64_t label) const;
    void validate() const;
};

// Density q perturbed by n^{-beta} v0 at macroscopic position i/n. Site i's
// stick mean is q + n^{1-beta} * (integral of v0 over ((i-1)/n, i/n]), which
// keeps the per-site perturbation at order n^{-beta} without assuming any
// smoothness of v0 beyond the piecewise-linear representation.
struct PerturbationProfile {
    double q = 1.0;
    double beta = 0.25;
    std::int64_t n = 1;
    PiecewiseLinearProfile v0 = PiecewiseLinearProfile::constant(0.0);

    void validate() const; // q > 0, beta > 0, n >= 1, n^{-beta} sup|v0| < q
    double site_mean(std::int64_t i) const;
    // Mean initial position of particle i: q*i + n^{1-beta} V0(i/n) with V0
    // the antiderivative of v0 vanishing at 0.
    double expected_initial_position(std::int64_t i) const;
};

// Independent Exp(site_mean(i)) heights for sites i_lo..i_hi. Each site draws
// from its own seed stream keyed by (seed, site), so extending the range
// never changes the heights of sites already covered.
StickConfig sample_local_equilibrium(const PerturbationProfile& profile,
                                     std::int64_t i_lo, std::int64_t i_hi,
                                     std::uint64_t seed);

// Cumulative sums: z(anchor) = anchor_position and z(i) - z(i-1) = eta(i).
// Output labels run i_min-1 .. i_max of the sticks; the anchor label must lie
// in that range.
ParticleConfig sticks_to_particles(const StickConfig& sticks,
                                   std::int64_t anchor_label, double anchor_position);

// Differences of consecutive positions; inverse of sticks_to_particles.
StickConfig particles_to_sticks(const ParticleConfig& z);

// open: transfers out of the top site leave the window. closed: the top site
// never fires, so total mass moves only between window sites.
enum class RightBoundary { open, closed };

// Gillespie simulation for duration t: waiting time exponential with rate
// sum of firing heights, site picked proportionally to height, a uniform
// fraction of the site's stick moves one step right. The left edge receives
// nothing, so only sites right of left_contamination_margin are
// statistically faithful to the infinite system.
StickConfig evolve_sticks_direct(const StickConfig& eta0, double t,
                                 std::uint64_t seed, RightBoundary boundary);

// Sites within this distance of the left edge are contaminated by edge
// starvation after duration t at density q: the defect front moves at speed
// about 2q, doubled for safety, plus slack for small t.
std::int64_t left_contamination_margin(double q, double t);

// Rows "label,height".
void write_sticks_csv(std::ostream& os, const StickConfig& sticks);

} // namespace hlab
