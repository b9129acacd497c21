#pragma once
// Two couplings of the same particle dynamics driven by one planar Poisson
// field. Event-driven: each point (x,s) in time order pulls the leftmost
// particle at or right of x down to x. Variational: position k at time t is
// the minimum over window candidates i <= k of z0(i) + width of the smallest
// box right of z0(i) holding k-i increasing points. Both walk the label
// window [i_min, i_max] as a stand-alone system: label i_min is the true
// leftmost particle, so field points left of z0(i_min) are never consulted.
//
// The two constructions agree bitwise: every output coordinate is either an
// initial position or a field point's x, with no arithmetic applied.

#include <cstdint>
#include <ostream>
#include <span>
#include <vector>

#include "hlab/poisson_plane.hpp"

namespace hlab {

struct ParticleConfig {
    std::int64_t i_min = 0;
    std::vector<double> positions; // nondecreasing, indexed i_min..i_max
    double time_stamp = 0.0;

    std::int64_t i_max() const {
        return i_min + static_cast<std::int64_t>(positions.size()) - 1;
    }
    double pos(std::int64_t label) const;
    void validate() const;
};

double tagged_position(const ParticleConfig& cfg, std::int64_t label);

// exact_boundary: a minimizer at i_min is the genuine answer for the finite
// system (dual-construction tests). approximation_guard: the window stands in
// for an infinite system, so an unwidenable edge minimizer is an error.
enum class EdgeRule { exact_boundary, approximation_guard };

// lo exponent of the candidate window width: max(nu - beta, 2nu/3 + delta_w).
double window_exponent(double nu, double beta, double delta_w);

struct WindowPolicy {
    double nu = 1.0;
    double beta = 0.25;
    double delta_w = 0.05;
    double b = 2.0;          // width multiplier
    int max_widenings = 6;
    double scale_n = 1.0;    // instance scale the width is computed from
    // The minimizer for a label queried after a frame translation sits near
    // label - center_offset; the window is centered there, two-sided, and
    // intersected with {i <= label}.
    std::int64_t center_offset = 0;
    EdgeRule edge_rule = EdgeRule::approximation_guard;

    double xi() const { return window_exponent(nu, beta, delta_w); }
    std::int64_t initial_width() const;

    // Window covering every candidate i <= label; never widens or errors.
    static WindowPolicy exhaustive();
};

ParticleConfig evolve_event_driven(const ParticleConfig& z0, const PointStore& store, double t);

struct VariationalResult {
    std::vector<std::int64_t> labels;
    std::vector<double> positions;
    std::vector<std::int64_t> minimizers; // argmin index per label, smallest on ties
    int widenings = 0;                    // rounds of window doubling used
};

// Windowed minimization with shared x-ordered sweeps per corner (parallel
// across corners). Requires z0.time_stamp == 0. Widens a window edge
// geometrically when the minimizer lands on it; throws window_exhausted when
// widening runs out of labels or rounds under approximation_guard.
VariationalResult evolve_variational(const ParticleConfig& z0, const PointStore& store,
                                     double t, std::span<const std::int64_t> labels,
                                     const WindowPolicy& policy);

// Same contract, no sweep sharing and no parallelism: one width search per
// (label, candidate) pair. Kept as the slow reference for testing.
VariationalResult evolve_variational_reference(const ParticleConfig& z0, const PointStore& store,
                                               double t, std::span<const std::int64_t> labels,
                                               const WindowPolicy& policy);

// Checks the exact diffusive covariance: evolving (lambda*z0, points mapped
// (x,s)->(lambda*x, s/lambda)) to time t/lambda, then dividing positions by
// lambda, reproduces evolving z0 to t. Bitwise for power-of-two lambda.
bool scaling_covariance_check(const ParticleConfig& z0, const PointStore& store,
                              double t, double lambda);

// Rows "label,time,position" for each snapshot in order.
void write_trajectory_csv(std::ostream& os, std::span<const ParticleConfig> snapshots);

} // namespace hlab
