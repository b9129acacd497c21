#pragma once
// Line-based run configuration: one `section.key = value` per line, blank
// lines and `#` comments allowed. Parsing collects every problem (with line
// numbers) before failing, and render emits a canonical text that parses
// back to the identical value.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "hlab/experiments.hpp"
#include "hlab/piecewise.hpp"

namespace hlab {

struct RunConfig {
    // scaling.* plus window.* (b, delta_w, max_widenings) and the seed
    ScalingParams scaling;
    // sweep.n_values; empty means run the single scaling.n
    std::vector<std::int64_t> sweep_n;
    // profile.v0_xs / profile.v0_ys, breakpoints and values of v0
    std::vector<double> v0_xs{0.0};
    std::vector<double> v0_ys{0.0};
    // phi.xs / phi.ys, test function for the weighted field statistic
    std::vector<double> phi_xs{-1.0, 0.0, 1.0};
    std::vector<double> phi_ys{0.0, 1.0, 0.0};
    // thm4.case
    int thm4_kase = 3;
    // benchmark.k_n; unset means use translation(n, nu, q, t)
    std::optional<std::int64_t> benchmark_k_n;
    // evolve.*
    std::int64_t evolve_particles = 200;
    std::vector<double> evolve_snapshots{1.0, 5.0};
    // lis.*
    double lis_s = 100.0;
    // gamma.*
    std::int64_t gamma_m = 10;
    double gamma_tau = 1.0;
    double gamma_cap = 100.0;
    // burgers.* output grids
    std::vector<double> burgers_xs{-2.0, -1.0, 0.0, 1.0, 2.0};
    std::vector<double> burgers_ts{0.25, 0.5, 1.0};
    // sticks.*
    std::int64_t sticks_sites = 100;
    std::string sticks_mode = "sample";    // sample | evolve
    std::string sticks_boundary = "open";  // open | closed
    // output.dir; empty means unset (CLI falls back to flag, env, cwd)
    std::string output_dir;

    bool operator==(const RunConfig&) const = default;

    PiecewiseLinearProfile v0_profile() const;
    PiecewiseLinearProfile phi_profile() const;
};

// Throws config_error whose message lists every problem, one per line.
RunConfig parse_config(const std::string& text);

std::string render_config(const RunConfig& cfg);

} // namespace hlab
