#include "hlab/sticks.hpp"

#include <cmath>
#include <string>

#include "hlab/errors.hpp"
#include "hlab/io.hpp"
#include "hlab/rng.hpp"

namespace hlab {

double StickConfig::height(std::int64_t label) const {
    if (label < i_min || label > i_max())
        throw domain_violation("StickConfig: label " + std::to_string(label) + " out of range");
    return heights[static_cast<std::size_t>(label - i_min)];
}

void StickConfig::validate() const {
    if (heights.empty())
        throw domain_violation("StickConfig: empty");
    for (double h : heights)
        if (!(h >= 0.0) || !std::isfinite(h))
            throw domain_violation("StickConfig: heights must be nonnegative and finite");
    if (!std::isfinite(time_stamp) || time_stamp < 0.0)
        throw domain_violation("StickConfig: bad time stamp");
}

void PerturbationProfile::validate() const {
    if (!(q > 0.0) || !std::isfinite(q))
        throw config_error("PerturbationProfile: q must be > 0");
    if (!(beta > 0.0) || !std::isfinite(beta))
        throw config_error("PerturbationProfile: beta must be > 0");
    if (n < 1)
        throw config_error("PerturbationProfile: n must be >= 1");
    if (!(std::pow(static_cast<double>(n), -beta) * v0.sup_abs() < q))
        throw config_error("PerturbationProfile: need n^{-beta} sup|v0| < q "
                           "so all stick means stay positive");
}

double PerturbationProfile::site_mean(std::int64_t i) const {
    const double nn = static_cast<double>(n);
    const double a = static_cast<double>(i - 1) / nn;
    const double b = static_cast<double>(i) / nn;
    return q + std::pow(nn, 1.0 - beta) * v0.integral(a, b);
}

double PerturbationProfile::expected_initial_position(std::int64_t i) const {
    const double nn = static_cast<double>(n);
    return q * static_cast<double>(i) +
           std::pow(nn, 1.0 - beta) * v0.antiderivative(static_cast<double>(i) / nn);
}

StickConfig sample_local_equilibrium(const PerturbationProfile& profile,
                                     std::int64_t i_lo, std::int64_t i_hi,
                                     std::uint64_t seed) {
    profile.validate();
    if (i_lo > i_hi)
        throw domain_violation("sample_local_equilibrium: empty site range");
    StickConfig out;
    out.i_min = i_lo;
    out.heights.reserve(static_cast<std::size_t>(i_hi - i_lo + 1));
    for (std::int64_t i = i_lo; i <= i_hi; ++i) {
        double mean = profile.site_mean(i);
        if (!(mean > 0.0))
            throw config_error("sample_local_equilibrium: nonpositive mean at site " +
                               std::to_string(i));
        SplitMix64 rng(mix_seed({seed, 0x7374696bULL, static_cast<std::uint64_t>(i)}));
        out.heights.push_back(rng.exponential(mean));
    }
    return out;
}

ParticleConfig sticks_to_particles(const StickConfig& sticks,
                                   std::int64_t anchor_label, double anchor_position) {
    sticks.validate();
    const std::int64_t lo = sticks.i_min - 1, hi = sticks.i_max();
    if (anchor_label < lo || anchor_label > hi)
        throw domain_violation("sticks_to_particles: anchor label outside particle range");
    ParticleConfig z;
    z.i_min = lo;
    z.time_stamp = sticks.time_stamp;
    z.positions.assign(static_cast<std::size_t>(hi - lo + 1), 0.0);
    auto at = [&](std::int64_t i) -> double& {
        return z.positions[static_cast<std::size_t>(i - lo)];
    };
    at(anchor_label) = anchor_position;
    for (std::int64_t i = anchor_label + 1; i <= hi; ++i)
        at(i) = at(i - 1) + sticks.height(i);
    for (std::int64_t i = anchor_label - 1; i >= lo; --i)
        at(i) = at(i + 1) - sticks.height(i + 1);
    return z;
}

StickConfig particles_to_sticks(const ParticleConfig& z) {
    z.validate();
    if (z.positions.size() < 2)
        throw domain_violation("particles_to_sticks: need at least two particles");
    StickConfig out;
    out.i_min = z.i_min + 1;
    out.time_stamp = z.time_stamp;
    out.heights.reserve(z.positions.size() - 1);
    for (std::size_t i = 1; i < z.positions.size(); ++i)
        out.heights.push_back(z.positions[i] - z.positions[i - 1]);
    return out;
}

StickConfig evolve_sticks_direct(const StickConfig& eta0, double t,
                                 std::uint64_t seed, RightBoundary boundary) {
    eta0.validate();
    if (!(t >= 0.0) || !std::isfinite(t))
        throw domain_violation("evolve_sticks_direct: t must be nonnegative");
    StickConfig out = eta0;
    out.time_stamp = eta0.time_stamp + t;
    const std::size_t n_sites = out.heights.size();
    const std::size_t n_firing =
        boundary == RightBoundary::closed ? n_sites - 1 : n_sites;
    if (n_firing == 0 || t == 0.0) return out;

    SplitMix64 rng(mix_seed({seed, 0x73746b64ULL}));
    auto total_rate = [&] {
        double s = 0.0;
        for (std::size_t i = 0; i < n_firing; ++i) s += out.heights[i];
        return s;
    };
    double rate = total_rate();
    double clock = 0.0;
    std::uint64_t events = 0;
    for (;;) {
        if (!(rate > 0.0)) break; // absorbing: nothing left to fire
        clock += rng.exponential(1.0 / rate);
        if (clock > t) break;
        // pick the firing site proportionally to height
        double target = rate * rng.uniform01();
        std::size_t site = n_firing - 1;
        double acc = 0.0;
        for (std::size_t i = 0; i < n_firing; ++i) {
            acc += out.heights[i];
            if (target <= acc) {
                site = i;
                break;
            }
        }
        double amount = out.heights[site] * rng.uniform01();
        out.heights[site] -= amount;
        rate -= amount;
        if (site + 1 < n_sites) {
            out.heights[site + 1] += amount;
            if (site + 1 < n_firing) rate += amount;
        }
        // running rate accumulates rounding error; refresh periodically
        if ((++events & 0xfffULL) == 0) rate = total_rate();
    }
    return out;
}

std::int64_t left_contamination_margin(double q, double t) {
    if (!(q > 0.0) || !(t >= 0.0))
        throw domain_violation("left_contamination_margin: need q > 0, t >= 0");
    return static_cast<std::int64_t>(std::ceil(4.0 * q * t)) + 8;
}

void write_sticks_csv(std::ostream& os, const StickConfig& sticks) {
    os << kCsvVersionHeader << '\n';
    os << "label,height\n";
    for (std::int64_t i = sticks.i_min; i <= sticks.i_max(); ++i)
        os << i << ',' << fmt_shortest(sticks.height(i)) << '\n';
}

} // namespace hlab
