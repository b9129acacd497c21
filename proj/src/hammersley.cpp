#include "hlab/hammersley.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "hlab/errors.hpp"
#include "hlab/increasing_seq.hpp"
#include "hlab/io.hpp"

namespace hlab {

double ParticleConfig::pos(std::int64_t label) const {
    if (label < i_min || label > i_max())
        throw domain_violation("ParticleConfig: label " + std::to_string(label) + " out of range");
    return positions[static_cast<std::size_t>(label - i_min)];
}

void ParticleConfig::validate() const {
    if (positions.empty())
        throw domain_violation("ParticleConfig: empty");
    for (std::size_t i = 0; i < positions.size(); ++i) {
        if (!std::isfinite(positions[i]))
            throw domain_violation("ParticleConfig: non-finite position");
        if (i > 0 && positions[i] < positions[i - 1])
            throw domain_violation("ParticleConfig: positions must be nondecreasing");
    }
    if (!std::isfinite(time_stamp) || time_stamp < 0.0)
        throw domain_violation("ParticleConfig: bad time stamp");
}

double tagged_position(const ParticleConfig& cfg, std::int64_t label) {
    return cfg.pos(label);
}

double window_exponent(double nu, double beta, double delta_w) {
    return std::max(nu - beta, 2.0 * nu / 3.0 + delta_w);
}

std::int64_t WindowPolicy::initial_width() const {
    double w = std::ceil(b * std::pow(scale_n, xi()));
    if (!(w >= 1.0)) return 1;
    if (w > 4.0e18) return static_cast<std::int64_t>(4.0e18);
    return static_cast<std::int64_t>(w);
}

WindowPolicy WindowPolicy::exhaustive() {
    WindowPolicy p;
    p.b = 4.0e18;
    p.scale_n = 1.0;
    p.max_widenings = 0;
    p.center_offset = 0;
    p.edge_rule = EdgeRule::exact_boundary;
    return p;
}

namespace {

// max(floor_v, a - w) without signed overflow for huge w
std::int64_t sub_clamped(std::int64_t a, std::int64_t w, std::int64_t floor_v) {
    return (w > a - floor_v) ? floor_v : a - w;
}

// min(cap, a + w)
std::int64_t add_clamped(std::int64_t a, std::int64_t w, std::int64_t cap) {
    return (w > cap - a) ? cap : a + w;
}

// Patience pile update; returns the new pile count when one is created.
int patience_step(std::vector<double>& tails, double t) {
    auto it = std::lower_bound(tails.begin(), tails.end(), t);
    if (it == tails.end()) {
        tails.push_back(t);
        return static_cast<int>(tails.size());
    }
    *it = t;
    return 0;
}

void apply_events(ParticleConfig& cfg, std::span<const PlanarPoint> time_sorted) {
    auto& pos = cfg.positions;
    for (const auto& p : time_sorted) {
        auto it = std::lower_bound(pos.begin(), pos.end(), p.x);
        if (it != pos.end()) *it = p.x;
    }
}

} // namespace

ParticleConfig evolve_event_driven(const ParticleConfig& z0, const PointStore& store, double t) {
    z0.validate();
    if (t < z0.time_stamp)
        throw domain_violation("evolve_event_driven: t before configuration time stamp");
    ParticleConfig out = z0;
    out.time_stamp = t;
    if (t == z0.time_stamp) return out;
    Rectangle slab{z0.positions.front(), z0.positions.back(), z0.time_stamp, t};
    if (slab.area() == 0.0) return out;
    auto [r_lo, r_hi] = PointStore::row_range(slab.t_lo, slab.t_hi);
    for (std::int64_t r = r_lo; r < r_hi; ++r) {
        auto row = store.row_points(slab, r);
        apply_events(out, row);
    }
    return out;
}

namespace {

struct Window {
    std::int64_t lo, hi; // candidate range [lo, hi], hi <= k
};

Window make_window(std::int64_t k, std::int64_t i_min, const WindowPolicy& policy, int round) {
    std::int64_t c = std::min(k, k - policy.center_offset);
    std::int64_t w0 = policy.initial_width();
    std::int64_t w = w0;
    for (int r = 0; r < round; ++r) w = add_clamped(w, w, static_cast<std::int64_t>(4.0e18));
    Window win;
    win.lo = sub_clamped(std::max(c, i_min), w, i_min);
    win.hi = std::max(win.lo, add_clamped(c, w, k));
    return win;
}

enum class EdgeAction { accept, widen, exhausted };

// The minimizer must sit strictly inside any edge that could be pushed
// further out; the {i <= k} cut and, under exact_boundary, the i_min cut are
// genuine boundaries and never widen.
EdgeAction judge_edges(std::int64_t argmin, const Window& win, std::int64_t k,
                       std::int64_t i_min, const WindowPolicy& policy) {
    if (argmin == win.lo && win.lo < k) {
        if (win.lo > i_min) return EdgeAction::widen;
        return policy.edge_rule == EdgeRule::exact_boundary ? EdgeAction::accept
                                                            : EdgeAction::exhausted;
    }
    if (argmin == win.hi && win.hi < k) return EdgeAction::widen;
    if (argmin == k && win.hi < k) return EdgeAction::widen; // window never beat z0(k)
    return EdgeAction::accept;
}

} // namespace

VariationalResult evolve_variational(const ParticleConfig& z0, const PointStore& store,
                                     double t, std::span<const std::int64_t> labels,
                                     const WindowPolicy& policy) {
    z0.validate();
    if (z0.time_stamp != 0.0)
        throw domain_violation("evolve_variational: configuration must be at time 0");
    if (!(t > 0.0))
        throw domain_violation("evolve_variational: t must be positive");
    const std::int64_t i_min = z0.i_min, i_max = z0.i_max();
    for (auto k : labels)
        if (k < i_min || k > i_max)
            throw domain_violation("evolve_variational: queried label out of range");

    VariationalResult res;
    res.labels.assign(labels.begin(), labels.end());
    res.positions.assign(labels.size(), 0.0);
    res.minimizers.assign(labels.size(), 0);
    if (labels.empty()) return res;

    const std::int64_t k_top = *std::max_element(labels.begin(), labels.end());
    std::vector<int> round(labels.size(), 0);
    std::vector<char> resolved(labels.size(), 0);

    struct Corner {
        std::int64_t m_need = 0;
        double cap = -std::numeric_limits<double>::infinity();
        std::vector<double> reach; // reach[m-1] = x where pile m first formed
    };

    for (int sweep_round = 0;; ++sweep_round) {
        // Candidate needs for this round: per corner, the largest sequence
        // length any unresolved label asks of it and the x cap beyond which
        // no candidate can win.
        std::int64_t lo_all = k_top;
        for (std::size_t q = 0; q < res.labels.size(); ++q)
            if (!resolved[q])
                lo_all = std::min(lo_all, make_window(res.labels[q], i_min, policy, round[q]).lo);

        std::vector<Corner> corners(static_cast<std::size_t>(k_top - lo_all + 1));
        for (std::size_t q = 0; q < res.labels.size(); ++q) {
            if (resolved[q]) continue;
            std::int64_t k = res.labels[q];
            Window win = make_window(k, i_min, policy, round[q]);
            double zk = z0.pos(k);
            for (std::int64_t i = win.lo; i <= std::min(win.hi, k - 1); ++i) {
                auto& c = corners[static_cast<std::size_t>(i - lo_all)];
                c.m_need = std::max(c.m_need, k - i);
                c.cap = std::max(c.cap, zk);
            }
        }

        std::vector<std::int64_t> active;
        for (std::int64_t i = lo_all; i <= k_top; ++i)
            if (corners[static_cast<std::size_t>(i - lo_all)].m_need > 0) active.push_back(i);

        std::vector<PlanarPoint> slab;
        if (!active.empty()) {
            Rectangle rect{z0.pos(active.front()), z0.pos(k_top), 0.0, t};
            slab = store.collect_sorted_x(rect);
        }

#pragma omp parallel for schedule(dynamic)
        for (std::size_t a = 0; a < active.size(); ++a) {
            auto& c = corners[static_cast<std::size_t>(active[a] - lo_all)];
            double corner_x = z0.pos(active[a]);
            c.reach.assign(static_cast<std::size_t>(c.m_need),
                           std::numeric_limits<double>::infinity());
            std::vector<double> tails;
            tails.reserve(static_cast<std::size_t>(c.m_need));
            auto it = std::upper_bound(slab.begin(), slab.end(),
                                       PlanarPoint{corner_x, 0.0},
                                       [](const PlanarPoint& p, const PlanarPoint& q) {
                                           return p.x < q.x;
                                       });
            for (; it != slab.end() && it->x <= c.cap; ++it) {
                int m = patience_step(tails, it->t);
                if (m > 0) {
                    c.reach[static_cast<std::size_t>(m - 1)] = it->x;
                    if (m == c.m_need) break;
                }
            }
        }

        bool all_done = true;
        for (std::size_t q = 0; q < res.labels.size(); ++q) {
            if (resolved[q]) continue;
            std::int64_t k = res.labels[q];
            Window win = make_window(k, i_min, policy, round[q]);
            double best = std::numeric_limits<double>::infinity();
            std::int64_t argmin = k;
            for (std::int64_t i = win.lo; i <= std::min(win.hi, k - 1); ++i) {
                const auto& c = corners[static_cast<std::size_t>(i - lo_all)];
                double cand = c.reach[static_cast<std::size_t>(k - i - 1)];
                if (cand < best) {
                    best = cand;
                    argmin = i;
                }
            }
            double zk = z0.pos(k);
            if (zk < best) {
                best = zk;
                argmin = k;
            }
            switch (judge_edges(argmin, win, k, i_min, policy)) {
            case EdgeAction::accept:
                res.positions[q] = best;
                res.minimizers[q] = argmin;
                resolved[q] = 1;
                break;
            case EdgeAction::widen:
                if (round[q] >= policy.max_widenings)
                    throw window_exhausted("evolve_variational: widening budget spent at label " +
                                           std::to_string(k));
                ++round[q];
                res.widenings = std::max(res.widenings, round[q]);
                all_done = false;
                break;
            case EdgeAction::exhausted:
                throw window_exhausted("evolve_variational: minimizer pinned at label floor for label " +
                                       std::to_string(k));
            }
        }
        if (all_done) break;
        (void)sweep_round;
    }
    return res;
}

VariationalResult evolve_variational_reference(const ParticleConfig& z0, const PointStore& store,
                                               double t, std::span<const std::int64_t> labels,
                                               const WindowPolicy& policy) {
    z0.validate();
    if (z0.time_stamp != 0.0)
        throw domain_violation("evolve_variational: configuration must be at time 0");
    if (!(t > 0.0))
        throw domain_violation("evolve_variational: t must be positive");
    const std::int64_t i_min = z0.i_min, i_max = z0.i_max();

    VariationalResult res;
    res.labels.assign(labels.begin(), labels.end());
    res.positions.assign(labels.size(), 0.0);
    res.minimizers.assign(labels.size(), 0);

    for (std::size_t q = 0; q < res.labels.size(); ++q) {
        std::int64_t k = res.labels[q];
        if (k < i_min || k > i_max)
            throw domain_violation("evolve_variational: queried label out of range");
        double zk = z0.pos(k);
        for (int round = 0;; ++round) {
            Window win = make_window(k, i_min, policy, round);
            double best = std::numeric_limits<double>::infinity();
            std::int64_t argmin = k;
            for (std::int64_t i = win.lo; i <= std::min(win.hi, k - 1); ++i) {
                double corner_x = z0.pos(i);
                auto x = gamma_achieving_x(store, {corner_x, 0.0}, k - i, t, zk - corner_x);
                if (x && *x < best) {
                    best = *x;
                    argmin = i;
                }
            }
            if (zk < best) {
                best = zk;
                argmin = k;
            }
            EdgeAction act = judge_edges(argmin, win, k, i_min, policy);
            if (act == EdgeAction::accept) {
                res.positions[q] = best;
                res.minimizers[q] = argmin;
                break;
            }
            if (act == EdgeAction::exhausted || round >= policy.max_widenings)
                throw window_exhausted("evolve_variational: window exhausted at label " +
                                       std::to_string(k));
            res.widenings = std::max(res.widenings, round + 1);
        }
    }
    return res;
}

bool scaling_covariance_check(const ParticleConfig& z0, const PointStore& store,
                              double t, double lambda) {
    if (!(lambda > 0.0) || !std::isfinite(lambda))
        throw domain_violation("scaling_covariance_check: scale factor must be positive");
    ParticleConfig base = evolve_event_driven(z0, store, t);

    Rectangle slab{z0.positions.front(), z0.positions.back(), z0.time_stamp, t};
    std::vector<PlanarPoint> events;
    if (slab.area() > 0.0) {
        auto [r_lo, r_hi] = PointStore::row_range(slab.t_lo, slab.t_hi);
        for (std::int64_t r = r_lo; r < r_hi; ++r) {
            auto row = store.row_points(slab, r);
            events.insert(events.end(), row.begin(), row.end());
        }
    }
    // s/lambda is monotone in s, so the time order survives the map
    for (auto& p : events) {
        p.x *= lambda;
        p.t /= lambda;
    }
    ParticleConfig scaled = z0;
    for (auto& x : scaled.positions) x *= lambda;
    scaled.time_stamp = z0.time_stamp / lambda;
    apply_events(scaled, events);

    for (std::size_t i = 0; i < base.positions.size(); ++i)
        if (scaled.positions[i] / lambda != base.positions[i]) return false;
    return true;
}

void write_trajectory_csv(std::ostream& os, std::span<const ParticleConfig> snapshots) {
    os << kCsvVersionHeader << '\n';
    os << "label,time,position\n";
    for (const auto& cfg : snapshots)
        for (std::int64_t k = cfg.i_min; k <= cfg.i_max(); ++k)
            os << k << ',' << fmt_shortest(cfg.time_stamp) << ','
               << fmt_shortest(cfg.pos(k)) << '\n';
}

} // namespace hlab
