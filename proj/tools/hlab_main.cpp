// hlab: command-line front end. Subcommands cover the point field, the
// increasing-sequence statistics, both particle constructions, the stick
// sampler and simulator, the Burgers solver, and the Monte-Carlo experiment
// harnesses. Exit codes: 0 ok, 2 bad configuration or usage, 3 candidate
// window exhausted, 4 anything else.

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "hlab/burgers.hpp"
#include "hlab/config.hpp"
#include "hlab/errors.hpp"
#include "hlab/experiments.hpp"
#include "hlab/hammersley.hpp"
#include "hlab/increasing_seq.hpp"
#include "hlab/io.hpp"
#include "hlab/piecewise.hpp"
#include "hlab/poisson_plane.hpp"
#include "hlab/rng.hpp"
#include "hlab/stats.hpp"
#include "hlab/sticks.hpp"

namespace {

struct CommonOpts {
    std::string config_path;
    std::string out_dir;
    std::optional<std::uint64_t> seed;
};

void add_common(CLI::App* cmd, CommonOpts& opts) {
    cmd->add_option("--config", opts.config_path, "configuration file (section.key = value lines)");
    cmd->add_option("--seed", opts.seed, "override scaling.master_seed");
    cmd->add_option("--out", opts.out_dir, "output directory (default $HLAB_OUT or .)");
}

hlab::RunConfig load_config(const CommonOpts& opts) {
    hlab::RunConfig cfg;
    if (!opts.config_path.empty()) {
        std::ifstream in(opts.config_path);
        if (!in)
            throw hlab::config_error("cannot open config file: " + opts.config_path);
        std::ostringstream ss;
        ss << in.rdbuf();
        cfg = hlab::parse_config(ss.str());
    }
    if (opts.seed) cfg.scaling.master_seed = *opts.seed;
    return cfg;
}

std::filesystem::path resolve_out(const CommonOpts& opts, const hlab::RunConfig& cfg) {
    std::string dir = opts.out_dir;
    if (dir.empty()) dir = cfg.output_dir;
    if (dir.empty())
        if (const char* env = std::getenv("HLAB_OUT")) dir = env;
    if (dir.empty()) dir = ".";
    std::filesystem::create_directories(dir);
    return dir;
}

std::ofstream open_csv(const std::filesystem::path& p) {
    std::ofstream out(p);
    if (!out) throw hlab::config_error("cannot write " + p.string());
    return out;
}

void run_lis(const CommonOpts& opts) {
    auto cfg = load_config(opts);
    auto out_dir = resolve_out(opts, cfg);
    const double s = cfg.lis_s;
    if (!(s > 0.0)) throw hlab::config_error("lis.s must be > 0");
    hlab::PointStore store(cfg.scaling.master_seed);
    auto pts = store.collect_sorted_x({0.0, s, 0.0, s});
    int len = hlab::lis_length(pts);
    auto csv = open_csv(out_dir / "lis_points.csv");
    hlab::write_points_csv(csv, pts);
    std::cout << "lis: s=" << hlab::fmt_shortest(s) << " points=" << pts.size()
              << " L=" << len << " L/s=" << hlab::fmt_shortest(len / s)
              << " (limit 2)\n";
}

void run_gamma(const CommonOpts& opts) {
    auto cfg = load_config(opts);
    if (cfg.gamma_m < 0) throw hlab::config_error("gamma.m must be >= 0");
    if (!(cfg.gamma_tau > 0.0)) throw hlab::config_error("gamma.tau must be > 0");
    if (!(cfg.gamma_cap > 0.0)) throw hlab::config_error("gamma.cap must be > 0");
    hlab::PointStore store(cfg.scaling.master_seed);
    auto w = hlab::gamma(store, {0.0, 0.0}, cfg.gamma_m, cfg.gamma_tau, cfg.gamma_cap);
    std::cout << "gamma: m=" << cfg.gamma_m << " tau=" << hlab::fmt_shortest(cfg.gamma_tau)
              << " width=" << (w.is_infinite() ? "infinite" : hlab::fmt_shortest(w.value()))
              << " lln=" << hlab::fmt_shortest(hlab::lln_gamma(
                     static_cast<double>(cfg.gamma_m), cfg.gamma_tau))
              << '\n';
}

void run_evolve(const CommonOpts& opts) {
    auto cfg = load_config(opts);
    auto out_dir = resolve_out(opts, cfg);
    if (cfg.evolve_particles < 2)
        throw hlab::config_error("evolve.particles must be >= 2");
    std::vector<double> times = cfg.evolve_snapshots;
    std::sort(times.begin(), times.end());
    if (times.empty() || !(times.front() >= 0.0))
        throw hlab::config_error("evolve.snapshots must be nonnegative");

    // flat-density initial sticks at the configured q
    hlab::PerturbationProfile prof;
    prof.q = cfg.scaling.q;
    prof.beta = cfg.scaling.beta;
    prof.n = 1;
    auto sticks = hlab::sample_local_equilibrium(
        prof, 1, cfg.evolve_particles - 1,
        hlab::mix_seed({cfg.scaling.master_seed, 0x73746b73ULL}));
    auto z = hlab::sticks_to_particles(sticks, 0, 0.0);
    hlab::PointStore store(hlab::mix_seed({cfg.scaling.master_seed, 0x66696c64ULL}));

    std::vector<hlab::ParticleConfig> snaps;
    snaps.push_back(z);
    for (double t : times)
        snaps.push_back(hlab::evolve_event_driven(snaps.back(), store,
                                                  std::max(t, snaps.back().time_stamp)));
    auto csv = open_csv(out_dir / "trajectory.csv");
    hlab::write_trajectory_csv(csv, snaps);
    const auto& last = snaps.back();
    std::cout << "evolve: particles=" << cfg.evolve_particles
              << " snapshots=" << times.size()
              << " final_time=" << hlab::fmt_shortest(last.time_stamp)
              << " span=[" << hlab::fmt_shortest(last.positions.front()) << ", "
              << hlab::fmt_shortest(last.positions.back()) << "]\n";
}

void run_sticks(const CommonOpts& opts) {
    auto cfg = load_config(opts);
    auto out_dir = resolve_out(opts, cfg);
    if (cfg.sticks_sites < 1) throw hlab::config_error("sticks.sites must be >= 1");
    hlab::PerturbationProfile prof;
    prof.q = cfg.scaling.q;
    prof.beta = cfg.scaling.beta;
    prof.n = cfg.scaling.n;
    prof.v0 = cfg.v0_profile();
    auto sticks = hlab::sample_local_equilibrium(
        prof, 1, cfg.sticks_sites,
        hlab::mix_seed({cfg.scaling.master_seed, 0x73746b73ULL}));
    if (cfg.sticks_mode == "evolve") {
        auto boundary = cfg.sticks_boundary == "closed" ? hlab::RightBoundary::closed
                                                        : hlab::RightBoundary::open;
        sticks = hlab::evolve_sticks_direct(
            sticks, cfg.scaling.t,
            hlab::mix_seed({cfg.scaling.master_seed, 0x676c7370ULL}), boundary);
    }
    auto csv = open_csv(out_dir / "sticks.csv");
    hlab::write_sticks_csv(csv, sticks);
    double total = 0.0;
    for (double h : sticks.heights) total += h;
    std::cout << "sticks: sites=" << cfg.sticks_sites << " mode=" << cfg.sticks_mode
              << " time=" << hlab::fmt_shortest(sticks.time_stamp)
              << " mean_height=" << hlab::fmt_shortest(total / sticks.heights.size())
              << '\n';
}

void run_burgers(const CommonOpts& opts) {
    auto cfg = load_config(opts);
    auto out_dir = resolve_out(opts, cfg);
    auto V0 = hlab::antiderivative_fn(cfg.v0_profile(), 1.0 / 2048.0);
    auto csv = open_csv(out_dir / "burgers_field.csv");
    hlab::write_field_csv(csv, V0, cfg.burgers_xs, cfg.burgers_ts);
    std::cout << "burgers: wrote " << cfg.burgers_xs.size() * cfg.burgers_ts.size()
              << " grid values to " << (out_dir / "burgers_field.csv").string() << '\n';
}

void run_experiment(const CommonOpts& opts, const std::string& kind) {
    auto cfg = load_config(opts);
    auto out_dir = resolve_out(opts, cfg);
    std::vector<std::int64_t> ns = cfg.sweep_n;
    if (ns.empty()) ns.push_back(cfg.scaling.n);

    std::vector<hlab::ResultRow> rows;
    for (auto n : ns) {
        hlab::ScalingParams p = cfg.scaling;
        p.n = n;
        std::vector<hlab::ResultRow> batch;
        if (kind == "thm1") {
            batch = hlab::thm1_residuals(p, cfg.v0_profile());
        } else if (kind == "thm2") {
            batch = hlab::thm2_statistics(p, cfg.v0_profile(), cfg.phi_profile());
        } else if (kind == "thm3") {
            batch = hlab::thm3_residuals(p, cfg.v0_profile());
        } else if (kind == "thm4") {
            batch = hlab::thm4_residuals(p, cfg.v0_profile(), cfg.thm4_kase);
        } else if (kind == "benchmark") {
            std::int64_t k_n = cfg.benchmark_k_n
                                   ? *cfg.benchmark_k_n
                                   : hlab::translation(n, p.nu, p.q, p.t);
            batch = hlab::benchmark_residuals(p, cfg.v0_profile(), k_n);
        } else {
            throw hlab::config_error("unknown experiment kind: " + kind);
        }
        rows.insert(rows.end(), batch.begin(), batch.end());
    }
    auto summaries = hlab::summarize(rows);
    {
        auto csv = open_csv(out_dir / (kind + "_rows.csv"));
        hlab::write_rows_csv(csv, rows);
    }
    {
        auto csv = open_csv(out_dir / (kind + "_summary.csv"));
        hlab::write_summary_csv(csv, summaries);
    }
    for (const auto& s : summaries)
        std::cout << kind << " n=" << s.n << ": replicas=" << s.replicas
                  << " mean_residual=" << hlab::fmt_shortest(s.residual.mean)
                  << " se=" << hlab::fmt_shortest(s.residual.se)
                  << " mean|residual|=" << hlab::fmt_shortest(s.abs_residual.mean)
                  << '\n';
}

int run_selftest() {
    int failures = 0;
    auto report = [&](const char* name, bool ok, const std::string& detail = "") {
        std::cout << (ok ? "[ok]   " : "[FAIL] ") << name;
        if (!ok && !detail.empty()) std::cout << ": " << detail;
        std::cout << '\n';
        if (!ok) ++failures;
    };

    {
        // patience sweep against exhaustive search on small sets
        bool ok = true;
        hlab::SplitMix64 rng(41);
        for (int c = 0; c < 200 && ok; ++c) {
            std::vector<hlab::PlanarPoint> pts;
            int m = static_cast<int>(rng.next() % 11);
            for (int i = 0; i < m; ++i)
                pts.push_back({rng.uniform01() * 10.0, rng.uniform01() * 10.0});
            ok = hlab::lis_length(pts) == hlab::lis_length_bruteforce(pts);
        }
        report("lis vs bruteforce (200 cases)", ok);
    }
    {
        // feasible width is attained and tight
        bool ok = true;
        for (int c = 0; c < 50 && ok; ++c) {
            hlab::PointStore store(1000 + c);
            auto w = hlab::gamma(store, {0.0, 0.0}, 4, 2.0, 50.0);
            if (w.is_infinite()) continue;
            auto in = store.collect_sorted_x({0.0, w.value(), 0.0, 2.0});
            ok = hlab::lis_length(in) >= 4;
            if (ok) {
                auto below = store.collect_sorted_x(
                    {0.0, std::nextafter(w.value(), 0.0), 0.0, 2.0});
                ok = hlab::lis_length(below) < 4;
            }
        }
        report("gamma inverse relation (50 cases)", ok);
    }
    {
        bool ok = hlab::rate_I(2.0).value == 0.0 &&
                  std::abs(hlab::rate_I(2.0 * std::cosh(1.0)).value - 4.0 / std::exp(1.0)) <= 1e-12;
        report("rate function identities", ok);
    }
    {
        bool ok = true;
        for (int c = 0; c < 5 && ok; ++c) {
            hlab::SplitMix64 rng(500 + c);
            hlab::ParticleConfig z0;
            z0.i_min = 0;
            double pos = 0.0;
            for (int i = 0; i < 50; ++i) {
                pos += rng.exponential(1.0);
                z0.positions.push_back(pos);
            }
            hlab::PointStore store(900 + c);
            auto ed = hlab::evolve_event_driven(z0, store, 2.0);
            std::vector<std::int64_t> labels(50);
            for (int i = 0; i < 50; ++i) labels[i] = i;
            auto vr = hlab::evolve_variational(z0, store, 2.0, labels,
                                               hlab::WindowPolicy::exhaustive());
            for (int i = 0; i < 50 && ok; ++i) ok = ed.positions[i] == vr.positions[i];
        }
        report("event-driven equals variational (5 cases)", ok);
    }
    {
        bool ok = true;
        for (int c = 0; c < 5 && ok; ++c) {
            hlab::SplitMix64 rng(700 + c);
            hlab::ParticleConfig z0;
            z0.i_min = 0;
            double pos = 0.0;
            for (int i = 0; i < 40; ++i) {
                pos += rng.exponential(1.0);
                z0.positions.push_back(pos);
            }
            hlab::PointStore store(800 + c);
            ok = hlab::scaling_covariance_check(z0, store, 3.0, 2.0);
        }
        report("scaling covariance at lambda=2 (5 cases)", ok);
    }
    {
        // closed-form minimization against a dense grid
        bool ok = true;
        hlab::SplitMix64 rng(77);
        for (int c = 0; c < 50 && ok; ++c) {
            std::vector<double> xs, vals;
            double x = -3.0, v = rng.uniform(-1.0, 1.0);
            for (int b = 0; b < 5; ++b) {
                xs.push_back(x);
                vals.push_back(v);
                x += 0.5 + rng.uniform01();
                v += rng.uniform(-2.0, 2.0);
            }
            hlab::PiecewiseLinearFn V0{xs, vals, rng.uniform(-1.0, 1.0),
                                       rng.uniform(-1.0, 1.0)};
            double qx = rng.uniform(-4.0, 4.0), qt = 0.2 + rng.uniform01();
            auto hl = hlab::hopf_lax(V0, qx, qt);
            double lip = V0.lipschitz();
            double rad = 2.0 * qt * lip + 8.0, best = hl.value + 1.0;
            for (int g = 0; g <= 20000; ++g) {
                double yy = qx - rad + 2.0 * rad * g / 20000.0;
                best = std::min(best, V0.eval(yy) + (qx - yy) * (qx - yy) / (4.0 * qt));
            }
            ok = hl.value <= best + 1e-9;
        }
        report("hopf-lax vs dense grid (50 cases)", ok);
    }
    {
        hlab::RunConfig cfg;
        cfg.scaling.n = 123;
        cfg.sweep_n = {50, 100};
        cfg.benchmark_k_n = 77;
        bool ok = false;
        std::string detail;
        try {
            ok = hlab::parse_config(hlab::render_config(cfg)) == cfg;
        } catch (const std::exception& e) {
            detail = e.what();
        }
        report("config render/parse round trip", ok, detail);
    }

    std::cout << "selftest: " << (failures == 0 ? "all checks passed" : "FAILURES") << '\n';
    return failures == 0 ? 0 : 4;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"hammersley-lab: stick process and Hammersley particle toolkit"};
    app.require_subcommand(1);

    CommonOpts opts;
    std::string experiment_kind;

    auto* lis = app.add_subcommand("lis", "longest increasing sequence in a square box");
    add_common(lis, opts);
    auto* gam = app.add_subcommand("gamma", "minimal width holding an increasing sequence");
    add_common(gam, opts);
    auto* evo = app.add_subcommand("evolve", "event-driven particle evolution with snapshots");
    add_common(evo, opts);
    auto* stk = app.add_subcommand("sticks", "sample or directly simulate stick heights");
    add_common(stk, opts);
    auto* bur = app.add_subcommand("burgers", "solution field of the scalar conservation law");
    add_common(bur, opts);
    auto* exp_cmd = app.add_subcommand("experiment", "Monte-Carlo scaling experiments");
    exp_cmd->add_option("kind", experiment_kind, "thm1|thm2|thm3|thm4|benchmark")
        ->required()
        ->check(CLI::IsMember({"thm1", "thm2", "thm3", "thm4", "benchmark"}));
    add_common(exp_cmd, opts);
    auto* self = app.add_subcommand("selftest", "run the built-in oracle checks");
    add_common(self, opts);

    try {
        app.parse(argc, argv);
        if (lis->parsed()) run_lis(opts);
        else if (gam->parsed()) run_gamma(opts);
        else if (evo->parsed()) run_evolve(opts);
        else if (stk->parsed()) run_sticks(opts);
        else if (bur->parsed()) run_burgers(opts);
        else if (exp_cmd->parsed()) run_experiment(opts, experiment_kind);
        else if (self->parsed()) return run_selftest();
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    } catch (const hlab::config_error& e) {
        std::cerr << "config error:\n" << e.what() << '\n';
        return 2;
    } catch (const hlab::window_exhausted& e) {
        std::cerr << "window exhausted: " << e.what() << '\n';
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 4;
    }
    return 0;
}
