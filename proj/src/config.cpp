#include "hlab/config.hpp"

#include <charconv>
#include <map>
#include <sstream>

#include "hlab/errors.hpp"
#include "hlab/io.hpp"

namespace hlab {

PiecewiseLinearProfile RunConfig::v0_profile() const {
    return PiecewiseLinearProfile(v0_xs, v0_ys);
}

PiecewiseLinearProfile RunConfig::phi_profile() const {
    return PiecewiseLinearProfile(phi_xs, phi_ys);
}

namespace {

std::string trim(const std::string& s) {
    std::size_t a = s.find_first_not_of(" \t\r");
    if (a == std::string::npos) return {};
    std::size_t b = s.find_last_not_of(" \t\r");
    return s.substr(a, b - a + 1);
}

// Parsing helpers report through the collector so one bad line does not hide
// the rest of the file.
struct ErrorSink {
    std::vector<std::string> errors;
    int line = 0;

    void fail(const std::string& msg) {
        errors.push_back("line " + std::to_string(line) + ": " + msg);
    }
};

bool parse_double(const std::string& v, double& out) {
    const char* b = v.data();
    const char* e = b + v.size();
    auto [p, ec] = std::from_chars(b, e, out);
    return ec == std::errc() && p == e;
}

bool parse_i64(const std::string& v, std::int64_t& out) {
    const char* b = v.data();
    const char* e = b + v.size();
    auto [p, ec] = std::from_chars(b, e, out);
    return ec == std::errc() && p == e;
}

bool parse_u64(const std::string& v, std::uint64_t& out) {
    const char* b = v.data();
    const char* e = b + v.size();
    auto [p, ec] = std::from_chars(b, e, out);
    return ec == std::errc() && p == e;
}

template <typename T, bool (*Parse)(const std::string&, T&)>
bool parse_list(const std::string& v, std::vector<T>& out) {
    std::vector<T> vals;
    std::istringstream iss(v);
    std::string tok;
    while (iss >> tok) {
        T x;
        if (!Parse(tok, x)) return false;
        vals.push_back(x);
    }
    if (vals.empty()) return false;
    out = std::move(vals);
    return true;
}

} // namespace

RunConfig parse_config(const std::string& text) {
    RunConfig cfg;
    ErrorSink sink;
    std::map<std::string, int> first_line;

    auto set_d = [&](double& slot, const std::string& v) {
        double x;
        if (parse_double(v, x)) slot = x;
        else sink.fail("expected a real number, got '" + v + "'");
    };
    auto set_i = [&](std::int64_t& slot, const std::string& v) {
        std::int64_t x;
        if (parse_i64(v, x)) slot = x;
        else sink.fail("expected an integer, got '" + v + "'");
    };
    auto set_int = [&](int& slot, const std::string& v) {
        std::int64_t x;
        if (parse_i64(v, x)) slot = static_cast<int>(x);
        else sink.fail("expected an integer, got '" + v + "'");
    };
    auto set_u = [&](std::uint64_t& slot, const std::string& v) {
        std::uint64_t x;
        if (parse_u64(v, x)) slot = x;
        else sink.fail("expected an unsigned integer, got '" + v + "'");
    };
    auto set_dlist = [&](std::vector<double>& slot, const std::string& v) {
        if (!parse_list<double, parse_double>(v, slot))
            sink.fail("expected space-separated reals, got '" + v + "'");
    };
    auto set_ilist = [&](std::vector<std::int64_t>& slot, const std::string& v) {
        if (!parse_list<std::int64_t, parse_i64>(v, slot))
            sink.fail("expected space-separated integers, got '" + v + "'");
    };

    std::istringstream lines(text);
    std::string raw;
    while (std::getline(lines, raw)) {
        ++sink.line;
        std::string line = raw;
        if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        auto eq = line.find('=');
        if (eq == std::string::npos) {
            sink.fail("expected 'section.key = value'");
            continue;
        }
        std::string key = trim(line.substr(0, eq));
        std::string val = trim(line.substr(eq + 1));
        if (key.empty()) {
            sink.fail("empty key");
            continue;
        }
        if (auto it = first_line.find(key); it != first_line.end()) {
            sink.fail("duplicate key '" + key + "' (first set on line " +
                      std::to_string(it->second) + ")");
            continue;
        }
        first_line[key] = sink.line;

        if (key == "scaling.n") set_i(cfg.scaling.n, val);
        else if (key == "scaling.nu") set_d(cfg.scaling.nu, val);
        else if (key == "scaling.beta") set_d(cfg.scaling.beta, val);
        else if (key == "scaling.q") set_d(cfg.scaling.q, val);
        else if (key == "scaling.t") set_d(cfg.scaling.t, val);
        else if (key == "scaling.x") set_d(cfg.scaling.x, val);
        else if (key == "scaling.y") set_d(cfg.scaling.y, val);
        else if (key == "scaling.replicas") set_int(cfg.scaling.replicas, val);
        else if (key == "scaling.master_seed") set_u(cfg.scaling.master_seed, val);
        else if (key == "scaling.delta") set_d(cfg.scaling.delta, val);
        else if (key == "window.b") set_d(cfg.scaling.window_b, val);
        else if (key == "window.delta_w") set_d(cfg.scaling.window_delta_w, val);
        else if (key == "window.max_widenings") set_int(cfg.scaling.max_widenings, val);
        else if (key == "sweep.n_values") set_ilist(cfg.sweep_n, val);
        else if (key == "profile.v0_xs") set_dlist(cfg.v0_xs, val);
        else if (key == "profile.v0_ys") set_dlist(cfg.v0_ys, val);
        else if (key == "phi.xs") set_dlist(cfg.phi_xs, val);
        else if (key == "phi.ys") set_dlist(cfg.phi_ys, val);
        else if (key == "thm4.case") set_int(cfg.thm4_kase, val);
        else if (key == "benchmark.k_n") {
            std::int64_t x;
            if (parse_i64(val, x)) cfg.benchmark_k_n = x;
            else sink.fail("expected an integer, got '" + val + "'");
        } else if (key == "evolve.particles") set_i(cfg.evolve_particles, val);
        else if (key == "evolve.snapshots") set_dlist(cfg.evolve_snapshots, val);
        else if (key == "lis.s") set_d(cfg.lis_s, val);
        else if (key == "gamma.m") set_i(cfg.gamma_m, val);
        else if (key == "gamma.tau") set_d(cfg.gamma_tau, val);
        else if (key == "gamma.cap") set_d(cfg.gamma_cap, val);
        else if (key == "burgers.xs") set_dlist(cfg.burgers_xs, val);
        else if (key == "burgers.ts") set_dlist(cfg.burgers_ts, val);
        else if (key == "sticks.sites") set_i(cfg.sticks_sites, val);
        else if (key == "sticks.mode") cfg.sticks_mode = val;
        else if (key == "sticks.boundary") cfg.sticks_boundary = val;
        else if (key == "output.dir") cfg.output_dir = val;
        else sink.fail("unknown key '" + key + "'");
    }

    // cross-field checks; run only what earlier errors have not invalidated
    auto check = [&](const char* what, auto&& fn) {
        try {
            fn();
        } catch (const std::exception& e) {
            sink.errors.push_back(std::string(what) + ": " + e.what());
        }
    };
    bool v0_ok = true;
    check("profile.v0_xs/v0_ys", [&] {
        try {
            cfg.v0_profile();
        } catch (...) {
            v0_ok = false;
            throw;
        }
    });
    check("phi.xs/ys", [&] { cfg.phi_profile(); });
    if (v0_ok) check("scaling", [&] { cfg.scaling.validate(cfg.v0_profile()); });
    if (cfg.sticks_mode != "sample" && cfg.sticks_mode != "evolve")
        sink.errors.push_back("sticks.mode: must be 'sample' or 'evolve', got '" +
                              cfg.sticks_mode + "'");
    if (cfg.sticks_boundary != "open" && cfg.sticks_boundary != "closed")
        sink.errors.push_back("sticks.boundary: must be 'open' or 'closed', got '" +
                              cfg.sticks_boundary + "'");
    if (cfg.thm4_kase < 1 || cfg.thm4_kase > 3)
        sink.errors.push_back("thm4.case: must be 1, 2, or 3");
    for (auto n : cfg.sweep_n)
        if (n < 1) {
            sink.errors.push_back("sweep.n_values: entries must be >= 1");
            break;
        }

    if (!sink.errors.empty()) {
        std::string all;
        for (std::size_t i = 0; i < sink.errors.size(); ++i) {
            if (i) all += '\n';
            all += sink.errors[i];
        }
        throw config_error(all);
    }
    return cfg;
}

namespace {

std::string join_d(const std::vector<double>& v) {
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) s += ' ';
        s += fmt_shortest(v[i]);
    }
    return s;
}

std::string join_i(const std::vector<std::int64_t>& v) {
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) s += ' ';
        s += std::to_string(v[i]);
    }
    return s;
}

} // namespace

std::string render_config(const RunConfig& cfg) {
    std::ostringstream os;
    os << "scaling.n = " << cfg.scaling.n << '\n';
    os << "scaling.nu = " << fmt_shortest(cfg.scaling.nu) << '\n';
    os << "scaling.beta = " << fmt_shortest(cfg.scaling.beta) << '\n';
    os << "scaling.q = " << fmt_shortest(cfg.scaling.q) << '\n';
    os << "scaling.t = " << fmt_shortest(cfg.scaling.t) << '\n';
    os << "scaling.x = " << fmt_shortest(cfg.scaling.x) << '\n';
    os << "scaling.y = " << fmt_shortest(cfg.scaling.y) << '\n';
    os << "scaling.replicas = " << cfg.scaling.replicas << '\n';
    os << "scaling.master_seed = " << cfg.scaling.master_seed << '\n';
    os << "scaling.delta = " << fmt_shortest(cfg.scaling.delta) << '\n';
    os << "window.b = " << fmt_shortest(cfg.scaling.window_b) << '\n';
    os << "window.delta_w = " << fmt_shortest(cfg.scaling.window_delta_w) << '\n';
    os << "window.max_widenings = " << cfg.scaling.max_widenings << '\n';
    if (!cfg.sweep_n.empty()) os << "sweep.n_values = " << join_i(cfg.sweep_n) << '\n';
    os << "profile.v0_xs = " << join_d(cfg.v0_xs) << '\n';
    os << "profile.v0_ys = " << join_d(cfg.v0_ys) << '\n';
    os << "phi.xs = " << join_d(cfg.phi_xs) << '\n';
    os << "phi.ys = " << join_d(cfg.phi_ys) << '\n';
    os << "thm4.case = " << cfg.thm4_kase << '\n';
    if (cfg.benchmark_k_n) os << "benchmark.k_n = " << *cfg.benchmark_k_n << '\n';
    os << "evolve.particles = " << cfg.evolve_particles << '\n';
    os << "evolve.snapshots = " << join_d(cfg.evolve_snapshots) << '\n';
    os << "lis.s = " << fmt_shortest(cfg.lis_s) << '\n';
    os << "gamma.m = " << cfg.gamma_m << '\n';
    os << "gamma.tau = " << fmt_shortest(cfg.gamma_tau) << '\n';
    os << "gamma.cap = " << fmt_shortest(cfg.gamma_cap) << '\n';
    os << "burgers.xs = " << join_d(cfg.burgers_xs) << '\n';
    os << "burgers.ts = " << join_d(cfg.burgers_ts) << '\n';
    os << "sticks.sites = " << cfg.sticks_sites << '\n';
    os << "sticks.mode = " << cfg.sticks_mode << '\n';
    os << "sticks.boundary = " << cfg.sticks_boundary << '\n';
    if (!cfg.output_dir.empty()) os << "output.dir = " << cfg.output_dir << '\n';
    return os.str();
}

} // namespace hlab
