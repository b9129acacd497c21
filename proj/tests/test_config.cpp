#include <string>

#include "doctest.h"

#include "hlab/config.hpp"
#include "hlab/errors.hpp"

using namespace hlab;

namespace {

std::string parse_failure(const std::string& text) {
    try {
        parse_config(text);
    } catch (const config_error& e) {
        return e.what();
    }
    return {};
}

bool contains(const std::string& hay, const std::string& needle) {
    return hay.find(needle) != std::string::npos;
}

} // namespace

TEST_CASE("empty text yields the defaults") {
    RunConfig parsed = parse_config("");
    CHECK(parsed == RunConfig{});
    CHECK(parsed.scaling.n == 50);
    CHECK(parsed.sticks_mode == "sample");
    CHECK(!parsed.benchmark_k_n.has_value());
}

TEST_CASE("values, comments and whitespace") {
    RunConfig cfg = parse_config(
        "# comment line\n"
        "\n"
        "  scaling.n = 42   # trailing comment\n"
        "scaling.beta=0.3\n"
        "sweep.n_values = 50 100 200\n"
        "profile.v0_xs = -1 0 1\n"
        "profile.v0_ys = 0 0.4 0\n"
        "benchmark.k_n = 77\n"
        "sticks.mode = evolve\n"
        "output.dir = out/run1\n");
    CHECK(cfg.scaling.n == 42);
    CHECK(cfg.scaling.beta == 0.3);
    CHECK(cfg.sweep_n == std::vector<std::int64_t>{50, 100, 200});
    CHECK(cfg.v0_xs == std::vector<double>{-1.0, 0.0, 1.0});
    CHECK(cfg.benchmark_k_n == 77);
    CHECK(cfg.sticks_mode == "evolve");
    CHECK(cfg.output_dir == "out/run1");
    CHECK(cfg.v0_profile()(0.0) == 0.4);
    CHECK(cfg.phi_profile()(0.0) == 1.0);
}

TEST_CASE("render parses back to the identical value") {
    RunConfig cfg;
    cfg.scaling.n = 123;
    cfg.scaling.nu = 1.25;
    cfg.scaling.master_seed = 900719925474099167ULL;
    cfg.sweep_n = {50, 100};
    cfg.v0_xs = {-1.0, 0.0, 1.0};
    cfg.v0_ys = {0.0, 0.4, 0.0};
    cfg.thm4_kase = 2;
    cfg.benchmark_k_n = 77;
    cfg.sticks_mode = "evolve";
    cfg.sticks_boundary = "closed";
    cfg.output_dir = "results";
    RunConfig again = parse_config(render_config(cfg));
    CHECK(again == cfg);
    // defaults render and parse back too
    CHECK(parse_config(render_config(RunConfig{})) == RunConfig{});
}

TEST_CASE("every problem is reported with its line number") {
    std::string msg = parse_failure(
        "bogus.key = 1\n"
        "scaling.n = 10\n"
        "scaling.t = abc\n"
        "scaling.n = 11\n"
        "no equals sign here\n");
    CHECK(contains(msg, "line 1: unknown key 'bogus.key'"));
    CHECK(contains(msg, "line 3: expected a real number, got 'abc'"));
    CHECK(contains(msg, "line 4: duplicate key 'scaling.n' (first set on line 2)"));
    CHECK(contains(msg, "line 5: expected 'section.key = value'"));
}

TEST_CASE("list values reject junk") {
    CHECK(contains(parse_failure("sweep.n_values = 10 x 20\n"),
                   "expected space-separated integers"));
    CHECK(contains(parse_failure("burgers.xs =\n"), "expected space-separated reals"));
}

TEST_CASE("cross-field checks carry a key prefix") {
    CHECK(contains(parse_failure("profile.v0_xs = 0 1\n"), "profile.v0_xs/v0_ys:"));
    CHECK(contains(parse_failure("phi.xs = 0 1\nphi.ys = 1\n"), "phi.xs/ys:"));
    CHECK(contains(parse_failure("scaling.x = 0.5\nscaling.y = 0.25\n"),
                   "scaling: ScalingParams: need x < y"));
    CHECK(contains(parse_failure("sticks.mode = maybe\n"),
                   "sticks.mode: must be 'sample' or 'evolve', got 'maybe'"));
    CHECK(contains(parse_failure("sticks.boundary = porous\n"),
                   "sticks.boundary: must be 'open' or 'closed', got 'porous'"));
    CHECK(contains(parse_failure("thm4.case = 5\n"), "thm4.case: must be 1, 2, or 3"));
    CHECK(contains(parse_failure("sweep.n_values = 10 0\n"),
                   "sweep.n_values: entries must be >= 1"));
}

TEST_CASE("a broken v0 suppresses the dependent density check") {
    // x = y would normally fail the scaling check, but that check needs v0;
    // reporting it anyway would just echo the first problem
    std::string msg = parse_failure(
        "profile.v0_xs = 0 1\n"
        "scaling.x = 0.5\n"
        "scaling.y = 0.5\n");
    CHECK(contains(msg, "profile.v0_xs/v0_ys:"));
    CHECK(!contains(msg, "scaling:"));
}
