#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <random>

#include "frachardy/config.hpp"
#include "frachardy/report.hpp"
#include "oracles.hpp"

using namespace frachardy;

namespace {
std::string temp_path(const std::string& name) {
    return (std::filesystem::temp_directory_path() / name).string();
}
}  // namespace

TEST_CASE("config parsing fills defaults") {
    RunConfig cfg = parse_config("s=0.5 p=2 intervals=[[0,1]] mode=bisect");
    CHECK(cfg.mode == RunMode::bisect);
    CHECK(cfg.params.s == 0.5);
    CHECK(cfg.params.p == 2.0);
    CHECK(cfg.params.dim == 1);
    CHECK(cfg.n == 64);
    CHECK(cfg.bisect.rel_gap_target == 1e-3);
    // default ball: concentric, half the inradius
    CHECK(cfg.bisect.solver.ball_center[0] == doctest::Approx(0.5));
    CHECK(cfg.bisect.solver.ball_radius == doctest::Approx(0.25));
}

TEST_CASE("config parsing: 2d geometry run") {
    RunConfig cfg = parse_config("rectangle=[[0,1],[0,2]] mode=geometry alpha=0.5");
    CHECK(cfg.mode == RunMode::geometry);
    CHECK(cfg.domain.dimension == 2);
    CHECK(cfg.domain.rectangle[1].b == doctest::Approx(2.0));
    CHECK(cfg.alpha == doctest::Approx(0.5));
    CHECK(cfg.params.dim == 2);
}

TEST_CASE("config validation messages") {
    CHECK_THROWS_WITH_AS(parse_config("s=1.5"), "config: s must lie in (0,1)",
                         std::invalid_argument);
    CHECK_THROWS_WITH_AS(parse_config("p=1"), "config: p must lie in (1,inf)",
                         std::invalid_argument);
    CHECK_THROWS_AS(parse_config("n=1"), std::invalid_argument);
    CHECK_THROWS_AS(parse_config("mode=paint"), std::invalid_argument);
    CHECK_THROWS_AS(parse_config("intervals=[[1,0]]"), std::invalid_argument);
    CHECK_THROWS_AS(parse_config("bogus"), std::invalid_argument);
}

TEST_CASE("unknown keys are rejected by name") {
    try {
        parse_config("s=0.5 flavor=mint sprinkles=true");
        FAIL("expected an exception");
    } catch (const std::invalid_argument& e) {
        const std::string msg = e.what();
        CHECK(msg.find("unknown keys") != std::string::npos);
        CHECK(msg.find("flavor") != std::string::npos);
        CHECK(msg.find("sprinkles") != std::string::npos);
        CHECK(msg.find("s=") == std::string::npos);
    }
}

TEST_CASE("later assignments override and comments are ignored") {
    RunConfig cfg = parse_config(
        "# base settings\n"
        "s=0.3 n=16\n"
        "s=0.7  # override wins\n");
    CHECK(cfg.params.s == 0.7);
    CHECK(cfg.n == 16);
}

TEST_CASE("explicit ball settings survive parsing") {
    RunConfig cfg = parse_config("intervals=[[0,4]] ball_center=1.0 ball_radius=0.5");
    CHECK(cfg.ball_given);
    CHECK(cfg.bisect.solver.ball_center[0] == doctest::Approx(1.0));
    CHECK(cfg.bisect.solver.ball_radius == doctest::Approx(0.5));
    // ball sticking out of the domain is rejected at parse time
    CHECK_THROWS_AS(parse_config("intervals=[[0,1]] ball_center=0.9 ball_radius=0.5"),
                    std::invalid_argument);
}

TEST_CASE("config echo carries the run description") {
    RunConfig cfg = parse_config("s=0.4 p=3 intervals=[[0,1],[2,4]] mode=bisect seed=9");
    nlohmann::json j = cfg.echo();
    CHECK(j["s"] == 0.4);
    CHECK(j["p"] == 3.0);
    CHECK(j["mode"] == "bisect");
    CHECK(j["seed"] == 9);
    CHECK(j["domain"]["intervals"].size() == 2);
}

TEST_CASE("bracket serialization carries the full schema") {
    KernelParams prm{0.5, 2.0, 1};
    DomainSpec unit = DomainSpec::interval_union({{0.0, 1.0}});
    BisectConfig cfg;
    cfg.n = 16;
    cfg.solver = default_solver_config(unit);
    HardyBracket br = bracket_hardy_constant(unit, prm, cfg);
    nlohmann::json j = bracket_to_json(br);
    for (const char* key : {"lambda_lo", "lambda_hi", "gap", "n", "h", "s", "p", "domain",
                            "residuals", "worst_node", "conclusive"})
        CHECK(j.contains(key));
    CHECK(j["gap"].get<double>() ==
          doctest::Approx(j["lambda_hi"].get<double>() - j["lambda_lo"].get<double>()));
    CHECK(j["residuals"].contains("supersolution"));
    CHECK(j["residuals"].contains("picone"));
}

TEST_CASE("result records round-trip through files") {
    ResultRecord rec;
    rec.config = parse_config("s=0.5 intervals=[[0,1]]").echo();
    rec.result = {{"lambda_lo", 2.25}, {"lambda_hi", 2.28}};
    rec.wall_time_s = 0.125;
    const std::string path = temp_path("frachardy_record_test.json");
    emit_json(rec, path);
    std::ifstream in(path);
    REQUIRE(in.good());
    nlohmann::json back = nlohmann::json::parse(in);
    CHECK(back["config"] == rec.config);
    CHECK(back["result"] == rec.result);
    CHECK(back["version"] == "frachardy 0.1.0");
    std::remove(path.c_str());
    CHECK_THROWS_AS(emit_json(rec, "/nonexistent-dir/x.json"), std::runtime_error);
}

TEST_CASE("reruns with a fixed seed are identical modulo wall time") {
    const std::string doc = "s=0.5 p=2 intervals=[[0,1]] n=24 mode=bisect seed=5";
    auto run = [&]() {
        RunConfig cfg = parse_config(doc);
        HardyBracket br = bracket_hardy_constant(cfg.domain, cfg.params, cfg.bisect);
        ResultRecord rec;
        rec.config = cfg.echo();
        rec.result = bracket_to_json(br);
        rec.wall_time_s = -1.0;  // scrubbed
        return rec.to_json().dump();
    };
    CHECK(run() == run());
}

TEST_CASE("witness csv round trip against the grid") {
    KernelParams prm{0.5, 2.0, 1};
    DomainSpec two = DomainSpec::interval_union({{0.0, 1.0}, {2.0, 4.0}});
    Grid g = make_grid(two, prm, 12);
    std::mt19937_64 rng(71);
    std::uniform_real_distribution<double> dist(0.1, 2.0);
    GridFunction u(g);
    for (auto& v : u.values) v = dist(rng);

    const std::string path = temp_path("frachardy_witness_test.csv");
    write_text_file(path, witness_to_csv(u));
    GridFunction back = witness_from_csv(g, path);
    for (std::size_t i = 0; i < u.values.size(); ++i)
        CHECK(back.values[i] == doctest::Approx(u.values[i]).epsilon(1e-15));

    // a witness written on a different grid is rejected
    Grid other = make_grid(two, prm, 13);
    CHECK_THROWS_AS(witness_from_csv(other, path), std::runtime_error);
    std::remove(path.c_str());
    CHECK_THROWS_AS(witness_from_csv(g, "/nonexistent/witness.csv"), std::runtime_error);
}

TEST_CASE("refinement csv table has one row per level") {
    KernelParams prm{0.5, 2.0, 1};
    DomainSpec unit = DomainSpec::interval_union({{0.0, 1.0}});
    BisectConfig cfg;
    cfg.solver = default_solver_config(unit);
    cfg.refinement_levels = {8, 16};
    auto table = refinement_study(unit, prm, cfg);
    const std::string csv = brackets_to_csv(table);
    std::size_t rows = std::count(csv.begin(), csv.end(), '\n');
    CHECK(rows == table.size() + 1);
    CHECK(csv.rfind("level,n,h,lambda_lo,lambda_hi,gap,residual\n", 0) == 0);
}
