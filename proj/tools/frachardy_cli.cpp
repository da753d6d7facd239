// Command-line driver: estimate / certify / bisect / geometry / selftest.
//
// Exit codes: 0 success, 1 validation error, 2 numerical failure,
// 3 selftest failure.

#include <chrono>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "frachardy/frachardy.hpp"

namespace {

using namespace frachardy;

struct CliOverrides {
    std::string config_path;
    std::vector<std::string> assignments;  // raw key=value tokens, applied last
};

RunConfig load_config(const CliOverrides& cli, RunMode mode) {
    std::string text;
    if (!cli.config_path.empty()) {
        std::ifstream in(cli.config_path);
        if (!in) throw std::invalid_argument("cannot open config file: " + cli.config_path);
        std::stringstream ss;
        ss << in.rdbuf();
        text = ss.str();
    }
    text += "\nmode=" + to_string(mode) + "\n";
    for (const auto& kv : cli.assignments) text += kv + "\n";
    return parse_config(text);
}

void write_outputs(const RunConfig& cfg, ResultRecord& record, const std::string& csv) {
    if (!cfg.out_json.empty()) emit_json(record, cfg.out_json);
    if (!cfg.out_csv.empty() && !csv.empty()) write_text_file(cfg.out_csv, csv);
    std::cout << record.to_json().dump(2) << std::endl;
}

int run_estimate(const RunConfig& cfg) {
    const auto t0 = std::chrono::steady_clock::now();
    Grid grid = make_grid(cfg.domain, cfg.params, cfg.n);
    auto trials = default_trial_family(grid);
    RayleighResult sweep = upper_bound_rayleigh(trials, cfg.params);
    // The minimizer of F_lambda just below the sweep value approximates
    // the extremal and usually tightens the bound considerably.
    SolverConfig solver = cfg.bisect.solver;
    solver.lambda = 0.95 * sweep.value;
    SolveResult base = minimize_F_lambda(cfg.params, solver, grid);
    if (hardy_denominator(base.minimizer, cfg.params) > 0.0) trials.push_back(base.minimizer);
    RayleighResult ray = upper_bound_rayleigh(trials, cfg.params);

    ResultRecord record;
    record.config = cfg.echo();
    record.result = {{"lambda_hi", ray.value}, {"argmin_trial", ray.argmin}};
    record.wall_time_s =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    write_outputs(cfg, record, "");
    return 0;
}

int run_certify(const RunConfig& cfg) {
    const auto t0 = std::chrono::steady_clock::now();
    Grid grid = make_grid(cfg.domain, cfg.params, cfg.n);
    GridFunction witness;
    if (!cfg.witness_path.empty()) {
        witness = witness_from_csv(grid, cfg.witness_path);
    } else {
        SolverConfig solver = cfg.bisect.solver;
        if (cfg.lambda >= 0.0) {
            solver.lambda = cfg.lambda;
        } else {
            // At lambda = 0 the minimizer's ratio clamps to 0 up to solver
            // noise; a mildly positive level leaves the certificate slack.
            RayleighResult sweep =
                upper_bound_rayleigh(default_trial_family(grid), cfg.params);
            solver.lambda = 0.5 * sweep.value;
        }
        SolveResult res = minimize_F_lambda(cfg.params, solver, grid);
        if (!res.strictly_positive) {
            std::cerr << "certify: solver did not produce a strictly positive witness\n";
            return 2;
        }
        witness = res.minimizer;
    }
    Certificate cert = certify_lower_bound(witness, cfg.params);
    const double level = cfg.lambda >= 0.0 ? cfg.lambda : cert.lambda_lo;
    SupersolutionReport rep = verify_weak_supersolution(witness, level, cfg.params, 0.0);
    rep.pass = rep.min_residual >= -1e-12 * rep.pairing_scale;

    ResultRecord record;
    record.config = cfg.echo();
    record.result = {{"lambda_lo", cert.lambda_lo},
                     {"lambda", level},
                     {"verified", rep.pass},
                     {"min_residual", rep.min_residual},
                     {"pairing_scale", rep.pairing_scale},
                     {"worst_node", rep.worst_node},
                     {"picone_violation", cert.picone_violation},
                     {"clamped", cert.clamped}};
    record.wall_time_s =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    write_outputs(cfg, record, witness_to_csv(witness));
    return rep.pass ? 0 : 2;
}

int run_bisect(const RunConfig& cfg) {
    const auto t0 = std::chrono::steady_clock::now();
    ResultRecord record;
    record.config = cfg.echo();
    std::string csv;
    if (!cfg.bisect.refinement_levels.empty()) {
        auto table = refinement_study(cfg.domain, cfg.params, cfg.bisect);
        auto arr = nlohmann::json::array();
        for (const auto& b : table) arr.push_back(bracket_to_json(b));
        record.result = {{"levels", arr}};
        csv = brackets_to_csv(table);
        if (!table.back().conclusive) {
            record.result["status"] = "inconclusive";
        }
    } else {
        HardyBracket bracket = bracket_hardy_constant(cfg.domain, cfg.params, cfg.bisect);
        record.result = bracket_to_json(bracket);
        csv = brackets_to_csv({bracket});
        if (!bracket.conclusive) record.result["status"] = "inconclusive";
    }
    record.wall_time_s =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    write_outputs(cfg, record, csv);
    return 0;
}

int run_geometry(const RunConfig& cfg) {
    const auto t0 = std::chrono::steady_clock::now();
    ResultRecord record;
    record.config = cfg.echo();
    GeometryReport rep = geometry_report(cfg.domain, cfg.alpha);
    record.result = geometry_to_json(rep);
    record.wall_time_s =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    write_outputs(cfg, record, geometry_to_csv(rep));
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"two-sided bounds on the fractional (s,p)-Hardy constant"};
    app.require_subcommand(1);

    CliOverrides cli;
    RunMode mode = RunMode::bisect;

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--config", cli.config_path, "key=value config file");
        sub->add_option("--set", cli.assignments,
                        "key=value override (repeatable, wins over the file)");
    };
    add_common(app.add_subcommand("estimate", "Rayleigh upper bound from trial sweep")
                   ->callback([&] { mode = RunMode::estimate; }));
    add_common(app.add_subcommand("certify", "verify a supersolution certificate")
                   ->callback([&] { mode = RunMode::certify; }));
    add_common(app.add_subcommand("bisect", "bracket the discrete Hardy constant")
                   ->callback([&] { mode = RunMode::bisect; }));
    add_common(app.add_subcommand("geometry", "inradius/volume bounds from d^{-alpha}")
                   ->callback([&] { mode = RunMode::geometry; }));
    app.add_subcommand("selftest", "run the fixed-seed property suites")
        ->callback([&] { mode = RunMode::selftest; });

    CLI11_PARSE(app, argc, argv);

    if (mode == RunMode::selftest) {
        return frachardy::selftest(std::cout) ? 0 : 3;
    }

    frachardy::RunConfig cfg;
    try {
        cfg = load_config(cli, mode);
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    try {
        switch (cfg.mode) {
            case RunMode::estimate: return run_estimate(cfg);
            case RunMode::certify: return run_certify(cfg);
            case RunMode::bisect: return run_bisect(cfg);
            case RunMode::geometry: return run_geometry(cfg);
            default: break;
        }
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "numerical failure: " << e.what() << '\n';
        return 2;
    }
    return 0;
}
