#pragma once

#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "frachardy/bisect.hpp"
#include "frachardy/domain.hpp"
#include "frachardy/kernel.hpp"

namespace frachardy {

enum class RunMode { estimate, certify, bisect, geometry, selftest };

inline std::string to_string(RunMode m) {
    switch (m) {
        case RunMode::estimate: return "estimate";
        case RunMode::certify: return "certify";
        case RunMode::bisect: return "bisect";
        case RunMode::geometry: return "geometry";
        case RunMode::selftest: return "selftest";
    }
    return "?";
}

/// Fully validated run description: domain, kernel, grid sizes, mode,
/// solver/bisect settings, output paths and seed.
struct RunConfig {
    DomainSpec domain = DomainSpec::interval_union({{0.0, 1.0}});
    KernelParams params;
    RunMode mode = RunMode::bisect;
    int n = 64;
    std::vector<int> levels;        // refinement study grid sizes
    double alpha = 0.5;             // geometry mode exponent
    double lambda = -1.0;           // certify mode level; < 0 means unset
    std::string witness_path;       // optional witness CSV for certify
    BisectConfig bisect;
    unsigned long long seed = 1;
    std::string out_json;
    std::string out_csv;
    bool ball_given = false;

    nlohmann::json echo() const {
        nlohmann::json j;
        if (domain.dimension == 1) {
            auto arr = nlohmann::json::array();
            for (const auto& iv : domain.intervals) arr.push_back({iv.a, iv.b});
            j["domain"]["intervals"] = arr;
        } else {
            j["domain"]["rectangle"] = {{domain.rectangle[0].a, domain.rectangle[0].b},
                                        {domain.rectangle[1].a, domain.rectangle[1].b}};
        }
        j["s"] = params.s;
        j["p"] = params.p;
        j["mode"] = to_string(mode);
        j["n"] = n;
        if (!levels.empty()) j["levels"] = levels;
        if (mode == RunMode::geometry) j["alpha"] = alpha;
        if (lambda >= 0.0) j["lambda"] = lambda;
        j["seed"] = seed;
        j["rel_gap_target"] = bisect.rel_gap_target;
        j["max_bisections"] = bisect.max_bisections;
        j["ball_center"] = domain.dimension == 1
                               ? nlohmann::json{bisect.solver.ball_center[0]}
                               : nlohmann::json{bisect.solver.ball_center[0],
                                                bisect.solver.ball_center[1]};
        j["ball_radius"] = bisect.solver.ball_radius;
        j["grad_tol"] = bisect.solver.grad_tol;
        j["max_iters"] = bisect.solver.max_iters;
        return j;
    }
};

namespace detail {

inline const std::vector<std::string>& known_keys() {
    static const std::vector<std::string> keys = {
        "mode",       "s",           "p",          "n",          "levels",
        "intervals",  "rectangle",   "alpha",      "lambda",     "witness",
        "lambda_min", "lambda_max",  "max_bisections", "rel_gap_target",
        "ball_center", "ball_radius", "max_iters", "grad_tol",   "step_init",
        "step_shrink", "step_c1",    "seed",       "out_json",   "out_csv"};
    return keys;
}

inline std::vector<std::pair<std::string, nlohmann::json>> tokenize(const std::string& text) {
    std::vector<std::pair<std::string, nlohmann::json>> pairs;
    std::istringstream lines(text);
    std::string line;
    while (std::getline(lines, line)) {
        if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        std::istringstream words(line);
        std::string tok;
        while (words >> tok) {
            auto eq = tok.find('=');
            if (eq == std::string::npos)
                throw std::invalid_argument("config: expected key=value, got '" + tok + "'");
            std::string key = tok.substr(0, eq);
            std::string val = tok.substr(eq + 1);
            nlohmann::json parsed;
            try {
                parsed = nlohmann::json::parse(val);
            } catch (const nlohmann::json::parse_error&) {
                parsed = val;  // bare string
            }
            pairs.emplace_back(std::move(key), std::move(parsed));
        }
    }
    return pairs;
}

}  // namespace detail

/// Parses a whitespace-separated key=value document (values in JSON
/// syntax) into a validated RunConfig. Unknown keys are rejected by
/// name; later assignments override earlier ones, so command-line
/// overrides can simply be appended.
inline RunConfig parse_config(const std::string& text) {
    RunConfig cfg;
    bool domain_given = false;

    auto pairs = detail::tokenize(text);
    std::vector<std::string> unknown;
    for (const auto& [key, val] : pairs)
        if (std::find(detail::known_keys().begin(), detail::known_keys().end(), key) ==
            detail::known_keys().end())
            unknown.push_back(key);
    if (!unknown.empty()) {
        std::string msg = "config: unknown keys:";
        for (const auto& k : unknown) msg += " " + k;
        throw std::invalid_argument(msg);
    }

    for (const auto& [key, val] : pairs) {
        try {
            if (key == "mode") {
                const std::string m = val.get<std::string>();
                if (m == "estimate") cfg.mode = RunMode::estimate;
                else if (m == "certify") cfg.mode = RunMode::certify;
                else if (m == "bisect") cfg.mode = RunMode::bisect;
                else if (m == "geometry") cfg.mode = RunMode::geometry;
                else if (m == "selftest") cfg.mode = RunMode::selftest;
                else throw std::invalid_argument("config: unknown mode '" + m + "'");
            } else if (key == "s") {
                cfg.params.s = val.get<double>();
            } else if (key == "p") {
                cfg.params.p = val.get<double>();
            } else if (key == "n") {
                cfg.n = val.get<int>();
            } else if (key == "levels") {
                cfg.levels = val.get<std::vector<int>>();
            } else if (key == "intervals") {
                std::vector<Interval> pieces;
                for (const auto& pair : val)
                    pieces.push_back({pair.at(0).get<double>(), pair.at(1).get<double>()});
                cfg.domain = DomainSpec::interval_union(std::move(pieces));
                domain_given = true;
            } else if (key == "rectangle") {
                cfg.domain = DomainSpec::rect(
                    {val.at(0).at(0).get<double>(), val.at(0).at(1).get<double>()},
                    {val.at(1).at(0).get<double>(), val.at(1).at(1).get<double>()});
                domain_given = true;
            } else if (key == "alpha") {
                cfg.alpha = val.get<double>();
            } else if (key == "lambda") {
                cfg.lambda = val.get<double>();
            } else if (key == "witness") {
                cfg.witness_path = val.get<std::string>();
            } else if (key == "lambda_min") {
                cfg.bisect.lambda_min = val.get<double>();
            } else if (key == "lambda_max") {
                cfg.bisect.lambda_max = val.get<double>();
            } else if (key == "max_bisections") {
                cfg.bisect.max_bisections = val.get<int>();
            } else if (key == "rel_gap_target") {
                cfg.bisect.rel_gap_target = val.get<double>();
            } else if (key == "ball_center") {
                if (val.is_array() && val.size() == 2)
                    cfg.bisect.solver.ball_center = {val.at(0).get<double>(),
                                                     val.at(1).get<double>()};
                else
                    cfg.bisect.solver.ball_center = {val.is_array() ? val.at(0).get<double>()
                                                                    : val.get<double>(),
                                                     0.0};
                cfg.ball_given = true;
            } else if (key == "ball_radius") {
                cfg.bisect.solver.ball_radius = val.get<double>();
                cfg.ball_given = true;
            } else if (key == "max_iters") {
                cfg.bisect.solver.max_iters = val.get<int>();
            } else if (key == "grad_tol") {
                cfg.bisect.solver.grad_tol = val.get<double>();
            } else if (key == "step_init") {
                cfg.bisect.solver.step_rule.initial_step = val.get<double>();
            } else if (key == "step_shrink") {
                cfg.bisect.solver.step_rule.shrink = val.get<double>();
            } else if (key == "step_c1") {
                cfg.bisect.solver.step_rule.sufficient_decrease = val.get<double>();
            } else if (key == "seed") {
                cfg.seed = val.get<unsigned long long>();
            } else if (key == "out_json") {
                cfg.out_json = val.get<std::string>();
            } else if (key == "out_csv") {
                cfg.out_csv = val.get<std::string>();
            }
        } catch (const nlohmann::json::exception&) {
            throw std::invalid_argument("config: malformed value for key '" + key + "'");
        }
    }

    cfg.params.dim = cfg.domain.dimension;
    if (!(cfg.params.s > 0.0) || !(cfg.params.s < 1.0))
        throw std::invalid_argument("config: s must lie in (0,1)");
    if (!(cfg.params.p > 1.0))
        throw std::invalid_argument("config: p must lie in (1,inf)");
    if (cfg.n < 2) throw std::invalid_argument("config: n must be >= 2");
    cfg.params.validate();
    cfg.domain.validate();
    if (!cfg.ball_given) {
        SolverConfig def = default_solver_config(cfg.domain);
        cfg.bisect.solver.ball_center = def.ball_center;
        cfg.bisect.solver.ball_radius = def.ball_radius;
    }
    cfg.bisect.solver.validate(cfg.domain);
    cfg.bisect.n = cfg.n;
    if (!cfg.levels.empty()) cfg.bisect.refinement_levels = cfg.levels;
    cfg.bisect.validate();
    (void)domain_given;
    return cfg;
}

}  // namespace frachardy
