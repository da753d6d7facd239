#pragma once

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "frachardy/certificate.hpp"
#include "frachardy/solver.hpp"

namespace frachardy {

struct BisectConfig {
    double lambda_min = 0.0;
    double lambda_max = -1.0;  // < 0: start from the Rayleigh trial sweep
    int max_bisections = 60;
    double rel_gap_target = 1e-3;
    int n = 64;  // grid size
    SolverConfig solver;       // template; lambda is overwritten per probe
    std::vector<int> refinement_levels;

    void validate() const {
        if (lambda_max >= 0.0 && !(lambda_min < lambda_max))
            throw std::invalid_argument("BisectConfig: lambda_min must be < lambda_max");
        if (!(rel_gap_target > 0.0))
            throw std::invalid_argument("BisectConfig: rel_gap_target must be > 0");
        if (max_bisections < 1)
            throw std::invalid_argument("BisectConfig: max_bisections must be >= 1");
    }
};

/// Sweeps lambda by bisection: converged solves yield certified lower
/// bounds, diverged solves and Rayleigh quotients of iterates push the
/// upper bound down. Every reported lambda_lo carries a verified
/// certificate.
inline HardyBracket bracket_hardy_constant(const DomainSpec& domain,
                                           const KernelParams& params,
                                           const BisectConfig& cfg) {
    cfg.validate();
    params.validate();
    // Work in inradius-normalized coordinates: lambda is exactly dilation
    // invariant, so dilated domains produce identical brackets.
    const double scale = domain.inradius();
    const DomainSpec normalized = domain.dilated(1.0 / scale);
    SolverConfig solver = cfg.solver;
    solver.validate(domain);
    solver.ball_center = {solver.ball_center[0] / scale, solver.ball_center[1] / scale};
    solver.ball_radius /= scale;

    auto grid_ptr = std::make_shared<Grid>(make_grid(normalized, params, cfg.n));
    const Grid& grid = *grid_ptr;

    HardyBracket bracket;
    bracket.params = params;
    bracket.n = cfg.n;
    bracket.h = grid.spacing * scale;
    bracket.domain = domain;
    bracket.grid = grid_ptr;

    // Constant witness: certifies a strictly positive floor.
    GridFunction ones(grid, 1.0);
    Certificate base = certify_lower_bound(ones, params);
    bracket.lambda_lo = std::max(cfg.lambda_min, base.lambda_lo);
    bracket.best_certificate = base;

    // Upper bound from the trial sweep.
    auto trials = default_trial_family(grid);
    RayleighResult ray = upper_bound_rayleigh(trials, params);
    bracket.lambda_hi = ray.value;
    if (cfg.lambda_max >= 0.0) bracket.lambda_hi = std::min(bracket.lambda_hi, cfg.lambda_max);
    if (bracket.lambda_hi < bracket.lambda_lo) {
        // A quotient can never undercut a certified bound; equalize defensively.
        bracket.lambda_hi = bracket.lambda_lo;
    }

    bool any_success = false;
    int stalls = 0;
    for (int it = 0; it < cfg.max_bisections; ++it) {
        if (bracket.gap() <= cfg.rel_gap_target * bracket.lambda_hi) break;
        const double mid = 0.5 * (bracket.lambda_lo + bracket.lambda_hi);
        solver.lambda = mid;
        SolveResult res = minimize_F_lambda(params, solver, grid);

        ProbeLog log;
        log.lambda = mid;
        log.status = res.status;
        log.energy = res.energy;
        log.iterations = res.iterations;

        bool moved = false;
        if (res.strictly_positive) {
            Certificate cert = certify_lower_bound(res.minimizer, params);
            SupersolutionReport rep =
                verify_weak_supersolution(res.minimizer, cert.lambda_lo, params, 0.0);
            rep.pass = rep.min_residual >= -1e-12 * rep.pairing_scale;
            if (rep.pass && cert.lambda_lo > bracket.lambda_lo) {
                bracket.lambda_lo = cert.lambda_lo;
                bracket.best_certificate = cert;
                any_success = true;
                moved = true;
            }
            log.certified = cert.lambda_lo;
        }
        // The final iterate is a legitimate trial function either way.
        double den = hardy_denominator(res.minimizer, params);
        if (den > 0.0) {
            const double q = hardy_quotient(res.minimizer, params);
            log.quotient = q;
            if (q < bracket.lambda_hi) {
                bracket.lambda_hi = std::max(bracket.lambda_lo, q);
                moved = true;
            }
        }
        if (res.status == SolveStatus::diverged && mid < bracket.lambda_hi) {
            bracket.lambda_hi = std::max(bracket.lambda_lo, mid);
            moved = true;
        }
        bracket.provenance.push_back(log);
        if (!moved && ++stalls >= 3) break;  // repeated stalls shrink nothing
    }
    bracket.conclusive = any_success || bracket.gap() <= cfg.rel_gap_target * bracket.lambda_hi;
    return bracket;
}

/// One bracket per grid size, for self-convergence diagnostics.
inline std::vector<HardyBracket> refinement_study(const DomainSpec& domain,
                                                  const KernelParams& params,
                                                  const BisectConfig& cfg) {
    if (cfg.refinement_levels.empty())
        throw std::invalid_argument("refinement_study: refinement_levels must be nonempty");
    for (std::size_t i = 1; i < cfg.refinement_levels.size(); ++i)
        if (cfg.refinement_levels[i] <= cfg.refinement_levels[i - 1])
            throw std::invalid_argument("refinement_study: levels must be increasing");
    std::vector<HardyBracket> out;
    for (int level : cfg.refinement_levels) {
        BisectConfig c = cfg;
        c.n = level;
        out.push_back(bracket_hardy_constant(domain, params, c));
    }
    return out;
}

}  // namespace frachardy
