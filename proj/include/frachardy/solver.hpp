#pragma once

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "frachardy/grid.hpp"
#include "frachardy/nonlocal.hpp"

namespace frachardy {

struct BacktrackRule {
    double initial_step = 1.0;
    double shrink = 0.5;
    double sufficient_decrease = 1e-4;
};

/// Configuration of the supersolution-constructing minimization: the
/// lambda level, the source ball B compactly contained in Omega, and
/// the descent controls.
struct SolverConfig {
    double lambda = 0.0;
    Point ball_center{0.5, 0.0};
    double ball_radius = 0.25;
    int max_iters = 50000;
    double grad_tol = 1e-7;          // weighted max-norm max_i |g_i| / w_i
    BacktrackRule step_rule;
    double energy_floor = -1e6;      // below this the functional is declared unbounded
    double seminorm_ceiling = 1e12;  // iterate blow-up guard

    void validate(const DomainSpec& domain) const {
        if (!(lambda >= 0.0)) throw std::invalid_argument("SolverConfig: lambda must be >= 0");
        if (!(grad_tol > 0.0)) throw std::invalid_argument("SolverConfig: grad_tol must be > 0");
        if (!(ball_radius > 0.0))
            throw std::invalid_argument("SolverConfig: ball_radius must be > 0");
        if (!domain.contains(ball_center) ||
            !(distance_to_boundary(domain, ball_center) > ball_radius))
            throw std::invalid_argument(
                "SolverConfig: ball closure must be compactly contained in Omega");
    }
};

inline SolverConfig default_solver_config(const DomainSpec& domain) {
    SolverConfig cfg;
    if (domain.dimension == 1) {
        const Interval* widest = &domain.intervals.front();
        for (const auto& iv : domain.intervals)
            if (iv.length() > widest->length()) widest = &iv;
        cfg.ball_center = {0.5 * (widest->a + widest->b), 0.0};
    } else {
        cfg.ball_center = {0.5 * (domain.rectangle[0].a + domain.rectangle[0].b),
                           0.5 * (domain.rectangle[1].a + domain.rectangle[1].b)};
    }
    cfg.ball_radius = 0.5 * domain.inradius();
    return cfg;
}

inline bool in_ball(const Grid& g, int i, const SolverConfig& cfg) {
    const auto& x = g.nodes[static_cast<std::size_t>(i)];
    const double dx = x[0] - cfg.ball_center[0];
    const double dy = g.domain.dimension == 2 ? x[1] - cfg.ball_center[1] : 0.0;
    return std::hypot(dx, dy) < cfg.ball_radius;
}

enum class SolveStatus { converged, max_iters, diverged };

struct SolveResult {
    GridFunction minimizer;
    double energy = 0.0;
    double grad_residual = 0.0;
    int iterations = 0;
    SolveStatus status = SolveStatus::max_iters;
    bool strictly_positive = false;  // flagged, never silently accepted
};

namespace detail {

inline double ball_source_term(const GridFunction& u, const SolverConfig& cfg) {
    const Grid& g = *u.grid;
    std::vector<double> terms;
    for (int i = 0; i < g.size(); ++i)
        if (in_ball(g, i, cfg))
            terms.push_back(g.weights[static_cast<std::size_t>(i)] *
                            u.values[static_cast<std::size_t>(i)]);
    return pairwise_sum(terms);
}

}  // namespace detail

/// F_lambda(u) = (1/p)[u]^p - (lambda/p) int |u|^p/d^{sp} - int_B u.
inline double energy_F_lambda(const GridFunction& u, const KernelParams& params,
                              const SolverConfig& cfg) {
    cfg.validate(u.grid->domain);
    return gagliardo_seminorm_p(u, params) / params.p -
           cfg.lambda / params.p * hardy_denominator(u, params) -
           detail::ball_source_term(u, cfg);
}

/// Euler-Lagrange residual: g_i = w_i (a_i - lambda J_p(u_i)/d_i^{sp} - 1_B(x_i)).
inline GridFunction energy_gradient(const GridFunction& u, const KernelParams& params,
                                    const SolverConfig& cfg) {
    cfg.validate(u.grid->domain);
    const Grid& g = *u.grid;
    const double sp = params.sp();
    GridFunction grad(g);
    GridFunction a = frac_p_laplacian_action(u, params);
    for (int i = 0; i < g.size(); ++i) {
        const auto ii = static_cast<std::size_t>(i);
        grad.values[ii] =
            g.weights[ii] * (a.values[ii] -
                             cfg.lambda * j_p(params, u.values[ii]) / std::pow(g.dist[ii], sp) -
                             (in_ball(g, i, cfg) ? 1.0 : 0.0));
    }
    return grad;
}

/// Backtracking gradient descent with Barzilai-Borwein step proposals.
/// Divergence (energy sinking through the floor or iterate blow-up)
/// signals that lambda sits at or above the discrete Hardy constant.
inline SolveResult minimize_F_lambda(const KernelParams& params, const SolverConfig& cfg,
                                     const Grid& grid) {
    params.validate();
    cfg.validate(grid.domain);
    const int n = grid.size();

    bool ball_has_nodes = false;
    for (int i = 0; i < n && !ball_has_nodes; ++i) ball_has_nodes = in_ball(grid, i, cfg);
    if (!ball_has_nodes)
        throw std::invalid_argument("minimize_F_lambda: ball contains no grid nodes");

    auto energy_of = [&](const GridFunction& u) {
        return gagliardo_seminorm_p(u, params) / params.p -
               cfg.lambda / params.p * hardy_denominator(u, params) -
               detail::ball_source_term(u, cfg);
    };

    // Start from the ball indicator, scaled down until the linear term
    // dominates and the energy is negative.
    GridFunction u(grid);
    for (int i = 0; i < n; ++i)
        u.values[static_cast<std::size_t>(i)] = in_ball(grid, i, cfg) ? 1.0 : 0.0;
    double f = energy_of(u);
    for (int k = 0; k < 80 && !(f < 0.0); ++k) {
        for (auto& v : u.values) v *= 0.5;
        f = energy_of(u);
    }

    SolveResult out;
    std::vector<double> dir(static_cast<std::size_t>(n), 0.0);
    std::vector<double> prev_u, prev_dir;
    double step = cfg.step_rule.initial_step;
    // Nonmonotone reference window: BB steps need room to overshoot.
    std::vector<double> recent_f;
    const std::size_t window = 10;

    const double sp = params.sp();
    std::vector<double> grad_vals(static_cast<std::size_t>(n));
    for (int iter = 0; iter < cfg.max_iters; ++iter) {
        // One action pass yields the gradient, the seminorm (via the
        // pairing identity), and hence the current energy.
        GridFunction a = frac_p_laplacian_action(u, params);
        std::vector<double> pair_terms(static_cast<std::size_t>(n));
        for (int i = 0; i < n; ++i) {
            const auto ii = static_cast<std::size_t>(i);
            pair_terms[ii] = grid.weights[ii] * a.values[ii] * u.values[ii];
            grad_vals[ii] = grid.weights[ii] *
                            (a.values[ii] -
                             cfg.lambda * j_p(params, u.values[ii]) / std::pow(grid.dist[ii], sp) -
                             (in_ball(grid, i, cfg) ? 1.0 : 0.0));
        }
        const double seminorm_p = pairwise_sum(pair_terms);
        f = seminorm_p / params.p - cfg.lambda / params.p * hardy_denominator(u, params) -
            detail::ball_source_term(u, cfg);

        double residual = 0.0;
        for (int i = 0; i < n; ++i) {
            const auto ii = static_cast<std::size_t>(i);
            dir[ii] = -grad_vals[ii] / grid.weights[ii];
            residual = std::max(residual, std::abs(dir[ii]));
        }
        out.iterations = iter;
        out.grad_residual = residual;
        if (residual <= cfg.grad_tol) {
            out.status = SolveStatus::converged;
            break;
        }
        if (f < cfg.energy_floor || seminorm_p > cfg.seminorm_ceiling) {
            out.status = SolveStatus::diverged;
            break;
        }
        recent_f.push_back(f);
        if (recent_f.size() > window) recent_f.erase(recent_f.begin());
        const double f_ref = *std::max_element(recent_f.begin(), recent_f.end());

        // BB1 step from the previous accepted move, with safeguards.
        if (!prev_u.empty()) {
            double num = 0.0, den = 0.0;
            for (int i = 0; i < n; ++i) {
                const auto ii = static_cast<std::size_t>(i);
                const double du = u.values[ii] - prev_u[ii];
                const double dg = -dir[ii] + prev_dir[ii];
                num += du * du;
                den += du * dg;
            }
            if (den > 0.0 && num > 0.0) step = num / den;
            else step *= 2.0;
        }
        step = std::clamp(step, 1e-14, 1e10);

        double slope = 0.0;  // <grad, dir>
        for (int i = 0; i < n; ++i) {
            const auto ii = static_cast<std::size_t>(i);
            slope += grad_vals[ii] * dir[ii];
        }

        prev_u = u.values;
        prev_dir = dir;

        GridFunction trial(grid);
        double t = step;
        bool accepted = false;
        for (int bt = 0; bt < 80; ++bt) {
            for (int i = 0; i < n; ++i) {
                const auto ii = static_cast<std::size_t>(i);
                trial.values[ii] = u.values[ii] + t * dir[ii];
            }
            const double ft = energy_of(trial);
            if (ft <= f_ref + cfg.step_rule.sufficient_decrease * t * slope) {
                u.values = trial.values;
                f = ft;
                step = t;
                accepted = true;
                break;
            }
            t *= cfg.step_rule.shrink;
        }
        if (!accepted) {
            // Line search exhausted: no further measurable descent.
            out.status = SolveStatus::max_iters;
            break;
        }
    }

    // The absolute value never increases the energy; take it once at the end.
    for (auto& v : u.values) v = std::abs(v);
    out.minimizer = u;
    out.energy = energy_of(u);
    double min_v = std::numeric_limits<double>::infinity();
    for (double v : u.values) min_v = std::min(min_v, v);
    out.strictly_positive = min_v > 0.0;
    return out;
}

}  // namespace frachardy
