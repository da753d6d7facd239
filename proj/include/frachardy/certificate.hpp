#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

#include "frachardy/domain.hpp"
#include "frachardy/grid.hpp"
#include "frachardy/nonlocal.hpp"
#include "frachardy/solver.hpp"

namespace frachardy {

/// A positive grid function together with the minimum node ratio
/// d^{sp} ((-Delta_p)^s u) / u^{p-1}, which lower-bounds the discrete
/// Hardy constant: u is a weak supersolution at exactly that level.
struct Certificate {
    double lambda_lo = 0.0;
    GridFunction witness;
    int worst_node = -1;
    double supersolution_residual = 0.0;  // min pairing slack over the basis cone
    double picone_violation = 0.0;
    bool clamped = false;   // raw ratio was negative and was clamped to 0
    double raw_ratio = 0.0;
};

struct SupersolutionReport {
    double min_residual = 0.0;
    double pairing_scale = 0.0;
    int worst_node = -1;
    bool pass = false;
};

/// Checks the weak-supersolution inequality against every nonnegative
/// basis bump; by linearity this covers the whole nonnegative test cone.
inline SupersolutionReport verify_weak_supersolution(const GridFunction& u, double lambda,
                                                     const KernelParams& params,
                                                     double tol) {
    for (double v : u.values)
        if (!(v > 0.0))
            throw std::invalid_argument("verify_weak_supersolution: witness must be positive");
    const Grid& g = *u.grid;
    const double sp = params.sp();
    GridFunction a = frac_p_laplacian_action(u, params);
    SupersolutionReport rep;
    rep.min_residual = std::numeric_limits<double>::infinity();
    for (int i = 0; i < g.size(); ++i) {
        const auto ii = static_cast<std::size_t>(i);
        const double pairing = g.weights[ii] * a.values[ii];
        const double rhs =
            lambda * g.weights[ii] * j_p(params, u.values[ii]) / std::pow(g.dist[ii], sp);
        const double r = pairing - rhs;
        rep.pairing_scale = std::max(rep.pairing_scale, std::abs(pairing));
        if (r < rep.min_residual) {
            rep.min_residual = r;
            rep.worst_node = i;
        }
    }
    rep.pass = rep.min_residual >= -tol;
    return rep;
}

/// Max violation of the pointwise discrete Picone inequality over all
/// node pairs; nonpositive up to roundoff for every admissible (u, eta).
inline double picone_audit(const GridFunction& u, const GridFunction& eta,
                           const KernelParams& params) {
    for (double v : u.values)
        if (!(v > 0.0)) throw std::invalid_argument("picone_audit: u must be positive");
    for (double v : eta.values)
        if (!(v >= 0.0)) throw std::invalid_argument("picone_audit: eta must be nonnegative");
    if (u.size() != eta.size())
        throw std::logic_error("picone_audit: mismatched grid functions");
    const int n = u.size();
    const double p = params.p;
    double worst = -std::numeric_limits<double>::infinity();
    for (int i = 0; i < n; ++i) {
        const auto ii = static_cast<std::size_t>(i);
        const double qi = std::pow(eta.values[ii], p) / std::pow(u.values[ii], p - 1.0);
        for (int j = 0; j < n; ++j) {
            if (j == i) continue;
            const auto jj = static_cast<std::size_t>(j);
            const double qj = std::pow(eta.values[jj], p) / std::pow(u.values[jj], p - 1.0);
            const double lhs = j_p(params, u.values[ii] - u.values[jj]) * (qi - qj);
            const double rhs = std::pow(std::abs(eta.values[ii] - eta.values[jj]), p);
            worst = std::max(worst, lhs - rhs);
        }
    }
    return worst;
}

/// Certified lower bound from a positive witness. A negative raw ratio
/// is clamped to 0 (constants always certify lambda = 0) and flagged.
inline Certificate certify_lower_bound(const GridFunction& u, const KernelParams& params) {
    for (double v : u.values)
        if (!(v > 0.0))
            throw std::invalid_argument("certify_lower_bound: witness must be positive");
    const Grid& g = *u.grid;
    const double sp = params.sp();
    GridFunction a = frac_p_laplacian_action(u, params);

    Certificate cert;
    cert.witness = u;
    double best = std::numeric_limits<double>::infinity();
    for (int i = 0; i < g.size(); ++i) {
        const auto ii = static_cast<std::size_t>(i);
        const double ratio =
            std::pow(g.dist[ii], sp) * a.values[ii] / j_p(params, u.values[ii]);
        if (ratio < best) {
            best = ratio;
            cert.worst_node = i;
        }
    }
    cert.raw_ratio = best;
    if (best < 0.0) {
        cert.lambda_lo = 0.0;
        cert.clamped = true;
    } else {
        cert.lambda_lo = best;
    }

    // Pairing slack at the certified level, over the basis cone.
    double min_res = std::numeric_limits<double>::infinity();
    for (int i = 0; i < g.size(); ++i) {
        const auto ii = static_cast<std::size_t>(i);
        const double pairing = g.weights[ii] * a.values[ii];
        const double rhs = cert.lambda_lo * g.weights[ii] * j_p(params, u.values[ii]) /
                           std::pow(g.dist[ii], sp);
        min_res = std::min(min_res, pairing - rhs);
    }
    cert.supersolution_residual = min_res;

    // Spot audit of the Picone inequality with a boundary-vanishing eta.
    GridFunction eta(g);
    for (std::size_t i = 0; i < eta.values.size(); ++i)
        eta.values[i] = std::pow(g.dist[i], params.s);
    cert.picone_violation = std::max(picone_audit(u, eta, params), picone_audit(u, u, params));
    return cert;
}

struct RayleighResult {
    double value = std::numeric_limits<double>::infinity();
    int argmin = -1;
};

/// Minimum Rayleigh quotient over a family of trial functions.
inline RayleighResult upper_bound_rayleigh(const std::vector<GridFunction>& trials,
                                           const KernelParams& params) {
    if (trials.empty())
        throw std::invalid_argument("upper_bound_rayleigh: empty trial list");
    RayleighResult out;
    for (std::size_t k = 0; k < trials.size(); ++k) {
        const double q = hardy_quotient(trials[k], params);
        if (q < out.value) {
            out.value = q;
            out.argmin = static_cast<int>(k);
        }
    }
    return out;
}

/// Built-in trial family: distance powers d^beta on a log-spaced sweep
/// plus a few interior hat bumps.
inline std::vector<GridFunction> default_trial_family(const Grid& g) {
    std::vector<GridFunction> trials;
    const double lo = 0.05, hi = 2.0;
    const int count = 9;
    for (int k = 0; k < count; ++k) {
        const double beta = lo * std::pow(hi / lo, double(k) / (count - 1));
        GridFunction u(g);
        for (std::size_t i = 0; i < u.values.size(); ++i)
            u.values[i] = std::pow(g.dist[i], beta);
        trials.push_back(std::move(u));
    }
    for (int frac = 1; frac <= 3; ++frac) {
        const int i0 = g.size() * frac / 4;
        GridFunction u(g);
        u.values[static_cast<std::size_t>(std::clamp(i0, 0, g.size() - 1))] = 1.0;
        trials.push_back(std::move(u));
    }
    return trials;
}

struct ConstantCheckReport {
    double exponent = 0.0;  // alpha = sp probed on the domain
    bool divergent = false;
    double value = 0.0;
};

/// Probes whether nonzero constants can have finite weighted norm on
/// this domain: runs the distance-power integral at alpha = sp and
/// reports divergence or the finite value.
inline ConstantCheckReport no_nonzero_constant_check(const DomainSpec& domain,
                                                     const KernelParams& params,
                                                     int refinement = 16) {
    params.validate();
    ConstantCheckReport rep;
    rep.exponent = params.sp();
    const PowerIntegral I = distance_power_integral(domain, rep.exponent, refinement);
    rep.divergent = I.divergent;
    rep.value = I.value;
    return rep;
}

struct ProbeLog {
    double lambda = 0.0;
    SolveStatus status = SolveStatus::max_iters;
    double energy = 0.0;
    int iterations = 0;
    double certified = 0.0;   // certificate obtained from this probe, if any
    double quotient = 0.0;    // Rayleigh quotient of the final iterate, if evaluable
};

/// Two-sided bracket on the discrete Hardy constant.
struct HardyBracket {
    double lambda_lo = 0.0;
    double lambda_hi = 0.0;
    KernelParams params;
    int n = 0;
    double h = 0.0;
    DomainSpec domain;
    bool conclusive = true;
    Certificate best_certificate;
    // Keeps the (normalized) grid the witness lives on alive.
    std::shared_ptr<const Grid> grid;
    std::vector<ProbeLog> provenance;

    double gap() const { return lambda_hi - lambda_lo; }
};

}  // namespace frachardy
