// Independent oracles used by the test suites. Everything here
// recomputes quantities by a route separate from the library
// implementation (exhaustive sums, dense eigensolvers, closed forms).
#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <random>
#include <vector>

#include "frachardy/frachardy.hpp"

namespace oracles {

using namespace frachardy;

// Exhaustive double sum of [u]^p over all ordered node pairs plus the
// exterior tail, with no shared code path with the library assembly.
inline double brute_seminorm_p(const GridFunction& u, const KernelParams& params) {
    const Grid& g = *u.grid;
    const int n = g.size();
    const double exponent = g.domain.dimension + params.sp();
    double total = 0.0;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            if (i == j) continue;
            const auto ii = static_cast<std::size_t>(i), jj = static_cast<std::size_t>(j);
            total += g.weights[ii] * g.weights[jj] *
                     std::pow(std::abs(u.values[ii] - u.values[jj]), params.p) /
                     std::pow(node_distance(g, i, j), exponent);
        }
    for (int i = 0; i < n; ++i) {
        const auto ii = static_cast<std::size_t>(i);
        total += 2.0 * g.weights[ii] * g.tail_weight[ii] *
                 std::pow(std::abs(u.values[ii]), params.p);
    }
    return total;
}

// Exhaustive bilinear pairing sum_{i,j} w_i w_j J_p(u_i-u_j)(v_i-v_j)/K + tails.
inline double brute_pairing(const GridFunction& u, const GridFunction& v,
                            const KernelParams& params) {
    const Grid& g = *u.grid;
    const int n = g.size();
    const double exponent = g.domain.dimension + params.sp();
    double total = 0.0;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            if (i == j) continue;
            const auto ii = static_cast<std::size_t>(i), jj = static_cast<std::size_t>(j);
            total += g.weights[ii] * g.weights[jj] *
                     j_p(params, u.values[ii] - u.values[jj]) *
                     (v.values[ii] - v.values[jj]) /
                     std::pow(node_distance(g, i, j), exponent);
        }
    for (int i = 0; i < n; ++i) {
        const auto ii = static_cast<std::size_t>(i);
        total += 2.0 * g.weights[ii] * g.tail_weight[ii] * j_p(params, u.values[ii]) *
                 v.values[ii];
    }
    return total;
}

// Dense p=2 form pair: stiffness A with u^T A u = [u]^2 and the weighted
// mass matrix M = diag(w_i / d_i^{sp}).
struct FormPair {
    Eigen::MatrixXd stiffness;
    Eigen::VectorXd mass_diag;
};

inline FormPair assemble_p2(const Grid& g) {
    const int n = g.size();
    const double sp = g.params.sp();
    const double exponent = g.domain.dimension + sp;
    FormPair fp;
    fp.stiffness = Eigen::MatrixXd::Zero(n, n);
    fp.mass_diag = Eigen::VectorXd::Zero(n);
    for (int i = 0; i < n; ++i) {
        const auto ii = static_cast<std::size_t>(i);
        double diag = 2.0 * g.weights[ii] * g.tail_weight[ii];
        for (int j = 0; j < n; ++j) {
            if (i == j) continue;
            const auto jj = static_cast<std::size_t>(j);
            const double k = g.weights[ii] * g.weights[jj] /
                             std::pow(node_distance(g, i, j), exponent);
            fp.stiffness(i, j) = -2.0 * k;
            diag += 2.0 * k;
        }
        fp.stiffness(i, i) = diag;
        fp.mass_diag(i) = g.weights[ii] / std::pow(g.dist[ii], sp);
    }
    return fp;
}

struct EigenPair {
    double value = 0.0;
    GridFunction vector;
};

// Smallest generalized eigenvalue of (A, M) and its (positive) eigenvector.
inline EigenPair smallest_eigenpair(const Grid& g) {
    FormPair fp = assemble_p2(g);
    Eigen::GeneralizedSelfAdjointEigenSolver<Eigen::MatrixXd> solver(
        fp.stiffness, fp.mass_diag.asDiagonal().toDenseMatrix());
    EigenPair out;
    out.value = solver.eigenvalues()(0);
    out.vector = GridFunction(g);
    Eigen::VectorXd v = solver.eigenvectors().col(0);
    if (v.sum() < 0.0) v = -v;
    for (int i = 0; i < g.size(); ++i)
        out.vector.values[static_cast<std::size_t>(i)] = v(i);
    return out;
}

// Dense direct solve of the p=2, lambda=0 Euler-Lagrange system
// A u = rhs with rhs_i = w_i 1_B(x_i).
inline GridFunction dense_solve_lambda0(const Grid& g, const SolverConfig& cfg) {
    FormPair fp = assemble_p2(g);
    Eigen::VectorXd rhs = Eigen::VectorXd::Zero(g.size());
    for (int i = 0; i < g.size(); ++i)
        if (in_ball(g, i, cfg)) rhs(i) = g.weights[static_cast<std::size_t>(i)];
    Eigen::VectorXd u = fp.stiffness.ldlt().solve(rhs);
    GridFunction out(g);
    for (int i = 0; i < g.size(); ++i) out.values[static_cast<std::size_t>(i)] = u(i);
    return out;
}

// Random-restart projected-gradient minimization of the Rayleigh
// quotient, used as an independent upper-bound oracle for p != 2.
inline double quotient_minimization(const Grid& g, const KernelParams& params,
                                    int restarts, unsigned long long seed,
                                    int iters = 300) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> dist(0.0, 1.0);
    double best = std::numeric_limits<double>::infinity();
    const int n = g.size();
    for (int r = 0; r < restarts; ++r) {
        GridFunction u(g);
        for (auto& v : u.values) v = 0.05 + dist(rng);
        double q = hardy_quotient(u, params);
        double step = 0.1;
        for (int k = 0; k < iters; ++k) {
            // Quotient gradient up to the positive factor p/D:
            // (S/D)' = (p w a - q p w J_p(u)/d^{sp}) / D.
            GridFunction a = frac_p_laplacian_action(u, params);
            const double den = hardy_denominator(u, params);
            GridFunction grad(g);
            const double sp = params.sp();
            for (int i = 0; i < n; ++i) {
                const auto ii = static_cast<std::size_t>(i);
                grad.values[ii] = (g.weights[ii] * a.values[ii] -
                                   q * g.weights[ii] * j_p(params, u.values[ii]) /
                                       std::pow(g.dist[ii], sp)) /
                                  std::max(den, 1e-300);
            }
            GridFunction trial(g);
            bool improved = false;
            for (int bt = 0; bt < 30; ++bt) {
                for (int i = 0; i < n; ++i) {
                    const auto ii = static_cast<std::size_t>(i);
                    trial.values[ii] =
                        u.values[ii] - step * grad.values[ii] / g.weights[ii];
                }
                if (hardy_denominator(trial, params) > 0.0) {
                    const double qt = hardy_quotient(trial, params);
                    if (qt < q) {
                        u.values = trial.values;
                        q = qt;
                        step *= 1.5;
                        improved = true;
                        break;
                    }
                }
                step *= 0.5;
            }
            if (!improved && step < 1e-14) break;
        }
        best = std::min(best, q);
    }
    return best;
}

// Random disjoint interval unions for geometry properties.
inline DomainSpec random_interval_union(std::mt19937_64& rng, int max_pieces = 4) {
    std::uniform_real_distribution<double> len(0.1, 3.0), gap(0.05, 2.0);
    std::vector<Interval> pieces;
    double cursor = -2.0;
    const int count = 1 + static_cast<int>(rng() % static_cast<unsigned>(max_pieces));
    for (int k = 0; k < count; ++k) {
        const double a = cursor + gap(rng);
        const double b = a + len(rng);
        pieces.push_back({a, b});
        cursor = b;
    }
    return DomainSpec::interval_union(pieces);
}

}  // namespace oracles
