#pragma once

#include <cmath>
#include <stdexcept>
#include <vector>

#include "frachardy/grid.hpp"
#include "frachardy/kernel.hpp"
#include "frachardy/reduction.hpp"

namespace frachardy {

namespace detail {

inline void check_consistent(const GridFunction& u, const KernelParams& params) {
    if (u.grid == nullptr)
        throw std::logic_error("grid function is not attached to a grid");
    const auto& gp = u.grid->params;
    if (gp.s != params.s || gp.p != params.p || gp.dim != params.dim)
        throw std::logic_error("kernel parameters do not match the grid");
}

}  // namespace detail

/// [u]^p: double sum over distinct node pairs plus the exterior tail
/// contribution of the zero extension.
inline double gagliardo_seminorm_p(const GridFunction& u, const KernelParams& params) {
    detail::check_consistent(u, params);
    const Grid& g = *u.grid;
    const int n = g.size();
    const double p = params.p;
    std::vector<double> rows(static_cast<std::size_t>(n));
    for_each_index(n, [&](int i) {
        const auto ii = static_cast<std::size_t>(i);
        const double* krow = g.kernel.data() + ii * static_cast<std::size_t>(n);
        double row = 0.0;
        for (int j = 0; j < n; ++j) {
            const auto jj = static_cast<std::size_t>(j);
            row += g.weights[jj] * abs_pow(u.values[ii] - u.values[jj], p) * krow[jj];
        }
        rows[ii] =
            g.weights[ii] * (row + 2.0 * g.tail_weight[ii] * abs_pow(u.values[ii], p));
    });
    return pairwise_sum(rows);
}

/// int |u|^p / d^{sp}.
inline double hardy_denominator(const GridFunction& u, const KernelParams& params) {
    detail::check_consistent(u, params);
    const Grid& g = *u.grid;
    const double sp = params.sp();
    std::vector<double> terms(static_cast<std::size_t>(g.size()));
    for (std::size_t i = 0; i < terms.size(); ++i)
        terms[i] = g.weights[i] * std::pow(std::abs(u.values[i]), params.p) /
                   std::pow(g.dist[i], sp);
    return pairwise_sum(terms);
}

/// Rayleigh quotient; any value is an upper bound for the discrete
/// Hardy constant.
inline double hardy_quotient(const GridFunction& u, const KernelParams& params) {
    const double den = hardy_denominator(u, params);
    if (!(den > 0.0))
        throw std::logic_error("hardy_quotient: denominator must be positive");
    return gagliardo_seminorm_p(u, params) / den;
}

/// Node values a_i of the fractional p-Laplacian applied to u (zero
/// extended), normalized so that sum_i w_i a_i v_i reproduces the
/// discrete bilinear pairing with any test function v.
inline GridFunction frac_p_laplacian_action(const GridFunction& u,
                                            const KernelParams& params) {
    detail::check_consistent(u, params);
    const Grid& g = *u.grid;
    const int n = g.size();
    const double p = params.p;
    GridFunction a(g);
    for_each_index(n, [&](int i) {
        const auto ii = static_cast<std::size_t>(i);
        const double* krow = g.kernel.data() + ii * static_cast<std::size_t>(n);
        double acc = 0.0;
        for (int j = 0; j < n; ++j) {
            const auto jj = static_cast<std::size_t>(j);
            acc += g.weights[jj] * j_p(p, u.values[ii] - u.values[jj]) * krow[jj];
        }
        a.values[ii] = 2.0 * acc + 2.0 * g.tail_weight[ii] * j_p(p, u.values[ii]);
    });
    return a;
}

/// Weighted tail norm sum_i w_i |u_i|^beta / (1+|x_i|)^{N+sp}.
inline double tail_norm(const GridFunction& u, const KernelParams& params, double beta) {
    detail::check_consistent(u, params);
    if (!(beta > 0.0)) throw std::invalid_argument("tail_norm: beta must be positive");
    const Grid& g = *u.grid;
    const double exponent = g.domain.dimension + params.sp();
    std::vector<double> terms(static_cast<std::size_t>(g.size()));
    for (std::size_t i = 0; i < terms.size(); ++i) {
        const double r = g.domain.dimension == 1
                             ? std::abs(g.nodes[i][0])
                             : std::hypot(g.nodes[i][0], g.nodes[i][1]);
        terms[i] = g.weights[i] * std::pow(std::abs(u.values[i]), beta) /
                   std::pow(1.0 + r, exponent);
    }
    return pairwise_sum(terms);
}

/// Weighted-space norm [u] + (int |u|^p / d^{sp})^{1/p}.
inline double x_norm(const GridFunction& u, const KernelParams& params) {
    return std::pow(gagliardo_seminorm_p(u, params), 1.0 / params.p) +
           std::pow(hardy_denominator(u, params), 1.0 / params.p);
}

}  // namespace frachardy
