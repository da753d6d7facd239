#pragma once

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <vector>

#include "frachardy/domain.hpp"
#include "frachardy/kernel.hpp"

namespace frachardy {

namespace detail {

// 1D: kernel mass of the complement seen from x, summed in closed form
// over the complement intervals (two half-lines plus the gaps).
inline double tail_weight_1d(const DomainSpec& domain, double sp, double x) {
    const double sigma = sp;
    std::vector<double> parts;
    // y <= a_1
    {
        const double c = domain.intervals.front().a;
        parts.push_back(std::pow(x - c, -sigma) / sigma);
    }
    // y >= b_k
    {
        const double c = domain.intervals.back().b;
        parts.push_back(std::pow(c - x, -sigma) / sigma);
    }
    for (std::size_t i = 1; i < domain.intervals.size(); ++i) {
        const double c = domain.intervals[i - 1].b;
        const double d = domain.intervals[i].a;
        if (d <= x) {
            parts.push_back((std::pow(x - d, -sigma) - std::pow(x - c, -sigma)) / sigma);
        } else {
            parts.push_back((std::pow(c - x, -sigma) - std::pow(d - x, -sigma)) / sigma);
        }
    }
    return pairwise_sum(parts);
}

// Exit distance of the ray x + r(cos t, sin t) from the rectangle.
inline double ray_exit_distance(const DomainSpec& domain, const Point& x, double theta) {
    const double c = std::cos(theta);
    const double s = std::sin(theta);
    double r = std::numeric_limits<double>::infinity();
    if (c > 0.0) r = std::min(r, (domain.rectangle[0].b - x[0]) / c);
    if (c < 0.0) r = std::min(r, (domain.rectangle[0].a - x[0]) / c);
    if (s > 0.0) r = std::min(r, (domain.rectangle[1].b - x[1]) / s);
    if (s < 0.0) r = std::min(r, (domain.rectangle[1].a - x[1]) / s);
    return r;
}

// 2D: the radial part integrates analytically, leaving
// (1/sp) * int_0^{2pi} R(theta)^{-sp} dtheta. The angular integrand is
// smooth except at the four corner directions, so split there and use
// composite Simpson with doubling on each arc.
inline double tail_weight_2d(const DomainSpec& domain, double sp, const Point& x) {
    std::vector<double> corners;
    for (double cx : {domain.rectangle[0].a, domain.rectangle[0].b})
        for (double cy : {domain.rectangle[1].a, domain.rectangle[1].b})
            corners.push_back(std::atan2(cy - x[1], cx - x[0]));
    std::sort(corners.begin(), corners.end());
    corners.push_back(corners.front() + 2.0 * std::numbers::pi);

    auto f = [&](double th) { return std::pow(ray_exit_distance(domain, x, th), -sp); };
    auto simpson = [&](double a, double b, int m) {
        const double h = (b - a) / m;
        std::vector<double> terms(static_cast<std::size_t>(m));
        for (int k = 0; k < m; ++k) {
            const double lo = a + k * h;
            terms[static_cast<std::size_t>(k)] =
                h / 6.0 * (f(lo) + 4.0 * f(lo + 0.5 * h) + f(lo + h));
        }
        return pairwise_sum(terms);
    };

    std::vector<double> arcs;
    for (std::size_t i = 0; i + 1 < corners.size(); ++i) {
        const double a = corners[i], b = corners[i + 1];
        double prev = simpson(a, b, 4);
        for (int m = 8; m <= (1 << 14); m *= 2) {
            const double v = simpson(a, b, m);
            if (std::abs(v - prev) <= 1e-13 * std::abs(v)) {
                prev = v;
                break;
            }
            prev = v;
        }
        arcs.push_back(prev);
    }
    return pairwise_sum(arcs) / sp;
}

}  // namespace detail

/// rho(x) = kernel mass of R^N \ Omega seen from x in Omega. Encodes the
/// zero extension outside Omega without gridding the exterior.
inline double exterior_tail_weight(const DomainSpec& domain, const KernelParams& params,
                                   const Point& x) {
    params.validate();
    if (!domain.contains(x))
        throw std::domain_error("exterior_tail_weight: point outside Omega");
    if (domain.dimension == 1) return detail::tail_weight_1d(domain, params.sp(), x[0]);
    return detail::tail_weight_2d(domain, params.sp(), x);
}

/// Midpoint-cell quadrature grid on Omega with precomputed boundary
/// distances and exterior tail weights.
struct Grid {
    DomainSpec domain;
    KernelParams params;
    std::vector<Point> nodes;
    std::vector<double> weights;
    std::vector<double> dist;
    std::vector<double> tail_weight;
    std::vector<double> kernel;  // row-major |x_i - x_j|^{-(N+sp)}, 0 on the diagonal
    double spacing = 0.0;

    int size() const { return static_cast<int>(nodes.size()); }
    double kernel_at(int i, int j) const {
        return kernel[static_cast<std::size_t>(i) * nodes.size() + static_cast<std::size_t>(j)];
    }
};

inline double node_distance(const Grid& g, int i, int j) {
    const auto a = g.nodes[static_cast<std::size_t>(i)];
    const auto b = g.nodes[static_cast<std::size_t>(j)];
    if (g.domain.dimension == 1) return std::abs(a[0] - b[0]);
    return std::hypot(a[0] - b[0], a[1] - b[1]);
}

/// Builds a grid with roughly n cells across the domain (1D: n cells in
/// total, split among pieces; 2D: n cells along the shorter side).
inline Grid make_grid(const DomainSpec& domain, const KernelParams& params, int n) {
    domain.validate();
    params.validate();
    if (params.dim != domain.dimension)
        throw std::invalid_argument("make_grid: kernel dimension does not match domain");
    if (n < 2) throw std::invalid_argument("make_grid: need n >= 2");

    Grid g;
    g.domain = domain;
    g.params = params;

    if (domain.dimension == 1) {
        const double target_h = domain.volume() / n;
        for (const auto& iv : domain.intervals) {
            const int m = std::max<int>(1, static_cast<int>(std::llround(iv.length() / target_h)));
            const double h = iv.length() / m;
            g.spacing = std::max(g.spacing, h);
            for (int k = 0; k < m; ++k) {
                Point x{iv.a + (k + 0.5) * h, 0.0};
                g.nodes.push_back(x);
                g.weights.push_back(h);
            }
        }
    } else {
        const double lx = domain.rectangle[0].length();
        const double ly = domain.rectangle[1].length();
        const double target_h = std::min(lx, ly) / n;
        const int mx = std::max<int>(1, static_cast<int>(std::llround(lx / target_h)));
        const int my = std::max<int>(1, static_cast<int>(std::llround(ly / target_h)));
        const double hx = lx / mx, hy = ly / my;
        g.spacing = std::max(hx, hy);
        for (int j = 0; j < my; ++j)
            for (int i = 0; i < mx; ++i) {
                Point x{domain.rectangle[0].a + (i + 0.5) * hx,
                        domain.rectangle[1].a + (j + 0.5) * hy};
                g.nodes.push_back(x);
                g.weights.push_back(hx * hy);
            }
    }

    const int count = g.size();
    g.dist.resize(static_cast<std::size_t>(count));
    g.tail_weight.resize(static_cast<std::size_t>(count));
    g.kernel.assign(static_cast<std::size_t>(count) * static_cast<std::size_t>(count), 0.0);
    const double exponent = domain.dimension + params.sp();
    for_each_index(count, [&](int i) {
        const auto idx = static_cast<std::size_t>(i);
        g.dist[idx] = distance_to_boundary(domain, g.nodes[idx]);
        g.tail_weight[idx] = exterior_tail_weight(domain, params, g.nodes[idx]);
        for (int j = 0; j < count; ++j) {
            if (j == i) continue;
            g.kernel[idx * static_cast<std::size_t>(count) + static_cast<std::size_t>(j)] =
                std::pow(node_distance(g, i, j), -exponent);
        }
    });
    return g;
}

/// Values on grid nodes; implicitly zero outside Omega.
struct GridFunction {
    const Grid* grid = nullptr;
    std::vector<double> values;

    GridFunction() = default;
    explicit GridFunction(const Grid& g, double fill = 0.0)
        : grid(&g), values(static_cast<std::size_t>(g.size()), fill) {}

    double& operator[](std::size_t i) { return values[i]; }
    double operator[](std::size_t i) const { return values[i]; }
    int size() const { return static_cast<int>(values.size()); }
};

}  // namespace frachardy
