#pragma once

#include <cmath>
#include <iostream>
#include <random>
#include <string>
#include <vector>

#include "frachardy/bisect.hpp"
#include "frachardy/certificate.hpp"
#include "frachardy/nonlocal.hpp"
#include "frachardy/solver.hpp"

namespace frachardy {

namespace selftest_detail {

// Exhaustive double sum of the pairing, independent of the assembled path.
inline double brute_force_pairing(const GridFunction& u, const GridFunction& v,
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

struct Suite {
    std::string name;
    bool pass = true;
    std::string note;
};

}  // namespace selftest_detail

/// Runs the fixed-seed property suites and prints one verdict line per
/// suite. Returns true iff every suite passed.
inline bool selftest(std::ostream& os = std::cout) {
    using selftest_detail::Suite;
    std::vector<Suite> suites;
    const DomainSpec unit = DomainSpec::interval_union({{0.0, 1.0}});

    {  // Picone inequality over random positive/nonnegative pairs.
        Suite s{"picone"};
        std::mt19937_64 rng(11);
        std::uniform_real_distribution<double> pos(0.05, 2.0), nn(0.0, 2.0);
        double worst = -1e300;
        for (double p : {1.5, 2.0, 3.0}) {
            KernelParams params{0.5, p, 1};
            Grid g = make_grid(unit, params, 10);
            for (int trial = 0; trial < 700; ++trial) {
                GridFunction u(g), eta(g);
                for (auto& v : u.values) v = pos(rng);
                for (auto& v : eta.values) v = nn(rng);
                worst = std::max(worst, picone_audit(u, eta, params));
            }
        }
        s.pass = worst <= 1e-12;
        s.note = "max violation " + std::to_string(worst);
        suites.push_back(s);
    }

    {  // Central finite differences against the assembled gradient.
        Suite s{"gradient"};
        std::mt19937_64 rng(12);
        std::uniform_real_distribution<double> dist(0.2, 1.4);
        double worst = 0.0;
        for (double p : {1.5, 2.0, 3.0}) {
            KernelParams params{0.5, p, 1};
            Grid g = make_grid(unit, params, 12);
            SolverConfig cfg = default_solver_config(unit);
            cfg.lambda = 0.3;
            for (int trial = 0; trial < 5; ++trial) {
                GridFunction u(g);
                for (auto& v : u.values) v = dist(rng);
                GridFunction grad = energy_gradient(u, params, cfg);
                const double eps = 1e-5;
                for (int i = 0; i < g.size(); ++i) {
                    GridFunction up = u, dn = u;
                    up.values[static_cast<std::size_t>(i)] += eps;
                    dn.values[static_cast<std::size_t>(i)] -= eps;
                    const double fd = (energy_F_lambda(up, params, cfg) -
                                       energy_F_lambda(dn, params, cfg)) /
                                      (2.0 * eps);
                    const double gi = grad.values[static_cast<std::size_t>(i)];
                    worst = std::max(worst,
                                     std::abs(fd - gi) / std::max({1e-8, std::abs(fd), std::abs(gi)}));
                }
            }
        }
        s.pass = worst <= 1e-6;
        s.note = "max rel error " + std::to_string(worst);
        suites.push_back(s);
    }

    {  // Assembled pairing vs exhaustive double sum (tail terms included).
        Suite s{"pairing"};
        std::mt19937_64 rng(13);
        std::uniform_real_distribution<double> dist(-1.0, 1.0);
        double worst = 0.0;
        for (double p : {1.5, 2.0, 3.0}) {
            KernelParams params{0.6, p, 1};
            Grid g = make_grid(unit, params, 8);
            for (int trial = 0; trial < 20; ++trial) {
                GridFunction u(g), v(g);
                for (auto& x : u.values) x = dist(rng);
                for (auto& x : v.values) x = dist(rng);
                GridFunction a = frac_p_laplacian_action(u, params);
                double assembled = 0.0;
                for (int i = 0; i < g.size(); ++i)
                    assembled += g.weights[static_cast<std::size_t>(i)] *
                                 a.values[static_cast<std::size_t>(i)] *
                                 v.values[static_cast<std::size_t>(i)];
                const double brute = selftest_detail::brute_force_pairing(u, v, params);
                worst = std::max(worst, std::abs(assembled - brute) /
                                            std::max(1e-12, std::abs(brute)));
            }
        }
        s.pass = worst <= 1e-12;
        s.note = "max rel mismatch " + std::to_string(worst);
        suites.push_back(s);
    }

    {  // Certified lower bounds never exceed Rayleigh upper bounds.
        Suite s{"sandwich"};
        std::mt19937_64 rng(14);
        std::uniform_real_distribution<double> pos(0.1, 2.0);
        bool ok = true;
        for (double p : {1.5, 2.0, 3.0}) {
            KernelParams params{0.5, p, 1};
            Grid g = make_grid(unit, params, 24);
            auto trials = default_trial_family(g);
            const double hi = upper_bound_rayleigh(trials, params).value;
            for (int trial = 0; trial < 10; ++trial) {
                GridFunction u(g);
                for (auto& v : u.values) v = pos(rng);
                const double lo = certify_lower_bound(u, params).lambda_lo;
                if (!(lo <= hi + 1e-9 * std::abs(hi))) ok = false;
            }
        }
        s.pass = ok;
        suites.push_back(s);
    }

    {  // Exact scale invariance under matched dilation.
        Suite s{"scaling"};
        KernelParams params{0.5, 2.0, 1};
        Grid g1 = make_grid(unit, params, 20);
        Grid g3 = make_grid(unit.dilated(3.0), params, 20);
        GridFunction u1(g1), u3(g3);
        for (int i = 0; i < g1.size(); ++i) {
            const double v = std::pow(g1.dist[static_cast<std::size_t>(i)], 0.5);
            u1.values[static_cast<std::size_t>(i)] = v;
            u3.values[static_cast<std::size_t>(i)] = v;
        }
        const double q1 = hardy_quotient(u1, params), q3 = hardy_quotient(u3, params);
        const double c1 = certify_lower_bound(u1, params).lambda_lo;
        const double c3 = certify_lower_bound(u3, params).lambda_lo;
        s.pass = std::abs(q1 - q3) <= 1e-12 * std::abs(q1) &&
                 std::abs(c1 - c3) <= 1e-12 * std::max(1.0, std::abs(c1));
        suites.push_back(s);
    }

    {  // Geometry: distance-power bounds hold, divergence detector fires.
        Suite s{"geometry"};
        std::mt19937_64 rng(15);
        std::uniform_real_distribution<double> len(0.2, 3.0), gap(0.1, 2.0),
            alpha_draw(0.02, 0.98);
        bool ok = true;
        for (int trial = 0; trial < 50 && ok; ++trial) {
            std::vector<Interval> pieces;
            double cursor = 0.0;
            const int count = 1 + static_cast<int>(rng() % 3);
            for (int k = 0; k < count; ++k) {
                const double a = cursor + gap(rng);
                const double b = a + len(rng);
                pieces.push_back({a, b});
                cursor = b;
            }
            DomainSpec d = DomainSpec::interval_union(pieces);
            GeometryReport r = geometry_report(d, alpha_draw(rng));
            if (!(r.inradius <= r.bound_inradius * (1.0 + 1e-6))) ok = false;
            if (!(r.volume <= r.bound_volume * (1.0 + 1e-6))) ok = false;
        }
        for (double alpha : {1.0, 1.7})
            if (!distance_power_integral(unit, alpha).divergent) ok = false;
        s.pass = ok;
        suites.push_back(s);
    }

    bool all = true;
    for (const auto& s : suites) {
        os << (s.pass ? "PASS" : "FAIL") << "  " << s.name;
        if (!s.note.empty()) os << "  (" << s.note << ")";
        os << '\n';
        all = all && s.pass;
    }
    return all;
}

}  // namespace frachardy
