#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

#include "frachardy/reduction.hpp"

namespace frachardy {

using Point = std::array<double, 2>;

struct Interval {
    double a = 0.0;
    double b = 0.0;
    double length() const { return b - a; }
};

// Measure of the unit ball in dimension N.
inline double unit_ball_measure(int dim) {
    if (dim == 1) return 2.0;
    if (dim == 2) return std::numbers::pi;
    throw std::invalid_argument("unit_ball_measure: dimension must be 1 or 2");
}

/// Open set Omega, a proper subset of R^N. Either a finite union of
/// disjoint bounded open intervals (N=1) or one bounded open
/// axis-aligned rectangle (N=2).
struct DomainSpec {
    int dimension = 1;
    std::vector<Interval> intervals;    // 1D pieces, sorted by left endpoint
    std::array<Interval, 2> rectangle;  // 2D: sides along x and y

    static DomainSpec interval_union(std::vector<Interval> pieces) {
        DomainSpec d;
        d.dimension = 1;
        d.intervals = std::move(pieces);
        d.validate();
        return d;
    }

    static DomainSpec rect(Interval sx, Interval sy) {
        DomainSpec d;
        d.dimension = 2;
        d.rectangle = {sx, sy};
        d.validate();
        return d;
    }

    void validate() const {
        if (dimension != 1 && dimension != 2)
            throw std::invalid_argument("DomainSpec: dimension must be 1 or 2");
        if (dimension == 1) {
            if (intervals.empty())
                throw std::invalid_argument("DomainSpec: no intervals given");
            for (const auto& iv : intervals) {
                if (!(iv.a < iv.b) || !std::isfinite(iv.a) || !std::isfinite(iv.b))
                    throw std::invalid_argument(
                        "DomainSpec: each interval needs finite a < b "
                        "(unbounded sets are not supported)");
            }
            for (std::size_t i = 1; i < intervals.size(); ++i) {
                if (!(intervals[i - 1].b < intervals[i].a))
                    throw std::invalid_argument(
                        "DomainSpec: intervals must be disjoint and sorted with gaps");
            }
        } else {
            for (const auto& s : rectangle) {
                if (!(s.a < s.b) || !std::isfinite(s.a) || !std::isfinite(s.b))
                    throw std::invalid_argument(
                        "DomainSpec: rectangle sides need finite a < b");
            }
        }
    }

    bool contains(const Point& x) const {
        if (dimension == 1) {
            for (const auto& iv : intervals)
                if (x[0] > iv.a && x[0] < iv.b) return true;
            return false;
        }
        return x[0] > rectangle[0].a && x[0] < rectangle[0].b &&
               x[1] > rectangle[1].a && x[1] < rectangle[1].b;
    }

    double volume() const {
        if (dimension == 1) {
            double v = 0.0;
            for (const auto& iv : intervals) v += iv.length();
            return v;
        }
        return rectangle[0].length() * rectangle[1].length();
    }

    // sup of the boundary distance: half the longest piece (1D),
    // half the shorter side (2D).
    double inradius() const {
        if (dimension == 1) {
            double best = 0.0;
            for (const auto& iv : intervals) best = std::max(best, iv.length());
            return 0.5 * best;
        }
        return 0.5 * std::min(rectangle[0].length(), rectangle[1].length());
    }

    DomainSpec dilated(double t) const {
        if (!(t > 0.0)) throw std::invalid_argument("dilated: t must be positive");
        DomainSpec d = *this;
        for (auto& iv : d.intervals) iv = {t * iv.a, t * iv.b};
        for (auto& s : d.rectangle) s = {t * s.a, t * s.b};
        return d;
    }
};

/// Distance from x in Omega to the boundary, exact closed form.
inline double distance_to_boundary(const DomainSpec& domain, const Point& x) {
    if (domain.dimension == 1) {
        for (const auto& iv : domain.intervals)
            if (x[0] > iv.a && x[0] < iv.b)
                return std::min(x[0] - iv.a, iv.b - x[0]);
        throw std::domain_error("distance_to_boundary: point outside Omega");
    }
    if (!domain.contains(x))
        throw std::domain_error("distance_to_boundary: point outside Omega");
    const double dx = std::min(x[0] - domain.rectangle[0].a, domain.rectangle[0].b - x[0]);
    const double dy = std::min(x[1] - domain.rectangle[1].a, domain.rectangle[1].b - x[1]);
    return std::min(dx, dy);
}

struct PowerIntegral {
    double value = 0.0;   // meaningful only when !divergent
    bool divergent = false;
    int shells = 0;       // depth of the graded quadrature actually used
};

namespace detail {

// Midpoint quadrature of f on [a,b] with Richardson extrapolation,
// doubling the cell count until the extrapolated value settles.
template <class F>
double refine_midpoint(F&& f, double a, double b, int cells, double rtol) {
    auto midpoint = [&](int m) {
        const double h = (b - a) / m;
        std::vector<double> terms(static_cast<std::size_t>(m));
        for (int k = 0; k < m; ++k)
            terms[static_cast<std::size_t>(k)] = h * f(a + (k + 0.5) * h);
        return pairwise_sum(terms);
    };
    double coarse = midpoint(cells);
    double best = std::numeric_limits<double>::quiet_NaN();
    for (int m = 2 * cells; m <= (1 << 16); m *= 2) {
        const double fine = midpoint(m);
        const double extrapolated = (4.0 * fine - coarse) / 3.0;
        if (std::isfinite(best) &&
            std::abs(extrapolated - best) <= rtol * std::abs(extrapolated))
            return extrapolated;
        best = extrapolated;
        coarse = fine;
    }
    return best;
}

// Integrates g(t) * t^{-alpha} over (0, T] by geometric shells
// [T/2^{k+1}, T/2^k]. Shell contributions of a pure power decay by the
// exact factor 2^{alpha-1} per level (1D case g == const), so the deep-
// shell ratio separates convergent from divergent exponents sharply:
// ratio >= 1 exactly when alpha >= 1 for the pure power. A geometric
// tail estimate closes the sum once the ratio is resolved.
template <class G>
PowerIntegral graded_power_integral(G&& g, double T, double alpha, int cells,
                                    double rtol) {
    PowerIntegral out;
    std::vector<double> contrib;
    double running = 0.0;
    const int max_shells = 800;
    for (int k = 0; k < max_shells; ++k) {
        const double hi = T * std::pow(0.5, k);
        const double lo = 0.5 * hi;
        auto f = [&](double t) { return g(t) * std::pow(t, -alpha); };
        const double c = refine_midpoint(f, lo, hi, cells, 1e-12);
        contrib.push_back(c);
        running += c;
        out.shells = k + 1;
        if (k < 12) continue;
        const std::size_t m = contrib.size();
        const double r1 = contrib[m - 1] / contrib[m - 2];
        const double r2 = contrib[m - 2] / contrib[m - 3];
        const double r3 = contrib[m - 3] / contrib[m - 4];
        if (r1 >= 1.0 - 1e-9 && r2 >= 1.0 - 1e-9 && r3 >= 1.0 - 1e-9) {
            out.divergent = true;
            return out;
        }
        if (r1 < 1.0) {
            const double tail = contrib[m - 1] * r1 / (1.0 - r1);
            const bool tail_negligible = tail <= 0.5 * rtol * std::abs(running);
            // The shell ratio of the pure power is exactly self-similar,
            // so once it stabilizes the geometric tail closes the sum.
            const bool ratio_settled = k >= 24 && std::abs(r1 - r2) <= 1e-9 * r1 &&
                                       std::abs(r2 - r3) <= 1e-9 * r1;
            if (tail_negligible || ratio_settled) {
                out.value = pairwise_sum(contrib) + tail;
                return out;
            }
        }
    }
    // Ran out of shells without resolving: treat as divergent growth.
    out.divergent = true;
    return out;
}

}  // namespace detail

/// Quadrature of the distance-power integral over Omega with automatic
/// divergence detection. `refinement` sets the base cell count per
/// graded shell.
inline PowerIntegral distance_power_integral(const DomainSpec& domain, double alpha,
                                             int refinement = 16) {
    if (refinement < 1)
        throw std::invalid_argument("distance_power_integral: refinement must be >= 1");
    if (!(alpha > 0.0))
        throw std::invalid_argument("distance_power_integral: alpha must be positive");
    domain.validate();
    const double rtol = 1e-8;
    if (domain.dimension == 1) {
        // Each piece splits at its midpoint; both halves see d(x) = x
        // measured from the nearer endpoint.
        PowerIntegral total;
        std::vector<double> parts;
        for (const auto& iv : domain.intervals) {
            auto one = [](double) { return 1.0; };
            PowerIntegral half =
                detail::graded_power_integral(one, 0.5 * iv.length(), alpha, refinement, rtol);
            total.shells = std::max(total.shells, half.shells);
            if (half.divergent) {
                total.divergent = true;
                return total;
            }
            parts.push_back(2.0 * half.value);
        }
        total.value = pairwise_sum(parts);
        return total;
    }
    // 2D rectangle via the coarea formula: |{d > t}| is the inset
    // rectangle, so the integrand is t^{-alpha} times its perimeter.
    const double a = std::min(domain.rectangle[0].length(), domain.rectangle[1].length());
    const double b = std::max(domain.rectangle[0].length(), domain.rectangle[1].length());
    auto perimeter = [a, b](double t) { return 2.0 * (a - 2.0 * t) + 2.0 * (b - 2.0 * t); };
    return detail::graded_power_integral(perimeter, 0.5 * a, alpha, refinement, rtol);
}

struct GeometryReport {
    double inradius = 0.0;
    double volume = 0.0;
    double alpha = 0.0;
    double integral_d_neg_alpha = 0.0;
    double bound_inradius = 0.0;
    double bound_volume = 0.0;
    double omega_N = 0.0;
};

/// Evaluates the inradius and volume bounds that follow from a finite
/// distance-power integral.
inline GeometryReport geometry_report(const DomainSpec& domain, double alpha) {
    domain.validate();
    const int dim = domain.dimension;
    if (!(alpha > 0.0) || !(alpha < dim))
        throw std::invalid_argument("geometry_report: need 0 < alpha < N");
    const PowerIntegral I = distance_power_integral(domain, alpha);
    if (I.divergent)
        throw std::runtime_error(
            "geometry_report: distance-power integral diverged (boundary too thick "
            "for this alpha)");
    GeometryReport r;
    r.inradius = domain.inradius();
    r.volume = domain.volume();
    r.alpha = alpha;
    r.integral_d_neg_alpha = I.value;
    r.omega_N = unit_ball_measure(dim);
    const double base = std::pow(2.0, alpha) / r.omega_N * I.value;
    r.bound_inradius = std::pow(base, 1.0 / (dim - alpha));
    r.bound_volume = std::pow(std::pow(2.0, alpha) / r.omega_N, alpha / (dim - alpha)) *
                     std::pow(I.value, dim / (dim - alpha));
    return r;
}

}  // namespace frachardy
