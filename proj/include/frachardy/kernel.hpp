#pragma once

#include <cmath>
#include <stdexcept>

namespace frachardy {

/// Parameters (s, p, N) of the Gagliardo kernel |x-y|^{-(N+sp)} and the
/// boundary weight d_Omega^{-sp}.
struct KernelParams {
    double s = 0.5;
    double p = 2.0;
    int dim = 1;

    double sp() const { return s * p; }

    void validate() const {
        if (!(s > 0.0) || !(s < 1.0))
            throw std::invalid_argument("KernelParams: s must lie in (0,1)");
        if (!(p > 1.0) || !std::isfinite(p))
            throw std::invalid_argument("KernelParams: p must lie in (1,inf)");
        if (dim != 1 && dim != 2)
            throw std::invalid_argument("KernelParams: N must be 1 or 2");
    }
};

// J_p(t) = |t|^{p-2} t, extended by continuity with J_p(0) = 0.
inline double j_p(double p, double t) {
    if (p == 2.0) return t;
    if (t == 0.0) return 0.0;
    return std::copysign(std::pow(std::abs(t), p - 1.0), t);
}

// |t|^p with the quadratic case short-circuited.
inline double abs_pow(double t, double p) {
    if (p == 2.0) return t * t;
    return std::pow(std::abs(t), p);
}

inline double j_p(const KernelParams& params, double t) { return j_p(params.p, t); }

}  // namespace frachardy
