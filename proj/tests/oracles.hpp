#pragma once

// Test-only oracles, independent of the library paths they check.

#include <cmath>
#include <cstddef>

#include "fso/phi.hpp"

namespace fso::testing {

// Quadrature of a(x,r) r over [0, ell] with log-spaced panels and 8-point
// Gauss-Legendre inside each panel; the head cell [0, r_min] uses the local
// power model a ~ a(r_min) (r/r_min)^{p-2}.
inline double density_quadrature(const PhiFunction& phi, std::size_t x, double ell) {
    static const double gl_x[4] = {0.1834346424956498, 0.5255324099163290, 0.7966664774136267,
                                   0.9602898564975363};
    static const double gl_w[4] = {0.3626837833783620, 0.3137066458778873, 0.2223810344533745,
                                   0.1012285362903763};
    const double r_min = 1e-12;
    if (ell <= r_min) return 0.0;
    const double p = phi.growth().p;
    double total = phi.density(x, r_min) * r_min * r_min / p; // head: integral of a(r_min)(r/r_min)^{p-2} r
    const int panels = 256;
    const double lr0 = std::log(r_min), lr1 = std::log(ell);
    for (int k = 0; k < panels; ++k) {
        const double a = std::exp(lr0 + (lr1 - lr0) * k / panels);
        const double b = std::exp(lr0 + (lr1 - lr0) * (k + 1) / panels);
        const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
        for (int j = 0; j < 4; ++j) {
            for (double sgn : {-1.0, 1.0}) {
                const double r = mid + sgn * half * gl_x[j];
                total += gl_w[j] * half * phi.density(x, r) * r;
            }
        }
    }
    return total;
}

// Dense-scan Legendre transform: max over a geometric r-grid of
// r*ell - A(x,r), refined around the best point.
inline double conjugate_scan(const PhiFunction& phi, std::size_t x, double ell) {
    if (ell == 0.0) return 0.0;
    double best = 0.0, best_r = 0.0;
    for (int k = -400; k <= 400; ++k) {
        const double r = std::pow(2.0, 0.1 * k);
        const double v = r * ell - phi.eval(x, r);
        if (v > best) { best = v; best_r = r; }
    }
    // local refinement
    double lo = best_r * std::pow(2.0, -0.1), hi = best_r * std::pow(2.0, 0.1);
    for (int it = 0; it < 200; ++it) {
        const double m1 = lo + (hi - lo) / 3.0, m2 = hi - (hi - lo) / 3.0;
        if (m1 * ell - phi.eval(x, m1) < m2 * ell - phi.eval(x, m2)) lo = m1;
        else hi = m2;
    }
    const double r = 0.5 * (lo + hi);
    return std::max(best, r * ell - phi.eval(x, r));
}

} // namespace fso::testing
