#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>

#include "fso/grid.hpp"

// Deterministic analytic field builders. Everything is defined by continuum
// formulas sampled on the grid, so refining N keeps the same function.
namespace fso::fields {

// C^infty compact bump: exp(1 - 1/(1 - t^2)) for |t| < 1, else 0.
inline double bump_profile(double t) {
    const double t2 = t * t;
    if (t2 >= 1.0) return 0.0;
    return std::exp(1.0 - 1.0 / (1.0 - t2));
}

inline GridField bump(const Grid& g, double cx, double cy, double width) {
    GridField u(g);
    if (g.dim == 1) {
        for (std::size_t i = 0; i < g.size(); ++i)
            u[i] = bump_profile((g.coord(i) - cx) / width);
    } else {
        for (std::size_t ix = 0; ix < g.n; ++ix)
            for (std::size_t iy = 0; iy < g.n; ++iy) {
                const double r = std::hypot(g.coord(ix) - cx, g.coord(iy) - cy);
                u.at2(ix, iy) = bump_profile(r / width);
            }
    }
    return u;
}

inline GridField gaussian(const Grid& g, double cx, double cy, double width) {
    GridField u(g);
    if (g.dim == 1) {
        for (std::size_t i = 0; i < g.size(); ++i) {
            const double t = (g.coord(i) - cx) / width;
            u[i] = std::exp(-0.5 * t * t);
        }
    } else {
        for (std::size_t ix = 0; ix < g.n; ++ix)
            for (std::size_t iy = 0; iy < g.n; ++iy) {
                const double tx = (g.coord(ix) - cx) / width, ty = (g.coord(iy) - cy) / width;
                u.at2(ix, iy) = std::exp(-0.5 * (tx * tx + ty * ty));
            }
    }
    return u;
}

// Second derivative of a Gaussian ("Mexican hat"): zero mean AND zero first
// moment, so periodization tails decay fast; the oracle cross-check uses it.
inline GridField mexican_hat(const Grid& g, double cx, double cy, double width) {
    GridField u(g);
    if (g.dim == 1) {
        for (std::size_t i = 0; i < g.size(); ++i) {
            const double t = (g.coord(i) - cx) / width;
            u[i] = (1.0 - t * t) * std::exp(-0.5 * t * t);
        }
    } else {
        for (std::size_t ix = 0; ix < g.n; ++ix)
            for (std::size_t iy = 0; iy < g.n; ++iy) {
                const double tx = (g.coord(ix) - cx) / width, ty = (g.coord(iy) - cy) / width;
                const double r2 = tx * tx + ty * ty;
                u.at2(ix, iy) = (1.0 - 0.5 * r2) * std::exp(-0.5 * r2);
            }
    }
    return u;
}

// Difference of two nested compact bumps with exactly zero integral:
// bump(w) - 2^{-d/2} bump(sqrt(2) w). Compact support keeps the quadrature
// oracle's support precondition exact, zero mass keeps periodization tails
// two orders smaller.
inline GridField compact_mean_zero_bump(const Grid& g, double cx, double cy, double width) {
    GridField u = bump(g, cx, cy, width);
    const GridField outer = bump(g, cx, cy, std::sqrt(2.0) * width);
    const double c = std::pow(2.0, -0.5 * g.dim);
    for (std::size_t i = 0; i < u.size(); ++i) u[i] -= c * outer[i];
    return u;
}

// Sum of low modes with seeded coefficients; mean-zero and Nyquist-free by
// construction.
inline GridField band_limited(const Grid& g, std::uint64_t seed, int kmax) {
    SplitMix64 rng(seed);
    GridField u(g);
    const double base = 2.0 * std::numbers::pi / g.length;
    if (g.dim == 1) {
        for (int k = 1; k <= kmax; ++k) {
            const double a = rng.next_signed(), b = rng.next_signed();
            for (std::size_t i = 0; i < g.size(); ++i) {
                const double ph = base * k * g.coord(i);
                u[i] += a * std::cos(ph) + b * std::sin(ph);
            }
        }
    } else {
        for (int kx = -kmax; kx <= kmax; ++kx)
            for (int ky = 1; ky <= kmax; ++ky) { // half-plane; real combination below
                const double a = rng.next_signed(), b = rng.next_signed();
                for (std::size_t ix = 0; ix < g.n; ++ix)
                    for (std::size_t iy = 0; iy < g.n; ++iy) {
                        const double ph = base * (kx * g.coord(ix) + ky * g.coord(iy));
                        u.at2(ix, iy) += a * std::cos(ph) + b * std::sin(ph);
                    }
            }
    }
    return u;
}

inline GridField mode(const Grid& g, int kx, int ky = 0) {
    GridField u(g);
    const double base = 2.0 * std::numbers::pi / g.length;
    if (g.dim == 1) {
        for (std::size_t i = 0; i < g.size(); ++i) u[i] = std::sin(base * kx * g.coord(i));
    } else {
        for (std::size_t ix = 0; ix < g.n; ++ix)
            for (std::size_t iy = 0; iy < g.n; ++iy)
                u.at2(ix, iy) = std::sin(base * (kx * g.coord(ix) + ky * g.coord(iy)));
    }
    return u;
}

inline GridField multiply(GridField a, const GridField& b) {
    for (std::size_t i = 0; i < a.size(); ++i) a[i] *= b[i];
    return a;
}

inline GridField scale(GridField a, double c) {
    for (auto& x : a.v) x *= c;
    return a;
}

inline GridField add(GridField a, const GridField& b, double cb = 1.0) {
    for (std::size_t i = 0; i < a.size(); ++i) a[i] += cb * b[i];
    return a;
}

inline GridField subtract(const GridField& a, const GridField& b) {
    GridField out = a;
    for (std::size_t i = 0; i < out.size(); ++i) out[i] -= b[i];
    return out;
}

inline VectorGridField subtract(const VectorGridField& a, const VectorGridField& b) {
    VectorGridField out = a;
    for (int c = 0; c < out.dim(); ++c)
        for (std::size_t i = 0; i < out.size(); ++i) out.comp[c][i] -= b.comp[c][i];
    return out;
}

} // namespace fso::fields
