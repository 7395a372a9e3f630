#pragma once

#include <array>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "fso/errors.hpp"

namespace fso {

// Uniform periodic grid on the box [-L/2, L/2)^d, d in {1,2}, N points per
// axis (power of two). The box stands in for R^d: all fields of interest are
// supported well inside it.
struct Grid {
    int dim = 1;
    std::size_t n = 0;
    double length = 0.0;

    Grid() = default;
    Grid(int dim_, std::size_t n_, double length_) : dim(dim_), n(n_), length(length_) {
        if (dim != 1 && dim != 2) throw std::domain_error("Grid: dimension must be 1 or 2");
        if (n < 8 || (n & (n - 1)) != 0) throw std::domain_error("Grid: N must be a power of two >= 8");
        if (!(length > 0.0)) throw std::domain_error("Grid: period L must be positive");
    }

    std::size_t size() const { return dim == 1 ? n : n * n; }
    double spacing() const { return length / static_cast<double>(n); }
    double cell_volume() const { return dim == 1 ? spacing() : spacing() * spacing(); }
    double coord(std::size_t i) const { return -0.5 * length + spacing() * static_cast<double>(i); }

    // Signed integer frequency for FFT bin j: k in [-N/2, N/2).
    long long freq_index(std::size_t j) const {
        const long long half = static_cast<long long>(n) / 2;
        const long long jj = static_cast<long long>(j);
        return jj < half ? jj : jj - static_cast<long long>(n);
    }

    bool operator==(const Grid& o) const { return dim == o.dim && n == o.n && length == o.length; }
    bool operator!=(const Grid& o) const { return !(*this == o); }
};

// Real samples on a Grid, row-major in 2D (index = ix*n + iy).
struct GridField {
    Grid grid;
    std::vector<double> v;

    GridField() = default;
    explicit GridField(const Grid& g, double fill = 0.0) : grid(g), v(g.size(), fill) {}

    std::size_t size() const { return v.size(); }
    double& operator[](std::size_t i) { return v[i]; }
    double operator[](std::size_t i) const { return v[i]; }
    double& at2(std::size_t ix, std::size_t iy) { return v[ix * grid.n + iy]; }
    double at2(std::size_t ix, std::size_t iy) const { return v[ix * grid.n + iy]; }

    bool all_finite() const {
        for (double x : v)
            if (!std::isfinite(x)) return false;
        return true;
    }
};

// d-component vector field; all components share one grid.
struct VectorGridField {
    Grid grid;
    std::vector<GridField> comp;

    VectorGridField() = default;
    explicit VectorGridField(const Grid& g) : grid(g), comp(static_cast<std::size_t>(g.dim), GridField(g)) {}

    int dim() const { return grid.dim; }
    std::size_t size() const { return grid.size(); }
    double magnitude(std::size_t i) const {
        if (grid.dim == 1) return std::abs(comp[0][i]);
        return std::hypot(comp[0][i], comp[1][i]);
    }
};

// Indicator of the open set Omega inside the box. A full-torus mask (every
// cell inside) is permitted for the periodic model problems; proper masks
// must leave the complement nonempty.
struct DomainMask {
    Grid grid;
    std::vector<std::uint8_t> inside;
    std::size_t count = 0;

    DomainMask() = default;
    DomainMask(const Grid& g, std::vector<std::uint8_t> in) : grid(g), inside(std::move(in)) {
        if (inside.size() != grid.size()) throw config_error("DomainMask: indicator size mismatch");
        for (auto b : inside) count += (b != 0);
        if (count == 0) throw config_error("DomainMask: empty domain");
    }

    static DomainMask full(const Grid& g) {
        return DomainMask(g, std::vector<std::uint8_t>(g.size(), 1));
    }

    // 1D interval [center-half_width, center+half_width].
    static DomainMask interval(const Grid& g, double center, double half_width) {
        if (g.dim != 1) throw config_error("DomainMask::interval: 1D grids only");
        std::vector<std::uint8_t> in(g.size(), 0);
        for (std::size_t i = 0; i < g.size(); ++i)
            in[i] = std::abs(g.coord(i) - center) <= half_width ? 1 : 0;
        return DomainMask(g, std::move(in));
    }

    // 2D disk of given radius.
    static DomainMask disk(const Grid& g, double cx, double cy, double radius) {
        if (g.dim != 2) throw config_error("DomainMask::disk: 2D grids only");
        std::vector<std::uint8_t> in(g.size(), 0);
        for (std::size_t ix = 0; ix < g.n; ++ix)
            for (std::size_t iy = 0; iy < g.n; ++iy)
                in[ix * g.n + iy] =
                    std::hypot(g.coord(ix) - cx, g.coord(iy) - cy) <= radius ? 1 : 0;
        return DomainMask(g, std::move(in));
    }

    bool is_full() const { return count == grid.size(); }

    void project(GridField& u) const {
        if (u.grid != grid) throw config_error("DomainMask::project: grid mismatch");
        if (is_full()) return;
        for (std::size_t i = 0; i < inside.size(); ++i)
            if (!inside[i]) u[i] = 0.0;
    }

    bool contains_support(const GridField& u, double rel_tol = 1e-12) const {
        if (u.grid != grid) throw config_error("DomainMask: grid mismatch");
        double peak = 0.0;
        for (double x : u.v) peak = std::max(peak, std::abs(x));
        if (peak == 0.0) return true;
        for (std::size_t i = 0; i < inside.size(); ++i)
            if (!inside[i] && std::abs(u[i]) > rel_tol * peak) return false;
        return true;
    }
};

// Small deterministic generator (splitmix64): identical streams on every
// platform, independent of <random> implementation details.
struct SplitMix64 {
    std::uint64_t state;
    explicit SplitMix64(std::uint64_t seed) : state(seed) {}
    std::uint64_t next_u64() {
        std::uint64_t z = (state += 0x9e3779b97f4a7c15ull);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    }
    // Uniform in [0,1).
    double next_double() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }
    // Uniform in [-1,1).
    double next_signed() { return 2.0 * next_double() - 1.0; }
};

} // namespace fso
