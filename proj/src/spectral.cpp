#include "fso/spectral.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "fso/errors.hpp"
#include "fso/fft.hpp"
#include "fso/parallel.hpp"

namespace fso {

using fft::cplx;

SpectralMultiplier SpectralMultiplier::riesz_gradient(double s) {
    if (s < 0.0 || s > 1.0) throw std::domain_error("riesz_gradient: s must lie in [0,1]");
    return {Kind::RieszGradient, s, 0.0, ZeroModePolicy::Zero};
}

SpectralMultiplier SpectralMultiplier::riesz_divergence(double s) {
    if (s < 0.0 || s > 1.0) throw std::domain_error("riesz_divergence: s must lie in [0,1]");
    return {Kind::RieszDivergence, s, 0.0, ZeroModePolicy::Zero};
}

SpectralMultiplier SpectralMultiplier::riesz_potential(double s, ZeroModePolicy policy) {
    if (!(s > 0.0 && s < 2.0)) throw std::domain_error("riesz_potential: s must lie in (0,2)");
    return {Kind::RieszPotential, s, 0.0, policy};
}

SpectralMultiplier SpectralMultiplier::riesz_transform() {
    return {Kind::RieszTransform, 0.0, 0.0, ZeroModePolicy::Zero};
}

SpectralMultiplier SpectralMultiplier::frac_laplacian(double sigma) {
    if (!(sigma > 0.0 && sigma <= 1.0)) throw std::domain_error("frac_laplacian: order must lie in (0,1]");
    return {Kind::FracLaplacian, 0.0, sigma, ZeroModePolicy::Zero};
}

SpectralMultiplier SpectralMultiplier::interpolation_symbol(double s, double sigma) {
    if (!(0.0 <= sigma && sigma <= s && s <= 1.0))
        throw std::domain_error("interpolation_symbol: need 0 <= sigma <= s <= 1");
    return {Kind::InterpolationSymbol, s, sigma, ZeroModePolicy::Preserve};
}

double mu_constant(int d, double s) {
    if (d < 1) throw std::domain_error("mu_constant: d >= 1 required");
    if (s < -1.0 || s > 1.0) throw std::domain_error("mu_constant: s must lie in [-1,1]");
    if (s == 1.0) return 0.0;
    const double logval = s * std::numbers::ln2 + std::lgamma(0.5 * (d + s + 1.0)) -
                          std::lgamma(0.5 * (1.0 - s)) - 0.5 * d * std::log(std::numbers::pi);
    return std::exp(logval);
}

namespace {

struct Freq {
    double xi[2];  // full frequency, Nyquist included
    double xit[2]; // odd-factor frequency, zero on the Nyquist row
    double mag;    // |xi|
    bool zero;     // k == 0
};

inline Freq freq_at(const Grid& g, std::size_t idx) {
    Freq f{};
    const double base = 2.0 * std::numbers::pi / g.length;
    const long long nyq = -static_cast<long long>(g.n) / 2;
    long long k[2] = {0, 0};
    if (g.dim == 1) {
        k[0] = g.freq_index(idx);
    } else {
        k[0] = g.freq_index(idx / g.n);
        k[1] = g.freq_index(idx % g.n);
    }
    double sq = 0.0;
    for (int j = 0; j < g.dim; ++j) {
        f.xi[j] = base * static_cast<double>(k[j]);
        f.xit[j] = (k[j] == nyq) ? 0.0 : f.xi[j];
        sq += f.xi[j] * f.xi[j];
    }
    f.mag = std::sqrt(sq);
    f.zero = (k[0] == 0 && (g.dim == 1 || k[1] == 0));
    return f;
}

// |xi|^sigma with the 0^0 = 1 convention.
inline double pow0(double x, double e) {
    if (x == 0.0) return e == 0.0 ? 1.0 : 0.0;
    return std::pow(x, e);
}

void check_mean_zero(const SpectralMultiplier& m, const cplx& zero_bin, double scale, std::size_t npts) {
    if (m.zero_mode != ZeroModePolicy::Reject) return;
    const double mean_mag = std::abs(zero_bin) / static_cast<double>(npts);
    if (mean_mag > 1e-13 * std::max(1.0, scale))
        throw mean_zero_error("riesz_potential: input has nonzero mean under zero-mode policy 'reject'");
}

} // namespace

GridField apply_multiplier(const SpectralMultiplier& m, const GridField& u) {
    using Kind = SpectralMultiplier::Kind;
    if (m.kind == Kind::RieszGradient || m.kind == Kind::RieszTransform)
        throw std::invalid_argument("apply_multiplier: vector-valued symbol, use apply_multiplier_vec");
    if (m.kind == Kind::RieszDivergence)
        throw std::invalid_argument("apply_multiplier: divergence needs a vector field input");

    auto spec = fft::forward(u);
    double peak = 0.0;
    for (double x : u.v) peak = std::max(peak, std::abs(x));
    check_mean_zero(m, spec[0], peak, u.size());

    const Grid g = u.grid;
    par::parallel_for(spec.size(), [&](std::size_t i) {
        const Freq f = freq_at(g, i);
        double sym = 0.0;
        switch (m.kind) {
        case Kind::RieszPotential:
            sym = f.zero ? 0.0 : std::pow(f.mag, -m.s);
            if (f.zero && m.zero_mode == ZeroModePolicy::Preserve) sym = 1.0;
            break;
        case Kind::FracLaplacian:
            sym = pow0(f.mag, 2.0 * m.sigma);
            break;
        case Kind::InterpolationSymbol:
            sym = pow0(f.mag, m.sigma) / (1.0 + pow0(f.mag, m.s));
            break;
        default:
            break;
        }
        spec[i] *= sym;
    });
    return fft::inverse_real(g, std::move(spec));
}

VectorGridField apply_multiplier_vec(const SpectralMultiplier& m, const GridField& u) {
    using Kind = SpectralMultiplier::Kind;
    if (m.kind != Kind::RieszGradient && m.kind != Kind::RieszTransform)
        throw std::invalid_argument("apply_multiplier_vec: symbol is not vector-valued");

    const Grid g = u.grid;
    const auto spec = fft::forward(u);
    VectorGridField out(g);
    for (int comp = 0; comp < g.dim; ++comp) {
        std::vector<cplx> cs(spec.size());
        par::parallel_for(spec.size(), [&](std::size_t i) {
            const Freq f = freq_at(g, i);
            cplx sym(0.0, 0.0);
            if (!f.zero) {
                if (m.kind == Kind::RieszGradient)
                    sym = cplx(0.0, f.xit[comp] * std::pow(f.mag, m.s - 1.0));
                else
                    sym = cplx(0.0, -f.xit[comp] / f.mag);
            }
            cs[i] = spec[i] * sym;
        });
        out.comp[comp] = fft::inverse_real(g, std::move(cs));
    }
    return out;
}

GridField apply_multiplier(const SpectralMultiplier& m, const VectorGridField& V) {
    using Kind = SpectralMultiplier::Kind;
    if (m.kind != Kind::RieszDivergence)
        throw std::invalid_argument("apply_multiplier: vector input requires the divergence symbol");

    const Grid g = V.grid;
    std::vector<cplx> acc(g.size(), cplx(0.0, 0.0));
    for (int comp = 0; comp < g.dim; ++comp) {
        const auto spec = fft::forward(V.comp[comp]);
        par::parallel_for(spec.size(), [&](std::size_t i) {
            const Freq f = freq_at(g, i);
            if (!f.zero)
                acc[i] += spec[i] * cplx(0.0, f.xit[comp] * std::pow(f.mag, m.s - 1.0));
        });
    }
    return fft::inverse_real(g, std::move(acc));
}

VectorGridField riesz_gradient(const GridField& u, double s) {
    return apply_multiplier_vec(SpectralMultiplier::riesz_gradient(s), u);
}

GridField riesz_divergence(const VectorGridField& V, double s) {
    return apply_multiplier(SpectralMultiplier::riesz_divergence(s), V);
}

GridField riesz_potential(const GridField& u, double s, ZeroModePolicy policy) {
    return apply_multiplier(SpectralMultiplier::riesz_potential(s, policy), u);
}

VectorGridField riesz_transform(const GridField& u) {
    return apply_multiplier_vec(SpectralMultiplier::riesz_transform(), u);
}

GridField frac_laplacian(const GridField& u, double sigma) {
    return apply_multiplier(SpectralMultiplier::frac_laplacian(sigma), u);
}

GridField interpolation_multiplier(const GridField& u, double s, double sigma) {
    return apply_multiplier(SpectralMultiplier::interpolation_symbol(s, sigma), u);
}

double mean(const GridField& u) {
    return par::sum(u.size(), [&](std::size_t i) { return u[i]; }) / static_cast<double>(u.size());
}

double l2_norm(const GridField& u) {
    const double vol = u.grid.cell_volume();
    return std::sqrt(par::sum(u.size(), [&](std::size_t i) { return u[i] * u[i]; }) * vol);
}

double l2_norm(const VectorGridField& V) {
    const double vol = V.grid.cell_volume();
    double sq = 0.0;
    for (const auto& c : V.comp)
        sq += par::sum(c.size(), [&](std::size_t i) { return c[i] * c[i]; });
    return std::sqrt(sq * vol);
}

double inner(const GridField& a, const GridField& b) {
    if (a.grid != b.grid) throw config_error("inner: grid mismatch");
    return par::sum(a.size(), [&](std::size_t i) { return a[i] * b[i]; }) * a.grid.cell_volume();
}

double inner(const VectorGridField& a, const VectorGridField& b) {
    if (a.grid != b.grid) throw config_error("inner: grid mismatch");
    double acc = 0.0;
    for (int c = 0; c < a.dim(); ++c)
        acc += par::sum(a.size(), [&](std::size_t i) { return a.comp[c][i] * b.comp[c][i]; });
    return acc * a.grid.cell_volume();
}

GridField random_mean_zero_field(const Grid& g, std::uint64_t seed) {
    SplitMix64 rng(seed);
    const std::size_t n = g.size();
    std::vector<cplx> spec(n, cplx(0.0, 0.0));
    const long long nyq = -static_cast<long long>(g.n) / 2;
    auto partner = [&](std::size_t i) -> std::size_t {
        if (g.dim == 1) return (g.n - i) % g.n;
        const std::size_t ix = i / g.n, iy = i % g.n;
        return ((g.n - ix) % g.n) * g.n + (g.n - iy) % g.n;
    };
    auto has_nyquist = [&](std::size_t i) {
        if (g.dim == 1) return g.freq_index(i) == nyq;
        return g.freq_index(i / g.n) == nyq || g.freq_index(i % g.n) == nyq;
    };
    for (std::size_t i = 0; i < n; ++i) {
        const std::size_t j = partner(i);
        if (i == 0 || has_nyquist(i)) continue; // mean-zero, Nyquist-free
        if (i < j) {
            const cplx z(rng.next_signed(), rng.next_signed());
            spec[i] = z;
            spec[j] = std::conj(z);
        } else if (i == j) {
            spec[i] = cplx(rng.next_signed(), 0.0);
        }
    }
    GridField u = fft::inverse_real(g, std::move(spec));
    double peak = 0.0;
    for (double x : u.v) peak = std::max(peak, std::abs(x));
    if (peak > 0.0)
        for (auto& x : u.v) x /= peak;
    return u;
}

double multiplier_imag_residual(const SpectralMultiplier& m, const GridField& u, int component) {
    using Kind = SpectralMultiplier::Kind;
    auto spec = fft::forward(u);
    const Grid g = u.grid;
    for (std::size_t i = 0; i < spec.size(); ++i) {
        const Freq f = freq_at(g, i);
        cplx sym(0.0, 0.0);
        switch (m.kind) {
        case Kind::RieszPotential:
            sym = f.zero ? cplx(0.0, 0.0) : cplx(std::pow(f.mag, -m.s), 0.0);
            break;
        case Kind::FracLaplacian:
            sym = cplx(pow0(f.mag, 2.0 * m.sigma), 0.0);
            break;
        case Kind::InterpolationSymbol:
            sym = cplx(pow0(f.mag, m.sigma) / (1.0 + pow0(f.mag, m.s)), 0.0);
            break;
        case Kind::RieszGradient:
        case Kind::RieszDivergence:
            if (!f.zero) sym = cplx(0.0, f.xit[component] * std::pow(f.mag, m.s - 1.0));
            break;
        case Kind::RieszTransform:
            if (!f.zero) sym = cplx(0.0, -f.xit[component] / f.mag);
            break;
        }
        spec[i] *= sym;
    }
    return fft::inverse_imag_residual(g, std::move(spec));
}

namespace {

void require_central_support(const GridField& u) {
    double peak = 0.0;
    for (double x : u.v) peak = std::max(peak, std::abs(x));
    if (peak == 0.0) return;
    const Grid& g = u.grid;
    const double lim = 0.25 * g.length;
    for (std::size_t i = 0; i < u.size(); ++i) {
        bool outside;
        if (g.dim == 1) {
            outside = std::abs(g.coord(i)) > lim;
        } else {
            outside = std::abs(g.coord(i / g.n)) > lim || std::abs(g.coord(i % g.n)) > lim;
        }
        if (outside && std::abs(u[i]) > 1e-12 * peak)
            throw oracle_error("quadrature_oracle_dsu: field not supported in the central half of the box");
    }
}

// Exact antiderivative of |z|^{-s}: F(z) = sign(z) |z|^{1-s} / (1-s).
inline double kernel_antideriv_1d(double z, double s) {
    if (z == 0.0) return 0.0;
    const double a = std::pow(std::abs(z), 1.0 - s) / (1.0 - s);
    return z > 0.0 ? a : -a;
}

} // namespace

namespace detail {

std::vector<double> oracle_convolution_1d(const GridField& u, const std::vector<double>& weights, bool parallel) {
    const std::size_t n = u.size();
    std::vector<double> pot(n, 0.0);
    auto body = [&](std::size_t i) {
        double acc = 0.0;
        // weights indexed by offset (i - j) + (n - 1)
        const double* w = weights.data() + (i + n - 1);
        for (std::size_t j = 0; j < n; ++j) acc += w[-static_cast<long long>(j)] * u[j];
        pot[i] = acc;
    };
    if (parallel)
        par::parallel_for(n, body);
    else
        par::reference::parallel_for(n, body);
    return pot;
}

} // namespace detail

VectorGridField quadrature_oracle_dsu(const GridField& u, double s) {
    const Grid& g = u.grid;
    if (!(s > 0.0 && s < 1.0)) throw std::domain_error("quadrature_oracle_dsu: s must lie in (0,1)");
    if (g.dim == 1 && g.n > 1024) throw oracle_error("quadrature_oracle_dsu: 1D grids limited to N <= 1024");
    if (g.dim == 2 && g.n > 128) throw oracle_error("quadrature_oracle_dsu: 2D grids limited to N <= 128 per axis");
    require_central_support(u);

    const double h = g.spacing();
    VectorGridField out(g);

    if (g.dim == 1) {
        const double c = mu_constant(1, s) / s; // mu(d,s)/(d+s-1), d = 1
        const std::size_t n = g.n;
        // Cell-exact kernel weights per offset m = i-j in [-(n-1), n-1];
        // the singular cell falls out of the same antiderivative.
        std::vector<double> w(2 * n - 1);
        for (std::size_t t = 0; t < 2 * n - 1; ++t) {
            const double zm = (static_cast<double>(t) - static_cast<double>(n - 1)) * h;
            w[t] = c * (kernel_antideriv_1d(zm + 0.5 * h, s) - kernel_antideriv_1d(zm - 0.5 * h, s));
        }
        const auto pot = detail::oracle_convolution_1d(u, w, true);
        // fourth-order centered differences, periodic wrap
        for (std::size_t i = 0; i < n; ++i) {
            const std::size_t ip = (i + 1) % n, ipp = (i + 2) % n;
            const std::size_t im = (i + n - 1) % n, imm = (i + n - 2) % n;
            out.comp[0][i] = (-pot[ipp] + 8.0 * pot[ip] - 8.0 * pot[im] + pot[imm]) / (12.0 * h);
        }
        return out;
    }

    // 2D: kernel |z|^{-(1+s)}; polar-exact singular cell over the equal-area
    // disc, 4x4 subsamples in the near field, midpoint beyond.
    const double c = mu_constant(2, s) / (1.0 + s);
    const std::size_t n = g.n;
    const long long nn = static_cast<long long>(n);
    std::vector<double> w((2 * n - 1) * (2 * n - 1));
    par::parallel_for(2 * n - 1, [&](std::size_t tx) {
        const long long mx = static_cast<long long>(tx) - (nn - 1);
        for (std::size_t ty = 0; ty < 2 * n - 1; ++ty) {
            const long long my = static_cast<long long>(ty) - (nn - 1);
            double ww;
            if (mx == 0 && my == 0) {
                const double req = h / std::sqrt(std::numbers::pi);
                ww = 2.0 * std::numbers::pi * std::pow(req, 1.0 - s) / (1.0 - s);
            } else if (std::llabs(mx) <= 2 && std::llabs(my) <= 2) {
                ww = 0.0;
                for (int a = 0; a < 4; ++a)
                    for (int b = 0; b < 4; ++b) {
                        const double zx = mx * h + (a - 1.5) * h / 4.0;
                        const double zy = my * h + (b - 1.5) * h / 4.0;
                        ww += std::pow(std::hypot(zx, zy), -(1.0 + s)) * (h * h / 16.0);
                    }
            } else {
                ww = std::pow(std::hypot(mx * h, my * h), -(1.0 + s)) * h * h;
            }
            w[tx * (2 * n - 1) + ty] = c * ww;
        }
    });

    std::vector<double> pot(n * n, 0.0);
    par::parallel_for(n, [&](std::size_t ix) {
        for (std::size_t iy = 0; iy < n; ++iy) {
            double acc = 0.0;
            for (std::size_t jx = 0; jx < n; ++jx) {
                const std::size_t tx = ix - jx + (n - 1);
                const double* wrow = w.data() + tx * (2 * n - 1) + (iy + n - 1);
                const double* urow = u.v.data() + jx * n;
                for (std::size_t jy = 0; jy < n; ++jy)
                    acc += wrow[-static_cast<long long>(jy)] * urow[jy];
            }
            pot[ix * n + iy] = acc;
        }
    });
    for (std::size_t ix = 0; ix < n; ++ix) {
        const std::size_t xp = (ix + 1) % n, xpp = (ix + 2) % n;
        const std::size_t xm = (ix + n - 1) % n, xmm = (ix + n - 2) % n;
        for (std::size_t iy = 0; iy < n; ++iy) {
            const std::size_t yp = (iy + 1) % n, ypp = (iy + 2) % n;
            const std::size_t ym = (iy + n - 1) % n, ymm = (iy + n - 2) % n;
            out.comp[0].at2(ix, iy) = (-pot[xpp * n + iy] + 8.0 * pot[xp * n + iy] -
                                       8.0 * pot[xm * n + iy] + pot[xmm * n + iy]) /
                                      (12.0 * h);
            out.comp[1].at2(ix, iy) = (-pot[ix * n + ypp] + 8.0 * pot[ix * n + yp] -
                                       8.0 * pot[ix * n + ym] + pot[ix * n + ymm]) /
                                      (12.0 * h);
        }
    }
    return out;
}

} // namespace fso
