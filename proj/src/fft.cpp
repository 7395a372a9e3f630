#include "fso/fft.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "fso/parallel.hpp"

namespace fso::fft {

namespace {

// Twiddle table w[j] = e^{-i pi j / half}, j < half (i.e. e^{-2pi i j/N}).
std::vector<cplx> twiddles(std::size_t half, bool inverse) {
    std::vector<cplx> w(half);
    const double sgn = inverse ? 1.0 : -1.0;
    for (std::size_t j = 0; j < half; ++j) {
        const double ang = sgn * std::numbers::pi * static_cast<double>(j) / static_cast<double>(half);
        w[j] = cplx(std::cos(ang), std::sin(ang));
    }
    return w;
}

void transform_with_table(std::span<cplx> a, const std::vector<cplx>& w, bool inverse) {
    const std::size_t n = a.size();
    // Bit-reversal permutation.
    for (std::size_t i = 1, j = 0; i < n; ++i) {
        std::size_t bit = n >> 1;
        for (; j & bit; bit >>= 1) j ^= bit;
        j ^= bit;
        if (i < j) std::swap(a[i], a[j]);
    }
    for (std::size_t len = 2; len <= n; len <<= 1) {
        const std::size_t stride = n / len;
        for (std::size_t i = 0; i < n; i += len) {
            for (std::size_t j = 0; j < len / 2; ++j) {
                const cplx t = a[i + j + len / 2] * w[j * stride];
                a[i + j + len / 2] = a[i + j] - t;
                a[i + j] = a[i + j] + t;
            }
        }
    }
    if (inverse) {
        const double scale = 1.0 / static_cast<double>(n);
        for (auto& x : a) x *= scale;
    }
}

} // namespace

void transform_pow2(std::span<cplx> a, bool inverse) {
    const std::size_t n = a.size();
    if (n == 0) return;
    if ((n & (n - 1)) != 0) throw std::invalid_argument("fft: size must be a power of two");
    if (n == 1) return;
    const auto w = twiddles(n / 2, inverse);
    transform_with_table(a, w, inverse);
}

std::vector<cplx> dft_reference(std::span<const cplx> in, bool inverse) {
    const std::size_t n = in.size();
    std::vector<cplx> out(n, cplx(0.0, 0.0));
    const double sgn = inverse ? 1.0 : -1.0;
    for (std::size_t k = 0; k < n; ++k) {
        cplx acc(0.0, 0.0);
        for (std::size_t j = 0; j < n; ++j) {
            const double ang = sgn * 2.0 * std::numbers::pi * static_cast<double>(j * k % n) / static_cast<double>(n);
            acc += in[j] * cplx(std::cos(ang), std::sin(ang));
        }
        out[k] = inverse ? acc / static_cast<double>(n) : acc;
    }
    return out;
}

namespace {

// 2D transform: rows, then columns. Rows are independent.
void transform_2d(std::vector<cplx>& a, std::size_t n, bool inverse) {
    const auto w = twiddles(n / 2, inverse);
    par::parallel_for(n, [&](std::size_t row) {
        transform_with_table(std::span<cplx>(a.data() + row * n, n), w, inverse);
    });
    par::parallel_for(n, [&](std::size_t col) {
        std::vector<cplx> tmp(n);
        for (std::size_t row = 0; row < n; ++row) tmp[row] = a[row * n + col];
        transform_with_table(tmp, w, inverse);
        for (std::size_t row = 0; row < n; ++row) a[row * n + col] = tmp[row];
    });
}

} // namespace

std::vector<cplx> forward(const GridField& u) {
    std::vector<cplx> a(u.size());
    for (std::size_t i = 0; i < u.size(); ++i) a[i] = cplx(u[i], 0.0);
    if (u.grid.dim == 1)
        transform_pow2(a, false);
    else
        transform_2d(a, u.grid.n, false);
    return a;
}

GridField inverse_real(const Grid& g, std::vector<cplx> spectrum) {
    if (spectrum.size() != g.size()) throw std::invalid_argument("fft: spectrum size mismatch");
    if (g.dim == 1)
        transform_pow2(spectrum, true);
    else
        transform_2d(spectrum, g.n, true);
    GridField out(g);
    for (std::size_t i = 0; i < spectrum.size(); ++i) out[i] = spectrum[i].real();
    return out;
}

double inverse_imag_residual(const Grid& g, std::vector<cplx> spectrum) {
    if (g.dim == 1)
        transform_pow2(spectrum, true);
    else
        transform_2d(spectrum, g.n, true);
    double maxim = 0.0, maxre = 0.0;
    for (const auto& z : spectrum) {
        maxim = std::max(maxim, std::abs(z.imag()));
        maxre = std::max(maxre, std::abs(z.real()));
    }
    return maxim / std::max(1.0, maxre);
}

} // namespace fso::fft
