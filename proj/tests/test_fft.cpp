#include <doctest.h>

#include <complex>

#include "fso/fft.hpp"
#include "fso/grid.hpp"

using namespace fso;
using fft::cplx;

namespace {

double max_abs_diff(const std::vector<cplx>& a, const std::vector<cplx>& b) {
    double m = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
    return m;
}

} // namespace

TEST_CASE("radix-2 transform matches the reference DFT") {
    SplitMix64 rng(11);
    for (std::size_t n : {8u, 64u, 256u}) {
        std::vector<cplx> a(n);
        for (auto& z : a) z = cplx(rng.next_signed(), rng.next_signed());
        auto fast = a;
        fft::transform_pow2(fast, false);
        const auto slow = fft::dft_reference(a, false);
        CHECK(max_abs_diff(fast, slow) < 1e-11 * static_cast<double>(n));

        auto inv = fast;
        fft::transform_pow2(inv, true);
        CHECK(max_abs_diff(inv, a) < 1e-13);
    }
}

TEST_CASE("2D forward/inverse round trip") {
    const Grid g(2, 16, 4.0);
    SplitMix64 rng(5);
    GridField u(g);
    for (auto& x : u.v) x = rng.next_signed();
    const auto spec = fft::forward(u);
    const auto back = fft::inverse_real(g, spec);
    double m = 0.0;
    for (std::size_t i = 0; i < u.size(); ++i) m = std::max(m, std::abs(u[i] - back[i]));
    CHECK(m < 1e-13);
}

TEST_CASE("forward transform of a pure mode lands in the right bin") {
    const Grid g(1, 32, 2.0 * 3.14159265358979323846);
    GridField u(g);
    for (std::size_t i = 0; i < g.n; ++i) u[i] = std::sin(3.0 * g.coord(i));
    const auto spec = fft::forward(u);
    // sin(3x) = (e^{i3x} - e^{-i3x}) / 2i: bins k=3 and k=-3 carry N/2 each
    for (std::size_t j = 0; j < g.n; ++j) {
        const long long k = g.freq_index(j);
        const double mag = std::abs(spec[j]);
        if (k == 3 || k == -3)
            CHECK(mag == doctest::Approx(g.n / 2.0).epsilon(1e-12));
        else
            CHECK(mag < 1e-10);
    }
}

TEST_CASE("non-power-of-two sizes are rejected") {
    std::vector<cplx> a(12);
    CHECK_THROWS_AS(fft::transform_pow2(a, false), std::invalid_argument);
}
