// Timing comparison of the OpenMP kernels against their serial reference
// implementations: modular reduction, 2D multiplier application, and the
// oracle convolution.

#include <chrono>
#include <cstdio>

#include "fso/fft.hpp"
#include "fso/fields.hpp"
#include "fso/orlicz.hpp"
#include "fso/parallel.hpp"
#include "fso/phi.hpp"
#include "fso/spectral.hpp"

using clock_type = std::chrono::steady_clock;

namespace {

template <class F>
double time_ms(int reps, F&& body) {
    const auto t0 = clock_type::now();
    for (int r = 0; r < reps; ++r) body();
    const auto t1 = clock_type::now();
    return std::chrono::duration<double, std::milli>(t1 - t0).count() / reps;
}

void report(const char* name, double serial_ms, double parallel_ms) {
    std::printf("%-28s serial %9.3f ms   parallel %9.3f ms   speedup %5.2fx\n", name, serial_ms,
                parallel_ms, serial_ms / parallel_ms);
}

} // namespace

int main() {
    std::printf("threads: %d\n", fso::par::max_threads());

    { // modular reduction, 2D double phase
        const fso::Grid g(2, 256, 16.0);
        const auto u = fso::random_mean_zero_field(g, 3);
        const auto phi = fso::PhiFunction::double_phase(2.0, 4.0, 0.5);
        const double vol = g.cell_volume();
        volatile double sink = 0.0;
        const double ser = time_ms(5, [&] {
            sink = vol * fso::par::reference::sum(u.size(), [&](std::size_t i) {
                return phi.eval(i, std::abs(u[i]));
            });
        });
        const double par = time_ms(5, [&] { sink = fso::modular(u, phi); });
        (void)sink;
        report("modular 256^2 double-phase", ser, par);
    }

    { // radix-2 transform vs the O(N^2) reference DFT, 1D N = 4096
        const fso::Grid g(1, 4096, 16.0);
        const auto u = fso::random_mean_zero_field(g, 5);
        std::vector<fso::fft::cplx> in(g.n);
        for (std::size_t i = 0; i < g.n; ++i) in[i] = fso::fft::cplx(u[i], 0.0);
        volatile double sink = 0.0;
        const double slow = time_ms(1, [&] { sink = fso::fft::dft_reference(in, false)[1].real(); });
        const double fast = time_ms(50, [&] { sink = fso::fft::forward(u)[1].real(); });
        (void)sink;
        report("fft N=4096 vs reference DFT", slow, fast);
    }

    { // 2D multiplier application (rows transformed in parallel)
        const fso::Grid g(2, 256, 16.0);
        const auto u = fso::random_mean_zero_field(g, 6);
        volatile double sink = 0.0;
        const double par = time_ms(10, [&] { sink = fso::frac_laplacian(u, 0.5)[0]; });
        (void)sink;
        std::printf("%-28s %9.3f ms per application\n", "2D multiplier 256^2", par);
    }

    { // oracle convolution, serial vs OpenMP
        const fso::Grid g(1, 1024, 32.0);
        const auto u = fso::fields::mexican_hat(g, 0.0, 0.0, 1.0);
        const double s = 0.5;
        const double c = fso::mu_constant(1, s) / s;
        const double h = g.spacing();
        std::vector<double> w(2 * g.n - 1);
        auto F = [&](double z) {
            return z == 0.0 ? 0.0
                            : (z > 0 ? 1.0 : -1.0) * std::pow(std::abs(z), 1.0 - s) / (1.0 - s);
        };
        for (std::size_t t = 0; t < w.size(); ++t) {
            const double zm = (static_cast<double>(t) - static_cast<double>(g.n - 1)) * h;
            w[t] = c * (F(zm + 0.5 * h) - F(zm - 0.5 * h));
        }
        volatile double sink = 0.0;
        const double ser = time_ms(3, [&] {
            sink = fso::detail::oracle_convolution_1d(u, w, false)[0];
        });
        const double par = time_ms(3, [&] {
            sink = fso::detail::oracle_convolution_1d(u, w, true)[0];
        });
        (void)sink;
        report("oracle convolution N=1024", ser, par);
    }

    return 0;
}
