#pragma once

#include <cstddef>
#include <vector>

#if defined(_OPENMP)
#include <omp.h>
#endif

// Data-parallel primitives used by the hot kernels (modular sums, pointwise
// symbol loops, the quadrature oracle). The OpenMP variants accumulate into
// fixed-size chunks that are combined in chunk order, so results are
// bit-identical regardless of thread count. fso::par::reference holds plain
// serial loops kept as the reference implementations for testing and for the
// benchmark target.
namespace fso::par {

inline constexpr std::size_t kChunk = 4096;

inline int max_threads() {
#if defined(_OPENMP)
    return omp_get_max_threads();
#else
    return 1;
#endif
}

template <class F>
void parallel_for(std::size_t n, F&& body) {
#if defined(_OPENMP)
#pragma omp parallel for schedule(static)
    for (long long i = 0; i < static_cast<long long>(n); ++i)
        body(static_cast<std::size_t>(i));
#else
    for (std::size_t i = 0; i < n; ++i) body(i);
#endif
}

// Deterministic chunked reduction: partial sums per chunk, combined serially
// in ascending chunk index.
template <class F>
double sum(std::size_t n, F&& term) {
    if (n == 0) return 0.0;
    const std::size_t nchunks = (n + kChunk - 1) / kChunk;
    std::vector<double> partial(nchunks, 0.0);
#if defined(_OPENMP)
#pragma omp parallel for schedule(static)
#endif
    for (long long c = 0; c < static_cast<long long>(nchunks); ++c) {
        const std::size_t lo = static_cast<std::size_t>(c) * kChunk;
        const std::size_t hi = lo + kChunk < n ? lo + kChunk : n;
        double acc = 0.0;
        for (std::size_t i = lo; i < hi; ++i) acc += term(i);
        partial[static_cast<std::size_t>(c)] = acc;
    }
    double total = 0.0;
    for (double p : partial) total += p;
    return total;
}

namespace reference {

template <class F>
void parallel_for(std::size_t n, F&& body) {
    for (std::size_t i = 0; i < n; ++i) body(i);
}

template <class F>
double sum(std::size_t n, F&& term) {
    double acc = 0.0;
    for (std::size_t i = 0; i < n; ++i) acc += term(i);
    return acc;
}

} // namespace reference

} // namespace fso::par
