#pragma once

#include <complex>
#include <span>
#include <vector>

#include "fso/grid.hpp"

namespace fso::fft {

using cplx = std::complex<double>;

// In-place radix-2 Cooley-Tukey transform; size must be a power of two.
// Forward uses e^{-i 2pi jk/N}; inverse applies the conjugate kernel and the
// 1/N factor.
void transform_pow2(std::span<cplx> a, bool inverse);

// O(N^2) discrete Fourier transform, the serial reference implementation the
// fast path is tested against.
std::vector<cplx> dft_reference(std::span<const cplx> in, bool inverse);

// Forward transform of a real field to its complex spectrum, in FFT bin
// order (bin j <-> integer frequency k = j or j-N per Grid::freq_index).
// 2D spectra are row-major like the fields; rows are transformed in parallel.
std::vector<cplx> forward(const GridField& u);

// Inverse transform of a spectrum, keeping the real part.
GridField inverse_real(const Grid& g, std::vector<cplx> spectrum);

// Largest |imag| / max(1, max|real|) of the inverse transform: used by tests
// to confirm Hermitian symmetry of multiplier outputs.
double inverse_imag_residual(const Grid& g, std::vector<cplx> spectrum);

} // namespace fso::fft
