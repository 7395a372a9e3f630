#pragma once

#include <complex>
#include <optional>
#include <vector>

#include "fso/grid.hpp"

namespace fso {

// Fourier-multiplier operators on the periodic grid, with the frequency
// convention xi = 2*pi*k/L, integer k in [-N/2, N/2). Odd (imaginary) symbol
// factors vanish on the Nyquist row so that real inputs map to real outputs;
// |xi| keeps the Nyquist contribution.
enum class ZeroModePolicy { Zero, Reject, Preserve };

struct SpectralMultiplier {
    enum class Kind {
        RieszGradient,       // i xi_j |xi|^{s-1}, scalar -> vector
        RieszDivergence,     // sum_j i xi_j |xi|^{s-1}, vector -> scalar
        RieszPotential,      // |xi|^{-s}, scalar -> scalar, zero mode per policy
        RieszTransform,      // -i xi_j / |xi|, scalar -> vector
        FracLaplacian,       // |xi|^{2 sigma}, scalar -> scalar
        InterpolationSymbol, // |xi|^sigma / (1 + |xi|^s), scalar -> scalar
    };

    Kind kind;
    double s = 0.0;
    double sigma = 0.0;
    ZeroModePolicy zero_mode = ZeroModePolicy::Zero;

    static SpectralMultiplier riesz_gradient(double s);
    static SpectralMultiplier riesz_divergence(double s);
    static SpectralMultiplier riesz_potential(double s, ZeroModePolicy policy = ZeroModePolicy::Reject);
    static SpectralMultiplier riesz_transform();
    static SpectralMultiplier frac_laplacian(double sigma);
    static SpectralMultiplier interpolation_symbol(double s, double sigma);
};

// Normalizing constant mu(d,s) = 2^s Gamma((d+s+1)/2) / (pi^{d/2} Gamma((1-s)/2)),
// extended to s in [-1,1] with mu(d,1) = 0.
double mu_constant(int d, double s);

// Generic application; the overload must match the symbol kind
// (scalar-in/scalar-out, scalar-in/vector-out, vector-in/scalar-out).
GridField apply_multiplier(const SpectralMultiplier& m, const GridField& u);
VectorGridField apply_multiplier_vec(const SpectralMultiplier& m, const GridField& u);
GridField apply_multiplier(const SpectralMultiplier& m, const VectorGridField& V);

// Named operators.
VectorGridField riesz_gradient(const GridField& u, double s);
GridField riesz_divergence(const VectorGridField& V, double s);
GridField riesz_potential(const GridField& u, double s, ZeroModePolicy policy = ZeroModePolicy::Reject);
VectorGridField riesz_transform(const GridField& u);
GridField frac_laplacian(const GridField& u, double sigma);
GridField interpolation_multiplier(const GridField& u, double s, double sigma);

double mean(const GridField& u);
double l2_norm(const GridField& u);
double l2_norm(const VectorGridField& V);
// Cell-volume-weighted inner products.
double inner(const GridField& a, const GridField& b);
double inner(const VectorGridField& a, const VectorGridField& b);

// Real-space reference for riesz_gradient: the Riesz potential I_{1-s} is
// computed by direct quadrature of the convolution with
// mu(d,s)/(d+s-1) |x-y|^{-(d+s-1)} over the box (kernel integrated exactly
// over cells in 1D; polar-exact singular cell plus subsampled near cells in
// 2D), then differentiated with centered differences. Requires u supported
// in the central half of the box and a small grid.
VectorGridField quadrature_oracle_dsu(const GridField& u, double s);

// Seeded random field with exact Hermitian spectrum, zero mean and no
// Nyquist content: the resolved-field model the operator identities hold on.
GridField random_mean_zero_field(const Grid& g, std::uint64_t seed);

// Reality diagnostic: largest |imag|/max|real| of the inverse transform of
// the multiplied spectrum (before the real part is taken). component selects
// the output component for vector-valued symbols.
double multiplier_imag_residual(const SpectralMultiplier& m, const GridField& u, int component = 0);

namespace detail {
// Serial reference for the oracle's convolution loop (benchmark + tests).
std::vector<double> oracle_convolution_1d(const GridField& u, const std::vector<double>& weights, bool parallel);
} // namespace detail

} // namespace fso
