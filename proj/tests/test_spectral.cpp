#include <doctest.h>

#include <cmath>
#include <numbers>

#include "fso/errors.hpp"
#include "fso/experiments.hpp"
#include "fso/fields.hpp"
#include "fso/spectral.hpp"

using namespace fso;

namespace {

const double kPi = std::numbers::pi;

double rel_l2(const GridField& a, const GridField& b) {
    double num = 0.0, den = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        num += (a[i] - b[i]) * (a[i] - b[i]);
        den += b[i] * b[i];
    }
    return std::sqrt(num / den);
}

} // namespace

TEST_CASE("mu(d,s): closed-form values and endpoint limit") {
    CHECK(mu_constant(1, 1.0) == 0.0);
    CHECK(mu_constant(2, 1.0) == 0.0);
    CHECK(mu_constant(1, 0.0) == doctest::Approx(1.0 / kPi).epsilon(1e-13));
    // mu(1, 0.5) = 2^{1/2} Gamma(1.25) / (pi^{1/2} Gamma(0.25))
    const double expected = std::pow(2.0, 0.5) * std::tgamma(1.25) / (std::sqrt(kPi) * std::tgamma(0.25));
    CHECK(mu_constant(1, 0.5) == doctest::Approx(expected).epsilon(1e-13));
    double sup = 0.0;
    for (int i = -100; i <= 100; ++i) sup = std::max(sup, mu_constant(2, i / 100.0));
    CHECK(std::isfinite(sup));
    CHECK_THROWS_AS(mu_constant(1, 1.5), std::domain_error);
}

TEST_CASE("riesz gradient on unit-frequency sine is cosine for every s") {
    const Grid g(1, 64, 2.0 * kPi);
    GridField u(g), expected(g);
    for (std::size_t i = 0; i < g.n; ++i) {
        u[i] = std::sin(g.coord(i));
        expected[i] = std::cos(g.coord(i));
    }
    for (double s : {0.0, 0.3, 0.5, 1.0}) {
        const auto grad = riesz_gradient(u, s);
        CHECK(rel_l2(grad.comp[0], expected) < 1e-13);
    }
}

TEST_CASE("riesz gradient at k=2 scales by 2^s") {
    const Grid g(1, 64, 2.0 * kPi);
    GridField u(g), expected(g);
    const double s = 0.5;
    for (std::size_t i = 0; i < g.n; ++i) {
        u[i] = std::sin(2.0 * g.coord(i));
        expected[i] = std::pow(2.0, s) * std::cos(2.0 * g.coord(i));
    }
    CHECK(rel_l2(riesz_gradient(u, s).comp[0], expected) < 1e-13);
}

TEST_CASE("1D riesz transform is the Hilbert transform: sin -> -cos") {
    const Grid g(1, 64, 2.0 * kPi);
    GridField u(g), expected(g);
    for (std::size_t i = 0; i < g.n; ++i) {
        u[i] = std::sin(g.coord(i));
        expected[i] = -std::cos(g.coord(i));
    }
    CHECK(rel_l2(riesz_transform(u).comp[0], expected) < 1e-13);
}

TEST_CASE("fractional laplacian eigenvalues |k|^{2 sigma}") {
    const Grid g(1, 64, 2.0 * kPi);
    GridField u1(g), u3(g);
    for (std::size_t i = 0; i < g.n; ++i) {
        u1[i] = std::sin(g.coord(i));
        u3[i] = std::sin(3.0 * g.coord(i));
    }
    for (double sg : {0.25, 0.5, 1.0}) {
        CHECK(rel_l2(frac_laplacian(u1, sg), u1) < 1e-13); // unit frequency: eigenvalue 1
        GridField expected(g);
        for (std::size_t i = 0; i < g.n; ++i) expected[i] = std::pow(3.0, 2.0 * sg) * u3[i];
        CHECK(rel_l2(frac_laplacian(u3, sg), expected) < 1e-13);
    }
}

TEST_CASE("riesz potential: eigenvalues and the zero-mode policy") {
    const Grid g(1, 64, 2.0 * kPi);
    GridField u(g);
    for (std::size_t i = 0; i < g.n; ++i) u[i] = std::sin(2.0 * g.coord(i));
    GridField expected(g);
    for (std::size_t i = 0; i < g.n; ++i) expected[i] = std::pow(2.0, -0.7) * u[i];
    CHECK(rel_l2(riesz_potential(u, 0.7), expected) < 1e-13);

    GridField biased = u;
    for (auto& x : biased.v) x += 0.5;
    CHECK_THROWS_AS(riesz_potential(biased, 0.7), mean_zero_error);
    // policy Zero annihilates the mean instead
    const auto shifted = riesz_potential(biased, 0.7, ZeroModePolicy::Zero);
    CHECK(rel_l2(shifted, expected) < 1e-13);
}

TEST_CASE("interpolation symbol: unit frequency gives exactly 1/2") {
    const Grid g(1, 64, 2.0 * kPi);
    GridField u(g);
    for (std::size_t i = 0; i < g.n; ++i) u[i] = std::sin(g.coord(i));
    for (const auto& ss : {std::pair{0.5, 0.5}, std::pair{1.0, 0.25}, std::pair{0.8, 0.0}}) {
        const auto tv = interpolation_multiplier(u, ss.first, ss.second);
        GridField expected(g);
        for (std::size_t i = 0; i < g.n; ++i) expected[i] = 0.5 * u[i];
        CHECK(rel_l2(tv, expected) < 1e-13);
    }
    // constants: zero-mode symbol 0^sigma/(1+0^s) with the 0^0 = 1 convention
    GridField c(g, 2.0);
    const auto t1 = interpolation_multiplier(c, 0.5, 0.25);
    for (double x : t1.v) CHECK(std::abs(x) < 1e-13); // sigma > 0: annihilated
    const auto t2 = interpolation_multiplier(c, 0.5, 0.0);
    for (double x : t2.v) CHECK(x == doctest::Approx(2.0).epsilon(1e-13)); // 1/(1+0) = 1
    const auto t3 = interpolation_multiplier(c, 0.0, 0.0);
    for (double x : t3.v) CHECK(x == doctest::Approx(1.0).epsilon(1e-13)); // 1/(1+1) = 1/2
}

TEST_CASE("constant fields map to zero under gradient and transform") {
    const Grid g(1, 32, 4.0);
    GridField c(g, 3.25);
    const auto grad = riesz_gradient(c, 0.5);
    for (const auto& comp : grad.comp)
        for (double x : comp.v) CHECK(std::abs(x) < 1e-14);
    const auto tr = riesz_transform(c);
    for (const auto& comp : tr.comp)
        for (double x : comp.v) CHECK(std::abs(x) < 1e-14);
}

TEST_CASE("operator identity suite passes at unit-test scale (1D and 2D)") {
    for (const Grid& g : {Grid(1, 512, 16.0), Grid(2, 64, 16.0)}) {
        const auto recs = experiments::run_identity_suite(g, 99);
        for (const auto& r : recs) {
            INFO(r.id, " s=", r.s, " err=", r.error);
            CHECK(r.pass);
        }
    }
}

TEST_CASE("shape mismatches are rejected") {
    const Grid g(1, 32, 4.0);
    GridField u(g, 1.0);
    VectorGridField V(g);
    CHECK_THROWS_AS(apply_multiplier(SpectralMultiplier::riesz_gradient(0.5), u), std::invalid_argument);
    CHECK_THROWS_AS(apply_multiplier_vec(SpectralMultiplier::frac_laplacian(0.5), u), std::invalid_argument);
    CHECK_THROWS_AS(apply_multiplier(SpectralMultiplier::riesz_potential(0.5), V), std::invalid_argument);
    CHECK_THROWS_AS(SpectralMultiplier::riesz_gradient(1.5), std::domain_error);
    CHECK_THROWS_AS(SpectralMultiplier::riesz_potential(2.0), std::domain_error);
}
