#include <doctest.h>

#include <cmath>

#include "fso/errors.hpp"
#include "fso/grid.hpp"
#include "fso/phi.hpp"
#include "oracles.hpp"

using namespace fso;

namespace {

SamplingPlan plan_for(const Grid* g) {
    SamplingPlan plan;
    if (g)
        for (int i = 0; i < 6; ++i) plan.x_samples.push_back(g->size() * i / 6);
    else
        plan.x_samples = {0};
    return plan;
}

GridField cosine_profile(const Grid& g, double base, double amp) {
    GridField f(g);
    for (std::size_t i = 0; i < g.size(); ++i)
        f[i] = base + amp * std::cos(2.0 * std::numbers::pi * g.coord(i) / g.length);
    return f;
}

} // namespace

TEST_CASE("closed-form evaluations") {
    const auto half_square = PhiFunction::power(2.0, 0.5); // A = l^2/2
    CHECK(half_square.eval(0, 2.0) == doctest::Approx(2.0));
    CHECK(half_square.eval(0, 0.0) == 0.0);

    const auto dp = PhiFunction::double_phase(2.0, 4.0, 1.0);
    CHECK(dp.eval(0, 1.0) == doctest::Approx(2.0)); // 1^2 + 1*1^4
    CHECK(dp.eval(0, 0.0) == 0.0);
    CHECK_THROWS_AS(dp.eval(0, -1.0), std::domain_error);
}

TEST_CASE("densities: closed forms and the defining integral") {
    // A = l^p / p has density r^{p-2}
    const auto cubic = PhiFunction::power(3.0, 1.0 / 3.0);
    CHECK(cubic.density(0, 2.5) == doctest::Approx(2.5));
    // A = l^2 / 2 has density 1
    const auto half_square = PhiFunction::power(2.0, 0.5);
    CHECK(half_square.density(0, 0.37) == doctest::Approx(1.0));
    CHECK_THROWS_AS(half_square.density(0, 0.0), std::domain_error);

    // double phase: a(x,r) = p r^{p-2} + q alpha r^{q-2}
    const auto dp = PhiFunction::double_phase(2.0, 4.0, 0.7);
    CHECK(dp.density(0, 2.0) == doctest::Approx(2.0 + 4.0 * 0.7 * 4.0));

    // quadrature of a(x,r) r over [0,l] reproduces A(x,l) (all families)
    const Grid g(1, 16, 8.0);
    const std::vector<PhiFunction> phis = {
        PhiFunction::power(1.5, 2.0), cubic, dp,
        PhiFunction::variable_exponent(cosine_profile(g, 2.5, 0.4)),
        PhiFunction::log_perturbed(cosine_profile(g, 2.2, 0.3))};
    for (const auto& phi : phis) {
        const std::size_t xs = phi.parameter_grid() ? 5 : 0;
        for (double ell : {0.05, 1.0, 7.5}) {
            const double direct = phi.eval(xs, ell);
            const double quad = fso::testing::density_quadrature(phi, xs, ell);
            CHECK(std::abs(quad - direct) <= 1e-6 * std::max(direct, 1e-300));
        }
    }
}

TEST_CASE("conjugate: closed forms, numeric sup, Young, Fenchel-Moreau") {
    const auto half_square = PhiFunction::power(2.0, 0.5);
    for (double ell : {0.3, 1.0, 4.0})
        CHECK(half_square.conjugate(0, ell) == doctest::Approx(0.5 * ell * ell).epsilon(1e-12));

    // A = l^3/3: A'(1) = 1/p' = 2/3
    const auto third_cubic = PhiFunction::power(3.0, 1.0 / 3.0);
    CHECK(third_cubic.conjugate(0, 1.0) == doctest::Approx(2.0 / 3.0).epsilon(1e-12));
    CHECK(third_cubic.conjugate(0, 0.0) == 0.0);

    const auto dp = PhiFunction::double_phase(2.0, 4.0, 0.6);
    const Grid g(1, 16, 8.0);
    const auto logp = PhiFunction::log_perturbed(cosine_profile(g, 2.3, 0.2));
    for (const auto& phi : {dp, logp}) {
        const std::size_t x = phi.parameter_grid() ? 3 : 0;
        for (double ell : {0.2, 1.0, 9.0}) {
            const double numeric = phi.conjugate(x, ell);
            const double scan = fso::testing::conjugate_scan(phi, x, ell);
            CHECK(numeric == doctest::Approx(scan).epsilon(1e-8));
        }
    }

    // Young's inequality on a sampled lattice
    SplitMix64 rng(21);
    for (int i = 0; i < 200; ++i) {
        const double r = std::pow(2.0, 10.0 * rng.next_signed());
        const double ell = std::pow(2.0, 10.0 * rng.next_signed());
        const double slack = dp.eval(0, r) + dp.conjugate(0, ell) - r * ell;
        CHECK(slack >= -1e-9 * std::max(1.0, std::abs(r * ell)));
    }

    // double conjugation recovers A on the ladder
    const auto dpc = conjugate_phi(dp);
    const auto dpcc = conjugate_phi(dpc);
    for (int k = -10; k <= 10; ++k) {
        const double ell = std::ldexp(1.0, k);
        CHECK(dpcc.eval(0, ell) == doctest::Approx(dp.eval(0, ell)).epsilon(1e-6));
    }
}

TEST_CASE("left inverse") {
    const auto pw = PhiFunction::power(3.0);
    for (double r : {0.5, 1.0, 10.0})
        CHECK(pw.left_inverse(0, r) == doctest::Approx(std::pow(r, 1.0 / 3.0)).epsilon(1e-12));
    CHECK(pw.left_inverse(0, 0.0) == 0.0);

    const auto dp = PhiFunction::double_phase(2.0, 4.0, 1.0);
    CHECK(dp.left_inverse(0, 2.0) == doctest::Approx(1.0).epsilon(1e-8));

    // inverse consistency on the ladder
    const Grid g(1, 16, 8.0);
    const auto logp = PhiFunction::log_perturbed(cosine_profile(g, 2.4, 0.3));
    for (int k = -8; k <= 8; ++k) {
        const double ell = std::ldexp(1.0, k);
        const double A = logp.eval(5, ell);
        CHECK(logp.left_inverse(5, A) <= ell * (1.0 + 1e-8) + 1e-9);
        CHECK(logp.eval(5, logp.left_inverse(5, A)) >= A * (1.0 - 1e-8) - 1e-12);
    }
}

TEST_CASE("growth condition checks: power family") {
    const auto cube = PhiFunction::power(3.0);
    auto plan = plan_for(nullptr);
    plan.inc_p = 2.0;
    CHECK(check_condition(cube, PhiCondition::IncP, plan).pass);
    plan.dec_q = 2.0;
    const auto dec = check_condition(cube, PhiCondition::DecQ, plan);
    CHECK_FALSE(dec.pass);
    REQUIRE(dec.witness.has_value());
    CHECK(dec.witness->magnitude > 0.0);

    // a power is (Inc)/(Dec) of its own exponent
    plan.inc_p = 3.0;
    plan.dec_q = 3.0;
    CHECK(check_condition(cube, PhiCondition::IncP, plan).pass);
    CHECK(check_condition(cube, PhiCondition::DecQ, plan).pass);
}

TEST_CASE("(A0): double phase with alpha in [0,1]") {
    const Grid g(1, 32, 8.0);
    GridField alpha(g);
    for (std::size_t i = 0; i < g.size(); ++i)
        alpha[i] = 0.5 + 0.5 * std::sin(2.0 * std::numbers::pi * g.coord(i) / g.length);
    const auto dp = PhiFunction::double_phase(2.0, 4.0, std::move(alpha));
    const auto rep = check_condition(dp, PhiCondition::A0, plan_for(&g));
    CHECK(rep.pass);
    CHECK(rep.beta > 0.0);
    CHECK(rep.beta <= 1.0);

    // constant alpha = 1: l^2 + l^4 = 1 at l^2 = (sqrt(5)-1)/2
    const auto dp1 = PhiFunction::double_phase(2.0, 4.0, 1.0);
    const auto rep1 = check_condition(dp1, PhiCondition::A0, plan_for(nullptr));
    CHECK(rep1.pass);
    CHECK(rep1.beta == doctest::Approx(std::sqrt((std::sqrt(5.0) - 1.0) / 2.0)).epsilon(1e-6));
    // the certificate itself
    for (std::size_t x : plan_for(&g).x_samples) {
        CHECK(dp.eval(x, rep.beta) <= 1.0 + 1e-9);
        CHECK(dp.eval(x, 1.0 / rep.beta) >= 1.0 - 1e-9);
    }
}

TEST_CASE("hypothesis on a and the pointwise bounds") {
    const Grid g(1, 16, 8.0);
    const std::vector<PhiFunction> phis = {
        PhiFunction::power(2.5), PhiFunction::double_phase(2.0, 4.0, 0.8),
        PhiFunction::variable_exponent(cosine_profile(g, 2.5, 0.4))};
    for (const auto& phi : phis) {
        auto plan = plan_for(phi.parameter_grid());
        plan.ladder_lo = -12;
        plan.ladder_hi = 12;
        CHECK(check_condition(phi, PhiCondition::HypothesisOnA, plan).pass);
        CHECK(check_condition(phi, PhiCondition::PointwiseBounds, plan).pass);
    }
    // power family: l^2 a(l) = p A(l) exactly (equality case of both bounds)
    const auto pw = PhiFunction::power(3.0, 0.25);
    const double ell = 1.7;
    CHECK(ell * ell * pw.density(0, ell) == doctest::Approx(3.0 * pw.eval(0, ell)).epsilon(1e-13));
}

TEST_CASE("(A1)/(A2) sampled spot checks") {
    const Grid g(1, 64, 8.0);
    const auto ve = PhiFunction::variable_exponent(cosine_profile(g, 2.5, 0.3));
    auto plan = plan_for(&g);
    SampleBall ball;
    for (std::size_t i = 28; i < 36; ++i) ball.cells.push_back(i);
    ball.measure = 8.0 * g.spacing();
    plan.balls.push_back(ball);
    const auto a1 = check_condition(ve, PhiCondition::A1, plan);
    CHECK(a1.pass);
    CHECK(a1.sampled_only);
    CHECK(a1.beta > 0.0);
    const auto a2 = check_condition(ve, PhiCondition::A2, plan);
    CHECK(a2.pass);
    CHECK(a2.sampled_only);

    SamplingPlan empty;
    CHECK_THROWS_AS(check_condition(ve, PhiCondition::IncP, empty), config_error);
    SamplingPlan no_balls = plan_for(&g);
    CHECK_THROWS_AS(check_condition(ve, PhiCondition::A1, no_balls), config_error);
}

TEST_CASE("family audits: declared growth passes for the three paper families") {
    const Grid g(1, 32, 8.0);
    const std::vector<PhiFunction> phis = {
        PhiFunction::variable_exponent(cosine_profile(g, 2.5, 0.4)),
        PhiFunction::log_perturbed(cosine_profile(g, 2.2, 0.3)),
        PhiFunction::double_phase(2.0, 4.0, 0.5)};
    for (const auto& phi : phis) {
        auto plan = plan_for(phi.parameter_grid() ? phi.parameter_grid() : nullptr);
        CHECK(check_condition(phi, PhiCondition::IncP, plan).pass);
        CHECK(check_condition(phi, PhiCondition::DecQ, plan).pass);
        CHECK(check_condition(phi, PhiCondition::A0, plan).pass);
    }
}

TEST_CASE("sobolev companion") {
    // A = l^2, gamma = 1/p - 1/q = 1/4 -> B = l^4
    const auto sq = PhiFunction::power(2.0);
    const auto B = build_sobolev_companion(sq, 0.25);
    for (int k = -6; k <= 6; ++k) {
        const double ell = std::ldexp(1.0, k);
        CHECK(B.eval(0, ell) == doctest::Approx(std::pow(ell, 4.0)).epsilon(1e-10));
        CHECK(B.left_inverse(0, ell) == doctest::Approx(std::pow(ell, 0.25)).epsilon(1e-12));
    }
    CHECK(B.growth().p == doctest::Approx(4.0));
    CHECK(B.growth().q == doctest::Approx(4.0));

    // gamma -> 0: companion degenerates to A itself on the ladder
    const auto almost = build_sobolev_companion(sq, 1e-4);
    for (int k = -6; k <= 6; ++k) {
        const double ell = std::ldexp(1.0, k);
        CHECK(almost.eval(0, ell) == doctest::Approx(sq.eval(0, ell)).epsilon(5e-3));
    }

    CHECK_THROWS_AS(build_sobolev_companion(sq, 0.0), std::domain_error);
    CHECK_THROWS_AS(build_sobolev_companion(sq, 1.0), std::domain_error);
    // gamma >= 1/q: B^{-1} would stop increasing
    CHECK_THROWS_AS(build_sobolev_companion(sq, 0.6), std::domain_error);
    // double phase companion for small gamma exists and is monotone
    const auto dp = PhiFunction::double_phase(2.0, 4.0, 0.5);
    const auto Bdp = build_sobolev_companion(dp, 0.2);
    double prev = 0.0;
    for (int k = -6; k <= 6; ++k) {
        const double val = Bdp.eval(0, std::ldexp(1.0, k));
        CHECK(val > prev);
        prev = val;
    }
}

TEST_CASE("custom family without a density uses the derivative-free conjugate") {
    const auto custom = PhiFunction::custom(
        "soft-quartic", [](std::size_t, double ell) { return std::pow(ell, 4.0) / 4.0; }, nullptr,
        GrowthExponents(4.0, 4.0));
    // closed form: conjugate of l^4/4 is l^{4/3} * 3/4
    for (double ell : {0.5, 1.0, 3.0}) {
        const double expected = 0.75 * std::pow(ell, 4.0 / 3.0);
        CHECK(custom.conjugate(0, ell) == doctest::Approx(expected).epsilon(1e-7));
    }
    CHECK_THROWS_AS(custom.density(0, 1.0), std::domain_error);
}
