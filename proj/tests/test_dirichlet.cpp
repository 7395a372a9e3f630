#include <doctest.h>

#include <cmath>
#include <numbers>

#include "fso/dirichlet.hpp"
#include "fso/errors.hpp"
#include "fso/experiments.hpp"
#include "fso/fields.hpp"
#include "fso/spectral.hpp"

using namespace fso;

namespace {

GridField masked_random(const Grid& g, const DomainMask& mask, std::uint64_t seed, int kmax = 10) {
    GridField u = fields::band_limited(g, seed, kmax);
    mask.project(u);
    return u;
}

double rel_l2(const GridField& a, const GridField& b) {
    const double nb = l2_norm(b);
    return l2_norm(fields::subtract(a, b)) / (nb > 0.0 ? nb : 1.0);
}

DirichletProblem zero_rhs_problem(const Grid& g, const PhiFunction& phi, double s,
                                  const DomainMask& mask) {
    DirichletProblem prob;
    prob.s = s;
    prob.phi = phi;
    prob.mask = mask;
    prob.rhs = DualPairRHS{GridField(g), VectorGridField(g), s};
    return prob;
}

} // namespace

TEST_CASE("energy: zero field, convexity, mask enforcement") {
    const Grid g(1, 256, 8.0);
    const auto mask = DomainMask::interval(g, 0.0, 2.0);
    const auto dp = PhiFunction::double_phase(2.0, 4.0, 0.5);
    auto prob = zero_rhs_problem(g, dp, 0.6, mask);
    prob.rhs.fvec.comp[0] = fields::band_limited(g, 51, 6);

    CHECK(energy(GridField(g), prob) == 0.0);

    // midpoint convexity on random masked pairs
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        const auto u = masked_random(g, mask, 100 + seed);
        const auto v = masked_random(g, mask, 200 + seed);
        GridField mid(g);
        for (std::size_t i = 0; i < g.size(); ++i) mid[i] = 0.5 * (u[i] + v[i]);
        CHECK(energy(mid, prob) <= 0.5 * (energy(u, prob) + energy(v, prob)) + 1e-10);
    }

    GridField outside(g, 0.1); // nonzero outside the mask
    CHECK_THROWS_AS(energy(outside, prob), mask_error);
}

TEST_CASE("gradient matches central finite differences of the energy") {
    const Grid g(1, 256, 8.0);
    const auto mask_strict = DomainMask::interval(g, 0.0, 2.5);
    const auto mask_full = DomainMask::full(g);

    struct Case {
        PhiFunction phi;
        double s;
        const DomainMask* mask;
    };
    const Case cases[] = {
        {PhiFunction::power(2.0, 0.5), 0.5, &mask_full},
        {PhiFunction::double_phase(2.0, 4.0, 0.5), 0.6, &mask_strict},
        {PhiFunction::power(3.0), 0.8, &mask_strict},
    };

    int checked = 0;
    for (const auto& c : cases) {
        auto prob = zero_rhs_problem(g, c.phi, c.s, *c.mask);
        prob.rhs.fvec.comp[0] = fields::band_limited(g, 77, 8);
        prob.rhs.f = masked_random(g, *c.mask, 78, 6);

        const auto u = masked_random(g, *c.mask, 1000, 8);
        const auto grad = energy_gradient(u, prob);
        const double h = 1e-5;
        for (std::uint64_t dir = 0; dir < 20; ++dir) {
            auto v = masked_random(g, *c.mask, 2000 + dir, 12);
            const double nv = l2_norm(v);
            for (auto& x : v.v) x /= nv;
            GridField up(g), dn(g);
            for (std::size_t i = 0; i < g.size(); ++i) {
                up[i] = u[i] + h * v[i];
                dn[i] = u[i] - h * v[i];
            }
            const double fd = (energy(up, prob) - energy(dn, prob)) / (2.0 * h);
            const double an = inner(grad, v);
            CHECK(std::abs(fd - an) <= 1e-5 * std::max(1.0, std::abs(an)));
            ++checked;
        }
    }
    CHECK(checked == 60);
}

TEST_CASE("linear eigenmode problem is recovered to 1e-6") {
    const Grid g(1, 256, 2.0 * std::numbers::pi);
    const auto mp = experiments::make_eigenmode_problem(g, PhiFunction::power(2.0, 0.5), 0.5);
    SolverConfig cfg;
    cfg.residual_tol = 1e-7;
    cfg.energy_tol = 1e-13;
    const auto [u, rep] = solve(mp.problem, cfg);
    CHECK(rep.converged);
    CHECK(rel_l2(u, mp.reference) <= 1e-6);
    // energy history is nonincreasing
    for (std::size_t i = 1; i < rep.energy_history.size(); ++i)
        CHECK(rep.energy_history[i] <= rep.energy_history[i - 1] + 1e-14);
}

TEST_CASE("zero forcing yields the zero solution") {
    const Grid g(1, 256, 8.0);
    const auto mask = DomainMask::interval(g, 0.0, 2.0);
    const auto prob = zero_rhs_problem(g, PhiFunction::double_phase(2.0, 4.0, 0.5), 0.5, mask);
    const auto [u, rep] = solve(prob, SolverConfig{});
    CHECK(rep.converged);
    CHECK(l2_norm(u) <= 1e-10);
}

TEST_CASE("manufactured nonlinear solve: full torus recovers the target field") {
    const Grid g(1, 512, 16.0);
    const auto dp = PhiFunction::double_phase(2.0, 4.0, 0.5);
    const auto mp = experiments::make_manufactured_problem(g, dp, 0.6, DomainMask::full(g));
    REQUIRE(mp.reference_is_exact);
    SolverConfig cfg;
    cfg.residual_tol = 1e-6;
    cfg.energy_tol = 1e-12;
    cfg.max_iter = 5000;
    const auto [u, rep] = solve(mp.problem, cfg);
    CHECK(rep.converged);
    INFO("recovery = ", rel_l2(u, mp.reference));
    CHECK(rel_l2(u, mp.reference) <= 1e-4);
}

TEST_CASE("manufactured masked solve meets the energy/residual contract") {
    const Grid g(1, 512, 16.0);
    const auto mask = DomainMask::interval(g, 0.0, 4.0);
    const auto dp = PhiFunction::double_phase(2.0, 4.0, 0.5);
    const auto mp = experiments::make_manufactured_problem(g, dp, 0.6, mask);
    SolverConfig cfg;
    cfg.residual_tol = 1e-6;
    cfg.energy_tol = 1e-10;
    cfg.max_iter = 5000;
    const auto [u, rep] = solve(mp.problem, cfg);
    CHECK(rep.converged);
    CHECK(rep.final_residual <= 1e-6);
    // the manufactured target is feasible, so the minimum can only sit below it
    CHECK(rep.final_energy <= energy(mp.reference, mp.problem) + 1e-10);
}

TEST_CASE("degenerate density (p < 2) still converges on the floored magnitude") {
    const Grid g(1, 256, 8.0);
    const auto mask = DomainMask::interval(g, 0.0, 2.0);
    const auto mp = experiments::make_manufactured_problem(g, PhiFunction::power(1.7), 0.5, mask);
    SolverConfig cfg;
    cfg.residual_tol = 1e-5;
    cfg.energy_tol = 1e-12;
    const auto [u, rep] = solve(mp.problem, cfg);
    CHECK(rep.converged);
}

TEST_CASE("two starts agree within 10 * residual_tol") {
    const Grid g(1, 256, 8.0);
    const auto mask = DomainMask::interval(g, 0.0, 2.5);
    const auto dp = PhiFunction::double_phase(2.0, 4.0, 0.5);
    const auto mp = experiments::make_manufactured_problem(g, dp, 0.6, mask);
    SolverConfig cfg;
    cfg.residual_tol = 5e-6;
    cfg.energy_tol = 1e-13;
    cfg.max_iter = 5000;
    const auto [u1, rep1] = solve(mp.problem, cfg);
    SolverConfig cfg2 = cfg;
    cfg2.initial = masked_random(g, mask, 4242, 6);
    const auto [u2, rep2] = solve(mp.problem, cfg2);
    REQUIRE(rep1.converged);
    REQUIRE(rep2.converged);
    const double gap = luxemburg_norm(fields::subtract(u1, u2), dp);
    INFO("gap = ", gap);
    CHECK(gap <= 10.0 * cfg.residual_tol);
}

TEST_CASE("max_iter exhaustion reports converged = false") {
    const Grid g(1, 256, 8.0);
    const auto mp = experiments::make_manufactured_problem(
        g, PhiFunction::double_phase(2.0, 4.0, 0.5), 0.6, DomainMask::interval(g, 0.0, 2.0));
    SolverConfig cfg;
    cfg.max_iter = 2;
    cfg.residual_tol = 1e-14;
    const auto [u, rep] = solve(mp.problem, cfg);
    CHECK_FALSE(rep.converged);
    CHECK(rep.iterations == 2);
}

TEST_CASE("monotonicity of the flux pairing") {
    const Grid g(1, 256, 8.0);
    const auto mask = DomainMask::interval(g, 0.0, 2.5);
    const auto dp = PhiFunction::double_phase(2.0, 4.0, 0.5);
    const auto prob = zero_rhs_problem(g, dp, 0.6, mask);

    const auto u = masked_random(g, mask, 1);
    CHECK(monotonicity_check(u, u, prob) == 0.0);

    // quadratic case: M(u,v) = ||D^s (u-v)||_{L^2}^2
    const auto prob2 = zero_rhs_problem(g, PhiFunction::power(2.0, 0.5), 0.6, mask);
    const auto v = masked_random(g, mask, 2);
    const auto diff_grad = riesz_gradient(fields::subtract(u, v), 0.6);
    const double expect = inner(diff_grad, diff_grad);
    CHECK(monotonicity_check(u, v, prob2) == doctest::Approx(expect).epsilon(1e-10));

    // strict positivity on distinct pairs
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        const auto a = masked_random(g, mask, 300 + seed);
        const auto b = masked_random(g, mask, 400 + seed);
        CHECK(monotonicity_check(a, b, prob) > 0.0);
    }
}

TEST_CASE("dual-bound checks") {
    const Grid g(1, 128, 8.0);
    // power family: A'(x, a(r) r) = (p-1) A(x,r) exactly (equality case)
    const auto p3 = PhiFunction::power(3.0, 1.0 / 3.0);
    std::vector<VectorGridField> seq;
    for (std::uint64_t sd = 0; sd < 4; ++sd) {
        VectorGridField xi(g);
        xi.comp[0] = fields::band_limited(g, 600 + sd, 8);
        seq.push_back(std::move(xi));
    }
    const auto rep = dual_bound_checks(seq, p3);
    CHECK(rep.pointwise_pass);
    CHECK(rep.pointwise_worst <= 1e-6);
    CHECK(rep.pointwise_worst >= -1e-6); // equality case: the bound is tight
    CHECK(rep.dual_norms.size() == 4);
    CHECK(rep.max_dual_norm > 0.0);
    CHECK(rep.sequence_bounded); // no baseline supplied

    // zero sequence member has zero dual norm
    std::vector<VectorGridField> zero_seq(1, VectorGridField(g));
    CHECK(dual_bound_checks(zero_seq, p3).max_dual_norm == 0.0);

    const auto dp = PhiFunction::double_phase(2.0, 4.0, 0.5);
    const auto repd = dual_bound_checks(seq, dp);
    CHECK(repd.pointwise_pass);
}

TEST_CASE("problem validation") {
    const Grid g(1, 256, 8.0);
    const auto mask = DomainMask::interval(g, 0.0, 2.0);
    auto prob = zero_rhs_problem(g, PhiFunction::power(2.0), 0.5, mask);
    prob.rhs.s = 0.7; // mismatch
    CHECK_THROWS_AS(solve(prob, SolverConfig{}), config_error);
    prob.rhs.s = 0.5;
    prob.rhs.f = GridField(g, 1.0); // f must vanish outside the mask
    CHECK_THROWS_AS(solve(prob, SolverConfig{}), mask_error);

    SolverConfig bad;
    bad.armijo_c = 0.9;
    prob.rhs.f = GridField(g);
    CHECK_THROWS_AS(solve(prob, bad), config_error);
}

TEST_CASE("continuous dependence: identical problems give tiny errors") {
    const Grid g(1, 256, 2.0 * std::numbers::pi);
    const auto phi = PhiFunction::power(2.0, 0.5);
    const auto mask = DomainMask::full(g);
    GridField ustar = fields::mode(g, 1);
    const VectorGridField f_limit = flux(riesz_gradient(ustar, 0.5), phi);

    const std::vector<double> s_values = {0.5, 0.5, 0.5};
    const std::vector<VectorGridField> f_values(3, f_limit);
    SolverConfig cfg;
    cfg.residual_tol = 1e-6;
    cfg.energy_tol = 1e-12;
    const auto rep = continuous_dependence_experiment(0.5, s_values, f_values, f_limit, phi, mask, cfg);
    CHECK(rep.all_converged);
    for (const auto& row : rep.rows) CHECK(row.e_n <= 1e-5 * rep.norm_u_sigma);
}

TEST_CASE("continuous dependence: aborts carry the partial report") {
    const Grid g(1, 256, 2.0 * std::numbers::pi);
    const auto dp = PhiFunction::double_phase(2.0, 4.0, 0.3);
    const auto mask = DomainMask::full(g);
    GridField ustar = fields::mode(g, 1);
    const VectorGridField f_limit = flux(riesz_gradient(ustar, 0.5), dp);
    const std::vector<double> s_values = {0.75};
    const std::vector<VectorGridField> f_values(1, f_limit);
    SolverConfig cfg;
    cfg.max_iter = 1; // force non-convergence
    cfg.residual_tol = 1e-14;
    CHECK_THROWS_AS(
        continuous_dependence_experiment(0.5, s_values, f_values, f_limit, dp, mask, cfg),
        experiment_aborted);
}
