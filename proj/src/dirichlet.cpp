#include "fso/dirichlet.hpp"

#include <algorithm>
#include <cmath>

#include <numbers>

#include "fso/errors.hpp"
#include "fso/fft.hpp"
#include "fso/fields.hpp"
#include "fso/parallel.hpp"
#include "fso/spectral.hpp"

namespace fso {

void DirichletProblem::validate() const {
    if (!(s > 0.0 && s <= 1.0)) throw std::domain_error("DirichletProblem: s must lie in (0,1]");
    if (rhs.s != s) throw config_error("DirichletProblem: rhs.s differs from problem s");
    if (rhs.f.grid != mask.grid || rhs.fvec.grid != mask.grid)
        throw config_error("DirichletProblem: rhs grids differ from mask grid");
    const Grid* pg = phi.parameter_grid();
    if (pg && *pg != mask.grid) throw config_error("DirichletProblem: phi parameter grid mismatch");
    if (!mask.contains_support(rhs.f)) throw mask_error("DirichletProblem: f must vanish outside Omega");
}

namespace {

void require_masked(const GridField& u, const DomainMask& mask, const char* who) {
    if (u.grid != mask.grid) throw config_error(std::string(who) + ": grid mismatch");
    if (mask.is_full()) return;
    for (std::size_t i = 0; i < u.size(); ++i)
        if (!mask.inside[i] && u[i] != 0.0)
            throw mask_error(std::string(who) + ": field does not vanish outside Omega");
}

// Fourier-diagonal preconditioner 1/(delta + |xi|^{2s}), the inverse of the
// quadratic-case operator up to a floor at the first nonzero mode. Applied to
// the masked gradient and re-projected; a constant rescaling is irrelevant to
// the search direction.
struct SpectralPreconditioner {
    Grid grid;
    std::vector<double> symbol;

    SpectralPreconditioner(const Grid& g, double s) : grid(g), symbol(g.size()) {
        const double base = 2.0 * std::numbers::pi / g.length;
        const double floor = std::pow(base, 2.0 * s);
        for (std::size_t i = 0; i < g.size(); ++i) {
            double sq;
            if (g.dim == 1) {
                const double xi = base * static_cast<double>(g.freq_index(i));
                sq = xi * xi;
            } else {
                const double xix = base * static_cast<double>(g.freq_index(i / g.n));
                const double xiy = base * static_cast<double>(g.freq_index(i % g.n));
                sq = xix * xix + xiy * xiy;
            }
            symbol[i] = 1.0 / (floor + std::pow(sq, s));
        }
    }

    GridField apply(const GridField& gfield, const DomainMask& mask) const {
        auto spec = fft::forward(gfield);
        for (std::size_t i = 0; i < spec.size(); ++i) spec[i] *= symbol[i];
        GridField out = fft::inverse_real(grid, std::move(spec));
        mask.project(out);
        return out;
    }
};

} // namespace

VectorGridField flux(const VectorGridField& V, const PhiFunction& phi) {
    VectorGridField W(V.grid);
    const int d = V.dim();
    par::parallel_for(V.size(), [&](std::size_t i) {
        const double m = std::max(V.magnitude(i), kDensityFloor);
        const double a = phi.density(i, m);
        for (int c = 0; c < d; ++c) W.comp[c][i] = a * V.comp[c][i];
    });
    return W;
}

double energy(const GridField& u, const DirichletProblem& prob) {
    require_masked(u, prob.mask, "energy");
    const auto V = riesz_gradient(u, prob.s);
    // the pairing reuses V rather than going through dual_pairing, which
    // would transform u a second time
    return modular(V, prob.phi) - inner(prob.rhs.f, u) - inner(prob.rhs.fvec, V);
}

GridField energy_gradient(const GridField& u, const DirichletProblem& prob) {
    require_masked(u, prob.mask, "energy_gradient");
    const auto V = riesz_gradient(u, prob.s);
    auto W = flux(V, prob.phi);
    // g = -D^s.(W - fvec) - f, then projected onto the constraint set
    for (int c = 0; c < W.dim(); ++c)
        for (std::size_t i = 0; i < W.size(); ++i) W.comp[c][i] -= prob.rhs.fvec.comp[c][i];
    GridField g = riesz_divergence(W, prob.s);
    for (std::size_t i = 0; i < g.size(); ++i) g[i] = -g[i] - prob.rhs.f[i];
    prob.mask.project(g);
    return g;
}

std::pair<GridField, SolverReport> solve(const DirichletProblem& prob, const SolverConfig& config) {
    prob.validate();
    if (!(config.energy_tol > 0.0 && config.residual_tol > 0.0))
        throw config_error("SolverConfig: tolerances must be positive");
    if (!(config.armijo_c > 0.0 && config.armijo_c <= 0.5))
        throw config_error("SolverConfig: Armijo factor must lie in (0, 1/2]");

    GridField u(prob.mask.grid);
    if (config.initial) {
        u = *config.initial;
        prob.mask.project(u);
    }

    SolverReport rep;
    double E = energy(u, prob);
    rep.energy_history.push_back(E);
    GridField g = energy_gradient(u, prob);
    double res = std::sqrt(inner(g, g));

    const SpectralPreconditioner precond(prob.mask.grid, prob.s);
    GridField z = precond.apply(g, prob.mask);
    double gz = inner(g, z);
    GridField d(prob.mask.grid);
    for (std::size_t i = 0; i < d.size(); ++i) d[i] = -z[i];
    double alpha_prev = 1.0;

    auto finish = [&](bool ok, std::string reason) {
        rep.converged = ok;
        rep.stop_reason = std::move(reason);
        rep.final_energy = E;
        rep.final_residual = res;
        rep.norm_u_la = luxemburg_norm(u, prob.phi);
        rep.norm_dsu_la = luxemburg_norm(riesz_gradient(u, prob.s), prob.phi);
        return std::make_pair(u, rep);
    };

    if (res <= config.residual_tol) return finish(true, "stationary start");

    GridField trial(prob.mask.grid);
    int zero_progress = 0;
    for (std::size_t it = 1; it <= config.max_iter; ++it) {
        double gd = inner(g, d);
        if (gd >= 0.0) { // not a descent direction: restart on the preconditioned gradient
            for (std::size_t i = 0; i < d.size(); ++i) d[i] = -z[i];
            gd = inner(g, d);
        }

        // Armijo backtracking
        double alpha = std::max(alpha_prev * 2.0, 1e-12);
        double E_trial = 0.0;
        bool accepted = false;
        for (int bt = 0; bt < 60; ++bt) {
            for (std::size_t i = 0; i < u.size(); ++i) trial[i] = u[i] + alpha * d[i];
            prob.mask.project(trial);
            E_trial = energy(trial, prob);
            if (E_trial <= E + config.armijo_c * alpha * gd) { accepted = true; break; }
            alpha *= config.backtrack;
        }
        if (!accepted) {
            if (res <= config.residual_tol) return finish(true, "line search exhausted at stationarity");
            rep.iterations = it;
            rep.final_energy = E;
            rep.final_residual = res;
            throw solver_stall_error("solve: line search failed to decrease the energy", rep);
        }

        const double dE = E - E_trial;
        // accepted steps with no representable decrease: the energy is at the
        // double-precision floor
        zero_progress = dE > 0.0 ? 0 : zero_progress + 1;
        if (zero_progress >= 8) {
            if (res <= config.residual_tol) return finish(true, "energy floor reached");
            rep.iterations = it;
            rep.final_energy = E;
            rep.final_residual = res;
            throw solver_stall_error("solve: energy floor reached above the residual tolerance", rep);
        }
        std::swap(u.v, trial.v);
        E = E_trial;
        rep.energy_history.push_back(E);
        rep.iterations = it;
        alpha_prev = alpha;

        GridField g_new = energy_gradient(u, prob);
        res = std::sqrt(inner(g_new, g_new));
        if (res <= config.residual_tol && dE <= config.energy_tol)
            return finish(true, "tolerances met");

        // preconditioned Polak-Ribiere+ with periodic restart
        GridField z_new = precond.apply(g_new, prob.mask);
        const double gz_new = inner(g_new, z_new);
        double beta = 0.0;
        if (it % 50 != 0) {
            double num = 0.0;
            for (std::size_t i = 0; i < g.size(); ++i) num += (g_new[i] - g[i]) * z_new[i];
            num *= g.grid.cell_volume();
            beta = std::max(0.0, num / gz);
        }
        for (std::size_t i = 0; i < d.size(); ++i) d[i] = -z_new[i] + beta * d[i];
        std::swap(g.v, g_new.v);
        std::swap(z.v, z_new.v);
        gz = gz_new;
    }
    return finish(false, "max iterations reached");
}

double monotonicity_check(const GridField& u, const GridField& v, const DirichletProblem& prob) {
    require_masked(u, prob.mask, "monotonicity_check");
    require_masked(v, prob.mask, "monotonicity_check");
    const auto Du = riesz_gradient(u, prob.s);
    const auto Dv = riesz_gradient(v, prob.s);
    const auto Wu = flux(Du, prob.phi);
    const auto Wv = flux(Dv, prob.phi);
    double acc = 0.0;
    for (int c = 0; c < Du.dim(); ++c)
        acc += par::sum(Du.size(), [&](std::size_t i) {
            return (Wu.comp[c][i] - Wv.comp[c][i]) * (Du.comp[c][i] - Dv.comp[c][i]);
        });
    return acc * u.grid.cell_volume();
}

DualBoundReport dual_bound_checks(std::span<const VectorGridField> xi_sequence, const PhiFunction& phi,
                                  std::optional<double> dual_norm_baseline) {
    DualBoundReport rep;
    const double q = phi.growth().q;

    // pointwise conjugate bound on a sample ladder
    rep.pointwise_pass = true;
    rep.pointwise_worst = -1e300;
    std::vector<std::size_t> xs = {0};
    if (const Grid* pg = phi.parameter_grid()) {
        xs.clear();
        for (int i = 0; i < 5; ++i) xs.push_back(pg->size() * i / 5);
    }
    for (std::size_t x : xs) {
        for (int k = -10; k <= 10; ++k) {
            const double r = std::ldexp(1.0, k);
            const double lhs = phi.conjugate(x, phi.density(x, r) * r);
            const double rhs = (q - 1.0) * phi.eval(x, r);
            const double rel = (lhs - rhs) / std::max(rhs, 1e-300);
            rep.pointwise_worst = std::max(rep.pointwise_worst, rel);
            if (rel > 1e-6) rep.pointwise_pass = false;
        }
    }

    const auto conj = conjugate_phi(phi);
    for (const auto& xi : xi_sequence) {
        rep.input_norms.push_back(luxemburg_norm(xi, phi));
        const double dn = luxemburg_norm(flux(xi, phi), conj);
        rep.dual_norms.push_back(dn);
        rep.max_dual_norm = std::max(rep.max_dual_norm, dn);
    }
    rep.sequence_bounded = !dual_norm_baseline || rep.max_dual_norm <= *dual_norm_baseline * 1.05;
    return rep;
}

DependenceReport continuous_dependence_experiment(double sigma, std::span<const double> s_values,
                                                  std::span<const VectorGridField> f_values,
                                                  const VectorGridField& f_limit,
                                                  const PhiFunction& phi, const DomainMask& mask,
                                                  const SolverConfig& config) {
    if (!(sigma > 0.0 && sigma <= 1.0))
        throw std::domain_error("continuous_dependence: sigma must lie in (0,1]");
    if (s_values.size() != f_values.size())
        throw config_error("continuous_dependence: s and f sequences differ in length");

    DependenceReport rep;
    rep.sigma = sigma;

    auto make_problem = [&](double s, const VectorGridField& fvec) {
        DirichletProblem prob;
        prob.s = s;
        prob.phi = phi;
        prob.rhs = DualPairRHS{GridField(mask.grid), fvec, s};
        prob.mask = mask;
        return prob;
    };

    const auto prob_sigma = make_problem(sigma, f_limit);
    std::pair<GridField, SolverReport> limit_solved;
    try {
        limit_solved = solve(prob_sigma, config);
    } catch (const solver_stall_error& e) {
        throw experiment_aborted(std::string("continuous_dependence: limit solve stalled: ") + e.what(),
                                 rep);
    }
    auto& [u_sigma, rep_sigma] = limit_solved;
    rep.sigma_iterations = rep_sigma.iterations;
    rep.norm_u_sigma = rep_sigma.norm_u_la;
    rep.all_converged = rep_sigma.converged;
    if (!rep_sigma.converged)
        throw experiment_aborted("continuous_dependence: limit solve did not converge", rep);
    const auto Du_sigma = riesz_gradient(u_sigma, sigma);

    // fixed battery of five band-limited vector test fields
    std::vector<VectorGridField> battery;
    for (std::uint64_t k = 0; k < 5; ++k) {
        VectorGridField psi(mask.grid);
        for (int c = 0; c < psi.dim(); ++c)
            psi.comp[c] = fields::band_limited(mask.grid, 7000 + 13 * k + static_cast<std::uint64_t>(c), 6);
        battery.push_back(std::move(psi));
    }

    const auto conj = conjugate_phi(phi);
    const double xi_max = std::numbers::pi * static_cast<double>(mask.grid.n) / mask.grid.length;
    for (std::size_t n = 0; n < s_values.size(); ++n) {
        DependenceRow row;
        row.n = static_cast<int>(n + 1);
        row.s_n = s_values[n];
        row.f_dist = luxemburg_norm(fields::subtract(f_values[n], f_limit), conj);

        const auto prob_n = make_problem(s_values[n], f_values[n]);
        // the attainable residual floor scales with sqrt(lambda_max) ~
        // xi_max^{s}; grade the tolerance so higher-order solves do not stall
        SolverConfig cfg_n = config;
        if (s_values[n] > sigma)
            cfg_n.residual_tol *= std::pow(xi_max, s_values[n] - sigma);
        std::pair<GridField, SolverReport> solved;
        try {
            solved = solve(prob_n, cfg_n);
        } catch (const solver_stall_error& e) {
            row.iterations = e.report.iterations;
            rep.all_converged = false;
            rep.rows.push_back(row);
            throw experiment_aborted(std::string("continuous_dependence: inner solve stalled: ") + e.what(),
                                     rep);
        }
        auto& [u_n, rep_n] = solved;
        row.iterations = rep_n.iterations;
        row.energy = rep_n.final_energy;
        if (!rep_n.converged) {
            rep.all_converged = false;
            rep.rows.push_back(row);
            throw experiment_aborted("continuous_dependence: inner solve did not converge", rep);
        }

        row.e_n = luxemburg_norm(fields::subtract(u_n, u_sigma), phi);
        const auto D_n = riesz_gradient(u_n, s_values[n]);
        const auto diff = fields::subtract(D_n, Du_sigma);
        for (const auto& psi : battery)
            row.w_max = std::max(row.w_max, std::abs(inner(diff, psi)));
        row.coercivity_ratio = rep_n.norm_dsu_la / (luxemburg_norm(f_values[n], conj) + 1.0);
        rep.rows.push_back(row);
    }

    rep.e_strictly_decreasing = true;
    rep.w_nonincreasing = true;
    for (std::size_t n = 1; n < rep.rows.size(); ++n) {
        if (!(rep.rows[n].e_n < rep.rows[n - 1].e_n)) rep.e_strictly_decreasing = false;
        if (rep.rows[n].w_max > rep.rows[n - 1].w_max * (1.0 + 1e-9)) rep.w_nonincreasing = false;
    }
    if (!rep.rows.empty() && rep.norm_u_sigma > 0.0)
        rep.e_last_rel = rep.rows.back().e_n / rep.norm_u_sigma;
    return rep;
}

} // namespace fso
