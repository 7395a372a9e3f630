#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "fso/grid.hpp"
#include "fso/orlicz.hpp"
#include "fso/phi.hpp"

namespace fso {

// -D^s . (a(x,|D^s u|) D^s u) = F in Omega, u = 0 outside, with F given in
// the dual representation (f, fvec): <F, w> = int f w + int fvec . D^s w.
struct DirichletProblem {
    double s = 0.5;
    PhiFunction phi = PhiFunction::power(2.0, 0.5);
    DualPairRHS rhs;
    DomainMask mask;

    void validate() const;
};

struct SolverConfig {
    std::size_t max_iter = 5000;
    double energy_tol = 1e-12;   // epsilon_E
    double residual_tol = 1e-6;  // epsilon_R, on the L2 norm of the masked gradient
    double armijo_c = 1e-4;      // in (0, 1/2]
    double backtrack = 0.5;
    std::optional<GridField> initial; // zero start when absent
};

struct SolverReport {
    std::size_t iterations = 0;
    std::vector<double> energy_history; // nonincreasing
    double final_energy = 0.0;
    double final_residual = 0.0;
    double norm_u_la = 0.0;
    double norm_dsu_la = 0.0;
    bool converged = false;
    std::string stop_reason;
};

// Line search could not decrease the energy while the residual is still
// above tolerance; carries the partial report.
class solver_stall_error : public std::runtime_error {
public:
    solver_stall_error(const std::string& what, SolverReport rep)
        : std::runtime_error(what), report(std::move(rep)) {}
    SolverReport report;
};

// E(u) = int A(x, |D^s u|) dx - <F, u>. u must vanish outside the mask.
double energy(const GridField& u, const DirichletProblem& prob);

// Masked L2-representation of dE at u:
//   g = P_Omega[ -D^s.(a(x,|D^s u|) D^s u) - f + D^s.fvec ].
GridField energy_gradient(const GridField& u, const DirichletProblem& prob);

// a(x, max(|V|, floor)) V, the flux entering both the PDE and the gradient.
VectorGridField flux(const VectorGridField& V, const PhiFunction& phi);

// Projected nonlinear conjugate gradient (Polak-Ribiere+, Armijo backtracking,
// periodic restarts). Terminates when the energy decrease falls below
// energy_tol and the residual below residual_tol.
std::pair<GridField, SolverReport> solve(const DirichletProblem& prob, const SolverConfig& config);

// M(u,v) = int (a(|D^s u|)D^s u - a(|D^s v|)D^s v) . (D^s u - D^s v) dx >= 0,
// strictly positive for u != v.
double monotonicity_check(const GridField& u, const GridField& v, const DirichletProblem& prob);

struct DualBoundReport {
    bool pointwise_pass = false;   // A'(x, a(x,r) r) <= (q-1) A(x,r) on samples
    double pointwise_worst = 0.0;  // max of A'(a r r) - (q-1) A, relative
    std::vector<double> input_norms; // ||xi_n||_{L^A} (uniform boundedness check)
    std::vector<double> dual_norms;  // ||a(|xi_n|) xi_n||_{L^{A'}}
    double max_dual_norm = 0.0;
    bool sequence_bounded = false; // vs supplied baseline (always true if none)
};
DualBoundReport dual_bound_checks(std::span<const VectorGridField> xi_sequence, const PhiFunction& phi,
                                  std::optional<double> dual_norm_baseline = std::nullopt);

// ---- continuous dependence in s ---------------------------------------------

struct DependenceRow {
    int n = 0;
    double s_n = 0.0;
    double e_n = 0.0;        // ||u_n - u_sigma||_{L^A(Omega)}
    double w_max = 0.0;      // max over the test battery of |<D^{s_n}u_n - D^sigma u_sigma, psi>|
    double f_dist = 0.0;     // ||f_n - f||_{L^{A'}}
    std::size_t iterations = 0;
    double energy = 0.0;
    double coercivity_ratio = 0.0; // ||D^{s_n} u_n||_{L^A} / (||f_n||_{L^{A'}} + 1)
};

struct DependenceReport {
    double sigma = 0.0;
    std::vector<DependenceRow> rows;
    double norm_u_sigma = 0.0;   // ||u_sigma||_{L^A}
    std::size_t sigma_iterations = 0;
    bool e_strictly_decreasing = false;
    bool w_nonincreasing = false;
    bool all_converged = false;
    double e_last_rel = 0.0;     // e_last / ||u_sigma||
};

class experiment_aborted : public std::runtime_error {
public:
    experiment_aborted(const std::string& what, DependenceReport partial_)
        : std::runtime_error(what), partial(std::move(partial_)) {}
    DependenceReport partial;
};

// Solves (s_n, f_n) for every n and the limit problem (sigma, f); reports the
// strong errors e_n and weak proxies w_n against a fixed battery of five test
// fields. Throws experiment_aborted (with the partial report) if any inner
// solve fails to converge.
DependenceReport continuous_dependence_experiment(double sigma, std::span<const double> s_values,
                                                  std::span<const VectorGridField> f_values,
                                                  const VectorGridField& f_limit,
                                                  const PhiFunction& phi, const DomainMask& mask,
                                                  const SolverConfig& config);

} // namespace fso
