#pragma once

#include <map>
#include <string>
#include <vector>

#include "fso/config.hpp"
#include "fso/dirichlet.hpp"
#include "fso/grid.hpp"
#include "fso/inequality_lab.hpp"

namespace fso::experiments {

// Exit-status contract: 0 all asserted checks pass, 1 check failure,
// 2 parse/validation error (mapped by the CLI).
struct RunResult {
    int status = 0;
    std::string summary;
};

// Named suite maxima captured on a reference run and consumed as assertion
// constants afterwards (pass when value <= baseline * 1.05).
struct Baselines {
    std::map<std::string, double> values;

    static Baselines load(const std::string& path);
    void save(const std::string& path) const;
    bool has(const std::string& key) const { return values.count(key) != 0; }
    double at(const std::string& key) const;
};

// Operator-identity suite (shared by ops-verify and the acceptance tests).
struct IdentityRecord {
    std::string id;
    double s = 0.0;
    double error = 0.0;
    double tol = 0.0;
    bool pass = false;
};
std::vector<IdentityRecord> run_identity_suite(const Grid& g, std::uint64_t seed);

// All inequality-lab records for one suite/phi at the configured s-grid.
struct SweepOutput {
    std::vector<InequalityRecord> records;
    std::map<std::string, double> maxima; // per-inequality suite maxima
    double spaces_c1 = 0.0, spaces_c2 = 0.0;
};
SweepOutput run_inequality_sweep(const TestSuite& suite, const PhiFunction& phi,
                                 std::span<const double> s_grid);

// Applies baselines to sweep records in place; returns false on any failure.
bool apply_baselines(SweepOutput& out, const Baselines& base, int grid_dim);

// Experiment dispatch; writes records.csv / summary.json (and per-kind extras)
// into cfg.out_dir.
RunResult run(const RunConfig& cfg);

// Deterministic CSV helpers ("%.17g" doubles, '\n' line ends).
std::string format_double(double x);
void write_csv(const std::string& path, const std::vector<std::string>& header,
               const std::vector<std::vector<std::string>>& rows);
void write_inequality_csv(const std::string& path, const std::vector<InequalityRecord>& records);

// Manufactured problems shared by solve experiments and tests.
struct ManufacturedProblem {
    DirichletProblem problem;
    GridField reference; // exact minimizer when meaningful (full torus), else target
    bool reference_is_exact = false;
};
ManufacturedProblem make_eigenmode_problem(const Grid& g, const PhiFunction& phi, double s);
ManufacturedProblem make_manufactured_problem(const Grid& g, const PhiFunction& phi, double s,
                                              const DomainMask& mask);

} // namespace fso::experiments
