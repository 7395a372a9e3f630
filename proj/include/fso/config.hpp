#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "fso/grid.hpp"
#include "fso/inequality_lab.hpp"
#include "fso/phi.hpp"

namespace fso {

// Single structured text file with [grid], [phi], [mask], [experiment]
// sections; keys are lowercase snake-case, physical quantities in the grid's
// length units.
struct RunConfig {
    std::string kind; // phi-audit | ops-verify | ineq-sweep | solve | s-dependence

    // [grid]
    int dim = 1;
    std::size_t n = 4096;
    double length = 16.0;

    // [phi]
    std::string phi_family = "double-phase"; // power | variable-exponent | log-perturbed | double-phase
    double p = 2.0, q = 4.0;
    double coeff = 1.0;        // power: A = coeff * ell^p
    double alpha = 0.5;        // double-phase weight level
    double alpha_amp = 0.0;    // cosine modulation amplitude for alpha(x)
    double p_base = 2.5;       // variable families: p(x) = p_base + p_amp cos(2 pi x / L)
    double p_amp = 0.0;
    std::string alpha_file;    // optional field file overrides
    std::string exponent_file;

    // [mask]
    std::string mask_kind = "interval"; // full | interval | disk | file
    double mask_cx = 0.0, mask_cy = 0.0;
    double mask_half_width = 4.0;
    std::string mask_file; // nonzero samples mark the inside

    // [experiment]
    std::vector<double> s_values;
    double sigma = 0.5;
    std::uint64_t seed = 42;
    std::vector<std::string> conditions; // phi-audit; empty -> default set
    double audit_inc_p = 0.0, audit_dec_q = 0.0;
    std::string rhs_kind = "manufactured"; // solve: manufactured | eigenmode | files
    double solve_s = 0.6;
    double energy_tol = 1e-10;
    double residual_tol = 1e-6;
    std::size_t max_iter = 20000;
    double recovery_tol = 1e-4;  // manufactured/eigenmode field recovery assertion
    double dep_eps = 1e-3;       // s-dependence: final relative error bound
    std::string f_file, fvec_file;
    std::string out_field = "solution.fogf";

    // runtime (flags)
    std::string out_dir = "out";
    std::string baselines_path; // defaults to <out_dir>/baselines.json
    bool capture_baselines = false;
    bool quiet = false;

    static RunConfig from_file(const std::string& path);
    void validate() const;

    Grid make_grid() const;
    MaskGeometry make_mask_geometry() const; // analytic kinds only (suite windows)
    DomainMask make_mask() const;            // all kinds, including file masks
    PhiFunction make_phi() const;
};

// Minimal INI reader: sections, key = value, '#' comments.
std::map<std::string, std::map<std::string, std::string>> parse_ini(const std::string& path);

std::vector<double> parse_double_list(const std::string& text);

} // namespace fso
