#pragma once

#include <string>

#include "fso/grid.hpp"
#include "fso/phi.hpp"

namespace fso {

// J_A(u) = sum_x A(x, |u(x)|) * cellvol; vector fields use the Euclidean
// magnitude. The modular vanishes iff the field does (A > 0 off 0 under (Inc)_p).
double modular(const GridField& u, const PhiFunction& phi);
double modular(const VectorGridField& u, const PhiFunction& phi);

struct ModularValue {
    double value = 0.0;
    std::string phi_id;
    std::string field_id;
};

// Luxemburg norm inf{rho > 0 : J_A(u/rho) <= 1}. Bracketed via the
// norm-modular inequalities and solved by bisection with secant polishing;
// at the returned rho the modular equals 1 to ~1e-14.
double luxemburg_norm(const GridField& u, const PhiFunction& phi);
double luxemburg_norm(const VectorGridField& u, const PhiFunction& phi);

// Both displays of the norm-modular lemma, evaluated on one field:
//   min{J^{1/p}, J^{1/q}} <= ||u|| <= max{J^{1/p}, J^{1/q}} <= J + 1
//   (1/2) min{||u||^p, ||u||^q} <= J <= 2 max{||u||^p, ||u||^q}
struct NormModularReport {
    double J = 0.0;
    double norm = 0.0;
    double lower = 0.0;     // min{J^{1/p}, J^{1/q}}
    double upper = 0.0;     // max{J^{1/p}, J^{1/q}}
    double J_plus_one = 0.0;
    bool pass = false;
};
NormModularReport verify_norm_modular(const GridField& u, const PhiFunction& phi);
NormModularReport verify_norm_modular(const VectorGridField& u, const PhiFunction& phi);

// Right-hand side in the dual representation (f, fvec): the functional acts
// as g -> int f g + int fvec . D^s g.
struct DualPairRHS {
    GridField f;
    VectorGridField fvec;
    double s = 0.5;
};

double dual_pairing(const DualPairRHS& F, const GridField& g);

// Discrete L^p norm, optionally restricted to a mask.
double lp_norm(const GridField& u, double p, const DomainMask* mask = nullptr);

// (||u||_{L^p(Omega)}, ||u||_{L^A(Omega)}, ||u||_{L^q(Omega)}) with the two
// comparison ratios; only finiteness is asserted (the inclusion constants
// are not explicit).
struct LebesgueComparisonReport {
    double lp = 0.0, la = 0.0, lq = 0.0;
    double ratio_p_over_a = 0.0; // ||u||_p / ||u||_A
    double ratio_a_over_q = 0.0; // ||u||_A / ||u||_q
    bool finite = false;
};
LebesgueComparisonReport lebesgue_comparison_report(const GridField& u, const PhiFunction& phi,
                                                    const DomainMask& mask);

} // namespace fso
