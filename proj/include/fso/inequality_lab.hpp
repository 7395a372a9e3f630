#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "fso/grid.hpp"
#include "fso/phi.hpp"

namespace fso {

// Geometry the suite windows its fields with (so every member vanishes
// outside the mask while staying smooth).
struct MaskGeometry {
    enum class Kind { Full, Interval, Disk };
    Kind kind = Kind::Interval;
    double cx = 0.0, cy = 0.0;
    double half_width = 0.0; // interval half width / disk radius; full torus ignores it

    DomainMask to_mask(const Grid& g) const;
    double window_radius(const Grid& g) const; // support radius of the smooth window
};

// Deterministic stand-in for a family of test functions: 3 bump widths x 2
// placements, 5 seeded band-limited fields, 3 windowed oscillatory modes.
struct SuiteField {
    std::string id;
    GridField u;
};

struct TestSuite {
    Grid grid;
    MaskGeometry geometry;
    std::uint64_t seed = 0;
    std::vector<SuiteField> fields;

    static TestSuite build(const Grid& g, const MaskGeometry& geom, std::uint64_t seed);
};

// One empirical inequality evaluation. ratio = lhs / rhs_no_constant is the
// quantity compared against a captured baseline constant.
struct InequalityRecord {
    std::string inequality_id;
    double r = 0.0, s = 0.0, t = 0.0, sigma = 0.0;
    std::string field_id;
    double lhs = 0.0;
    double rhs_no_constant = 0.0;
    double ratio = 0.0;
    double baseline = 0.0; // 0 until a baseline is applied
    bool pass = true;
};

// ||u||_{L^A} <= (C/(1-2^{-s})) ||D^s u||_{L^A}: rhs_no_constant carries the
// (1-2^{-s}) scaling so ratio is the candidate constant C.
std::vector<InequalityRecord> poincare_sweep(const TestSuite& suite, const PhiFunction& phi,
                                             std::span<const double> s_grid);

// ||D^s u|| <= C ||D^r u||^{(t-s)/(t-r)} ||D^t u||^{(s-r)/(t-r)}, 0<=r<=s<=t<=1.
InequalityRecord interpolation_check(const GridField& u, const std::string& field_id, double r,
                                     double s, double t, const PhiFunction& phi);

// ||D^sigma u|| <= C(sigma) ||D^s u|| for 0 < sigma < s <= 1, with the shape
// C(sigma) = c1*shape1 + c2*shape2 below.
InequalityRecord spaces_decrease_check(const GridField& u, const std::string& field_id, double sigma,
                                       double s, const PhiFunction& phi);
double spaces_decrease_shape1(double sigma, int d); // (1/(d-1+sigma)) (1 + 1/(1-2^{-sigma}))
double spaces_decrease_shape2(double sigma);        // (1/sigma) (1/(1-2^{-sigma}))

// ||u||_{L^B} <= C ||D^s u||_{L^A} with B the Sobolev companion for
// gamma = s/d. Companion construction failures propagate.
InequalityRecord sobolev_check(const GridField& u, const std::string& field_id, double s,
                               const PhiFunction& phi);

// e_n = ||D^{s_n} u - D^sigma u||_{L^A}.
std::vector<double> s_continuity_study(const GridField& u, double sigma,
                                       std::span<const double> s_sequence, const PhiFunction& phi);

// Operator ratio ||T_{s,sigma} v||_{L^A} / ||v||_{L^A} for the symbol
// |xi|^sigma / (1+|xi|^s).
InequalityRecord interpolation_multiplier_boundedness(const GridField& v, const std::string& field_id,
                                                      double s, double sigma, const PhiFunction& phi);

} // namespace fso
