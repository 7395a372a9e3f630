#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "fso/grid.hpp"

namespace fso {

// Evaluating the density below this radius is never needed: the quadrature
// cell [0, kDensityFloor] is treated analytically and solver code floors
// gradient magnitudes here (integrable singularity when p < 2).
inline constexpr double kDensityFloor = 1e-12;

struct GrowthExponents {
    double p = 2.0, q = 2.0;
    GrowthExponents() = default;
    GrowthExponents(double p_, double q_) : p(p_), q(q_) {
        if (!(1.0 < p && p <= q && std::isfinite(q)))
            throw std::domain_error("GrowthExponents: need 1 < p <= q < inf");
    }
};

// Spatially-dependent Young function A(x, ell) with density a(x, r) tied to A
// by A(x, ell) = integral_0^ell a(x, r) r dr. The x argument is a flat grid
// cell index; spatially constant families ignore it.
class PhiFunction {
public:
    enum class Family {
        Power,            // A = c ell^p
        VariableExponent, // A = alpha(x) ell^{p(x)}
        LogPerturbed,     // A = ell^{p(x)} log(e + ell)
        DoublePhase,      // A = ell^p + alpha(x) ell^q
        Conjugate,        // Legendre transform of an inner phi
        SobolevCompanion, // B with B^{-1}(t) = t^{-gamma} A^{-1}(t)
        Custom,
    };

    using ScalarFn = std::function<double(std::size_t, double)>;

    static PhiFunction power(double p, double coeff = 1.0);
    static PhiFunction variable_exponent(GridField exponent);
    static PhiFunction variable_exponent(GridField exponent, GridField weight);
    static PhiFunction log_perturbed(GridField exponent);
    static PhiFunction double_phase(double p, double q, double alpha);
    static PhiFunction double_phase(double p, double q, GridField alpha);
    // Custom family: density may be empty (conjugate then uses a derivative-free search).
    static PhiFunction custom(std::string name, ScalarFn eval, ScalarFn density, GrowthExponents growth);

    // A(x, ell); ell >= 0, A(x,0) = 0 exactly.
    double eval(std::size_t x, double ell) const;
    // a(x, r); r > 0 (may be singular at 0 when p < 2).
    double density(std::size_t x, double r) const;
    // A'(x, ell) = sup_{r>=0} (r ell - A(x,r)).
    double conjugate(std::size_t x, double ell) const;
    // A^{-1}(x, r) = inf{ell >= 0 : A(x, ell) >= r}.
    double left_inverse(std::size_t x, double r) const;

    Family family() const { return family_; }
    const std::string& name() const { return name_; }
    GrowthExponents growth() const { return growth_; }
    bool spatially_constant() const;
    const Grid* parameter_grid() const;
    bool has_density() const;

    friend PhiFunction conjugate_phi(const PhiFunction& phi);
    friend PhiFunction build_sobolev_companion(const PhiFunction& phi, double gamma);

private:
    PhiFunction() = default;

    Family family_ = Family::Power;
    std::string name_;
    GrowthExponents growth_;
    double p_ = 2.0, q_ = 2.0, coeff_ = 1.0;
    std::shared_ptr<const GridField> exponent_field_; // p(x)
    std::shared_ptr<const GridField> weight_field_;   // alpha(x)
    std::shared_ptr<const PhiFunction> inner_;        // Conjugate / SobolevCompanion
    double gamma_ = 0.0;                              // SobolevCompanion
    std::vector<double> table_log_t_;                 // SobolevCompanion: log t ladder
    std::vector<double> table_log_binv_;              // log B^{-1}(t), strictly increasing
    ScalarFn custom_eval_;
    ScalarFn custom_density_;

    double companion_eval(double ell) const;
};

// Legendre-Fenchel conjugate as a first-class phi (evaluating it runs the
// numeric sup; no shortcut is taken for double conjugation).
PhiFunction conjugate_phi(const PhiFunction& phi);

// Companion B for the Sobolev embedding, defined through
// B^{-1}(x,t) = t^{-gamma} A^{-1}(x,t), tabulated on a geometric ladder with
// monotone log-log interpolation. Requires a spatially constant phi and
// gamma < 1/q so B^{-1} stays increasing.
PhiFunction build_sobolev_companion(const PhiFunction& phi, double gamma);

// ---- Growth / structure audits -------------------------------------------

enum class PhiCondition { IncP, DecQ, A0, A1, A2, HypothesisOnA, PointwiseBounds };

std::string to_string(PhiCondition c);

struct SampleBall {
    std::vector<std::size_t> cells; // grid cells inside the ball
    double measure = 1.0;           // |B| <= 1
};

struct SamplingPlan {
    std::vector<std::size_t> x_samples; // flat cell indices
    int ladder_lo = -20;                // ell = 2^k, k = ladder_lo..ladder_hi
    int ladder_hi = 20;
    double inc_p = 0.0;                 // exponent under test; 0 -> phi.growth().p
    double dec_q = 0.0;                 // 0 -> phi.growth().q
    double fd_delta = 1e-6;             // relative step for density derivatives
    double tol = 1e-9;
    std::vector<SampleBall> balls;      // (A1) spot checks
    double a2_sigma = 1.0;              // (A2): ell range [0, sigma]
    double a2_h = 1.0;                  // (A2): constant h(x) = a2_h
    double beta_floor = 1e-3;           // minimal admissible beta for A1/A2
};

struct ConditionWitness {
    std::size_t x = 0;
    double ell = 0.0;
    double magnitude = 0.0;
};

struct ConditionReport {
    PhiCondition id{};
    bool pass = false;
    bool sampled_only = false; // A1/A2 are spot checks over declared balls/points only
    double beta = 0.0;         // A0/A1/A2
    std::optional<ConditionWitness> witness;
    std::size_t samples_used = 0;
    std::string note;
};

ConditionReport check_condition(const PhiFunction& phi, PhiCondition cond, const SamplingPlan& plan);

} // namespace fso
