#include "fso/phi.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "fso/errors.hpp"

namespace fso {

namespace {

constexpr double kTolInv = 1e-10;   // absolute bisection tolerance on ell
constexpr double kTolConj = 1e-10;  // tolerance on the conjugate maximizer r
constexpr double kRangeCap = 1e150; // bracket expansion limit

// Bisection for inf{ell >= 0 : A(ell) >= r} on a monotone callable.
template <class F>
double numeric_left_inverse(F&& A, double r) {
    double hi = 1.0;
    int guard = 0;
    while (A(hi) < r) {
        hi *= 2.0;
        if (hi > kRangeCap) throw std::range_error("left_inverse: r beyond representable range");
        if (++guard > 2000) throw std::range_error("left_inverse: bracketing failure");
    }
    double lo = 0.0;
    if (hi > 1.0) lo = hi / 2.0;
    else {
        lo = hi / 2.0;
        while (lo > 1e-300 && A(lo) >= r) { hi = lo; lo /= 2.0; }
    }
    for (int it = 0; it < 200 && (hi - lo) > kTolInv * 1e-5 + 1e-16 * hi; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (A(mid) >= r) hi = mid;
        else lo = mid;
        if (hi - lo < kTolInv && hi - lo < 1e-12 * std::max(1.0, hi)) break;
    }
    return 0.5 * (lo + hi);
}

// Solve a(r) * r = ell for the conjugate maximizer (left side increasing).
template <class M>
double solve_monotone(M&& m, double ell) {
    double hi = 1.0;
    int guard = 0;
    while (m(hi) < ell) {
        hi *= 2.0;
        if (hi > kRangeCap) throw std::range_error("conjugate: ell beyond representable range");
        if (++guard > 2000) throw std::range_error("conjugate: bracketing failure");
    }
    double lo = hi / 2.0;
    while (lo > 1e-300 && m(lo) > ell) { hi = lo; lo /= 2.0; }
    if (lo <= 1e-300) return 0.0;
    for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (m(mid) >= ell) hi = mid;
        else lo = mid;
        if (hi - lo < kTolConj * std::max(1.0, hi)) break;
    }
    return 0.5 * (lo + hi);
}

// Derivative-free maximization of the concave map r -> r*ell - f(r).
template <class F>
double golden_sup(F&& f, double ell) {
    auto g = [&](double r) { return r * ell - f(r); };
    double hi = 1.0;
    double ghi = g(hi);
    int guard = 0;
    while (true) {
        const double cand = 2.0 * hi;
        if (cand > kRangeCap) throw std::range_error("conjugate: ell beyond representable range");
        const double gc = g(cand);
        if (gc <= ghi) break;
        hi = cand;
        ghi = gc;
        if (++guard > 2000) throw std::range_error("conjugate: bracketing failure");
    }
    double a = 0.0, b = 2.0 * hi;
    const double invphi = (std::sqrt(5.0) - 1.0) / 2.0;
    double c = b - invphi * (b - a), d = a + invphi * (b - a);
    double gc = g(c), gd = g(d);
    for (int it = 0; it < 160 && (b - a) > kTolConj * std::max(1.0, b); ++it) {
        if (gc >= gd) {
            b = d; d = c; gd = gc;
            c = b - invphi * (b - a);
            gc = g(c);
        } else {
            a = c; c = d; gc = gd;
            d = a + invphi * (b - a);
            gd = g(d);
        }
    }
    const double r = 0.5 * (a + b);
    return std::max(0.0, g(r));
}

} // namespace

// ---- factories -------------------------------------------------------------

PhiFunction PhiFunction::power(double p, double coeff) {
    if (!(p > 1.0) || !(coeff > 0.0)) throw std::domain_error("power phi: need p > 1, coeff > 0");
    PhiFunction phi;
    phi.family_ = Family::Power;
    phi.name_ = "power";
    phi.p_ = phi.q_ = p;
    phi.coeff_ = coeff;
    phi.growth_ = GrowthExponents(p, p);
    return phi;
}

PhiFunction PhiFunction::variable_exponent(GridField exponent) {
    GridField w(exponent.grid, 1.0);
    return variable_exponent(std::move(exponent), std::move(w));
}

PhiFunction PhiFunction::variable_exponent(GridField exponent, GridField weight) {
    if (exponent.grid != weight.grid) throw config_error("variable_exponent: parameter grids differ");
    double pmin = 1e300, pmax = 0.0;
    for (double pe : exponent.v) { pmin = std::min(pmin, pe); pmax = std::max(pmax, pe); }
    if (!(pmin > 1.0) || !std::isfinite(pmax))
        throw std::domain_error("variable_exponent: need 1 < p(x) < inf");
    for (double a : weight.v)
        if (!(a > 0.0)) throw std::domain_error("variable_exponent: weight must be positive");
    PhiFunction phi;
    phi.family_ = Family::VariableExponent;
    phi.name_ = "variable-exponent";
    phi.growth_ = GrowthExponents(pmin, pmax);
    phi.exponent_field_ = std::make_shared<GridField>(std::move(exponent));
    phi.weight_field_ = std::make_shared<GridField>(std::move(weight));
    return phi;
}

PhiFunction PhiFunction::log_perturbed(GridField exponent) {
    double pmin = 1e300, pmax = 0.0;
    for (double pe : exponent.v) { pmin = std::min(pmin, pe); pmax = std::max(pmax, pe); }
    if (!(pmin > 1.0) || !std::isfinite(pmax))
        throw std::domain_error("log_perturbed: need 1 < p(x) < inf");
    PhiFunction phi;
    phi.family_ = Family::LogPerturbed;
    phi.name_ = "log-perturbed";
    // ell^p log(e+ell) is (Inc)_{p-}; it is not (Dec)_{p+} (the log factor
    // grows), but (Dec)_{p+ + 1/2} holds: declare that as the upper exponent.
    phi.growth_ = GrowthExponents(pmin, pmax + 0.5);
    phi.exponent_field_ = std::make_shared<GridField>(std::move(exponent));
    return phi;
}

PhiFunction PhiFunction::double_phase(double p, double q, double alpha) {
    if (!(1.0 < p && p < q) || alpha < 0.0)
        throw std::domain_error("double_phase: need 1 < p < q and alpha >= 0");
    PhiFunction phi;
    phi.family_ = Family::DoublePhase;
    phi.name_ = "double-phase";
    phi.p_ = p;
    phi.q_ = q;
    phi.coeff_ = alpha;
    phi.growth_ = GrowthExponents(p, q);
    return phi;
}

PhiFunction PhiFunction::double_phase(double p, double q, GridField alpha) {
    PhiFunction phi = double_phase(p, q, 0.0);
    for (double a : alpha.v)
        if (a < 0.0) throw std::domain_error("double_phase: alpha(x) must be nonnegative");
    phi.weight_field_ = std::make_shared<GridField>(std::move(alpha));
    return phi;
}

PhiFunction PhiFunction::custom(std::string name, ScalarFn eval, ScalarFn density, GrowthExponents growth) {
    if (!eval) throw std::domain_error("custom phi: evaluation rule required");
    PhiFunction phi;
    phi.family_ = Family::Custom;
    phi.name_ = std::move(name);
    phi.growth_ = growth;
    phi.custom_eval_ = std::move(eval);
    phi.custom_density_ = std::move(density);
    return phi;
}

bool PhiFunction::spatially_constant() const {
    if (family_ == Family::Conjugate || family_ == Family::SobolevCompanion)
        return inner_->spatially_constant();
    return !exponent_field_ && !weight_field_;
}

const Grid* PhiFunction::parameter_grid() const {
    if (exponent_field_) return &exponent_field_->grid;
    if (weight_field_) return &weight_field_->grid;
    if (inner_) return inner_->parameter_grid();
    return nullptr;
}

bool PhiFunction::has_density() const {
    switch (family_) {
    case Family::Power:
    case Family::VariableExponent:
    case Family::LogPerturbed:
    case Family::DoublePhase:
    case Family::Conjugate:
    case Family::SobolevCompanion:
        return true;
    case Family::Custom:
        return static_cast<bool>(custom_density_);
    }
    return false;
}

// ---- evaluation -------------------------------------------------------------

double PhiFunction::eval(std::size_t x, double ell) const {
    if (ell < 0.0) throw std::domain_error("phi eval: ell must be nonnegative");
    if (ell == 0.0) return 0.0;
    switch (family_) {
    case Family::Power:
        return coeff_ * std::pow(ell, p_);
    case Family::VariableExponent:
        return (*weight_field_)[x] * std::pow(ell, (*exponent_field_)[x]);
    case Family::LogPerturbed:
        return std::pow(ell, (*exponent_field_)[x]) * std::log(std::numbers::e + ell);
    case Family::DoublePhase: {
        const double a = weight_field_ ? (*weight_field_)[x] : coeff_;
        return std::pow(ell, p_) + a * std::pow(ell, q_);
    }
    case Family::Conjugate:
        return inner_->conjugate(x, ell);
    case Family::SobolevCompanion:
        return companion_eval(ell);
    case Family::Custom:
        return custom_eval_(x, ell);
    }
    return 0.0;
}

double PhiFunction::density(std::size_t x, double r) const {
    if (!(r > 0.0)) throw std::domain_error("phi density: r must be positive");
    switch (family_) {
    case Family::Power:
        return coeff_ * p_ * std::pow(r, p_ - 2.0);
    case Family::VariableExponent: {
        const double pe = (*exponent_field_)[x];
        return (*weight_field_)[x] * pe * std::pow(r, pe - 2.0);
    }
    case Family::LogPerturbed: {
        const double pe = (*exponent_field_)[x];
        return pe * std::pow(r, pe - 2.0) * std::log(std::numbers::e + r) +
               std::pow(r, pe - 1.0) / (std::numbers::e + r);
    }
    case Family::DoublePhase: {
        const double a = weight_field_ ? (*weight_field_)[x] : coeff_;
        return p_ * std::pow(r, p_ - 2.0) + q_ * a * std::pow(r, q_ - 2.0);
    }
    case Family::Conjugate: {
        // Envelope: d/dell A'(x, ell) equals the maximizer r*(ell), so the
        // conjugate's density is r*(ell) / ell.
        const double rstar = inner_->has_density()
                                 ? solve_monotone([&](double t) { return inner_->density(x, t) * t; }, r)
                                 : 0.0;
        if (rstar > 0.0) return rstar / r;
        // fall back to a finite-difference slope
        const double d = 1e-6 * r;
        return (eval(x, r + d) - eval(x, std::max(0.0, r - d))) / (2.0 * d) / r;
    }
    case Family::SobolevCompanion: {
        const double d = 1e-6 * r;
        return (companion_eval(r + d) - companion_eval(std::max(0.0, r - d))) / (2.0 * d) / r;
    }
    case Family::Custom:
        if (!custom_density_) throw std::domain_error("custom phi: no density rule");
        return custom_density_(x, r);
    }
    return 0.0;
}

double PhiFunction::conjugate(std::size_t x, double ell) const {
    if (ell < 0.0) throw std::domain_error("phi conjugate: ell must be nonnegative");
    if (ell == 0.0) return 0.0;
    switch (family_) {
    case Family::Power: {
        // sup r*ell - c r^p at r* = (ell/(c p))^{1/(p-1)}
        const double rstar = std::pow(ell / (coeff_ * p_), 1.0 / (p_ - 1.0));
        return rstar * ell * (1.0 - 1.0 / p_);
    }
    case Family::VariableExponent: {
        const double pe = (*exponent_field_)[x], c = (*weight_field_)[x];
        const double rstar = std::pow(ell / (c * pe), 1.0 / (pe - 1.0));
        return rstar * ell * (1.0 - 1.0 / pe);
    }
    case Family::LogPerturbed:
    case Family::DoublePhase:
    case Family::Custom:
        if (has_density()) {
            const double rstar = solve_monotone([&](double t) { return density(x, t) * t; }, ell);
            return std::max(0.0, rstar * ell - eval(x, rstar));
        }
        [[fallthrough]];
    case Family::Conjugate:
    case Family::SobolevCompanion:
        return golden_sup([&](double t) { return eval(x, t); }, ell);
    }
    return 0.0;
}

double PhiFunction::left_inverse(std::size_t x, double r) const {
    if (r < 0.0) throw std::domain_error("phi left_inverse: r must be nonnegative");
    if (r == 0.0) return 0.0;
    switch (family_) {
    case Family::Power:
        return std::pow(r / coeff_, 1.0 / p_);
    case Family::VariableExponent:
        return std::pow(r / (*weight_field_)[x], 1.0 / (*exponent_field_)[x]);
    case Family::SobolevCompanion:
        return std::pow(r, -gamma_) * inner_->left_inverse(x, r);
    default:
        return numeric_left_inverse([&](double ell) { return eval(x, ell); }, r);
    }
}

// ---- conjugate / companion construction -------------------------------------

PhiFunction conjugate_phi(const PhiFunction& phi) {
    PhiFunction out;
    out.family_ = PhiFunction::Family::Conjugate;
    out.name_ = phi.name_ + "-conjugate";
    const auto g = phi.growth();
    out.growth_ = GrowthExponents(g.q / (g.q - 1.0), g.p / (g.p - 1.0));
    out.inner_ = std::make_shared<PhiFunction>(phi);
    return out;
}

PhiFunction build_sobolev_companion(const PhiFunction& phi, double gamma) {
    if (!(gamma > 0.0 && gamma < 1.0))
        throw std::domain_error("sobolev companion: gamma must lie in (0,1)");
    if (!phi.spatially_constant())
        throw std::domain_error("sobolev companion: spatially constant phi required");
    const auto g = phi.growth();
    if (!(gamma < 1.0 / g.q))
        throw std::domain_error("sobolev companion: need gamma < 1/q for an increasing B^{-1}");

    PhiFunction out;
    out.family_ = PhiFunction::Family::SobolevCompanion;
    out.name_ = phi.name_ + "-companion";
    out.gamma_ = gamma;
    out.inner_ = std::make_shared<PhiFunction>(phi);
    out.growth_ = GrowthExponents(1.0 / (1.0 / g.p - gamma), 1.0 / (1.0 / g.q - gamma));

    // log B^{-1}(t) on a geometric t-ladder; must come out strictly increasing.
    const int klo = -80, khi = 80; // t = 2^{k/2}
    out.table_log_t_.reserve(khi - klo + 1);
    out.table_log_binv_.reserve(khi - klo + 1);
    for (int k = klo; k <= khi; ++k) {
        const double t = std::pow(2.0, 0.5 * k);
        const double binv = std::pow(t, -gamma) * phi.left_inverse(0, t);
        if (!(binv > 0.0) || !std::isfinite(binv))
            throw std::domain_error("sobolev companion: inverse tabulation failed");
        out.table_log_t_.push_back(std::log(t));
        out.table_log_binv_.push_back(std::log(binv));
    }
    for (std::size_t i = 1; i < out.table_log_binv_.size(); ++i)
        if (!(out.table_log_binv_[i] > out.table_log_binv_[i - 1]))
            throw std::domain_error("sobolev companion: B^{-1} not increasing on the ladder");
    return out;
}

double PhiFunction::companion_eval(double ell) const {
    // Invert the tabulated B^{-1} with log-log linear interpolation; linear
    // extrapolation in log space past the ladder ends (exact for powers).
    const double z = std::log(ell);
    const auto& lb = table_log_binv_;
    const auto& lt = table_log_t_;
    std::size_t i;
    if (z <= lb.front()) {
        i = 0;
    } else if (z >= lb.back()) {
        i = lb.size() - 2;
    } else {
        i = static_cast<std::size_t>(std::upper_bound(lb.begin(), lb.end(), z) - lb.begin()) - 1;
    }
    const double slope = (lt[i + 1] - lt[i]) / (lb[i + 1] - lb[i]);
    return std::exp(lt[i] + slope * (z - lb[i]));
}

// ---- condition checks --------------------------------------------------------

std::string to_string(PhiCondition c) {
    switch (c) {
    case PhiCondition::IncP: return "inc-p";
    case PhiCondition::DecQ: return "dec-q";
    case PhiCondition::A0: return "a0";
    case PhiCondition::A1: return "a1";
    case PhiCondition::A2: return "a2";
    case PhiCondition::HypothesisOnA: return "hypothesis-on-a";
    case PhiCondition::PointwiseBounds: return "pointwise-bounds";
    }
    return "?";
}

namespace {

std::vector<double> ladder(const SamplingPlan& plan) {
    std::vector<double> out;
    for (int k = plan.ladder_lo; k <= plan.ladder_hi; ++k) out.push_back(std::ldexp(1.0, k));
    return out;
}

std::vector<std::size_t> capped(const std::vector<std::size_t>& xs, std::size_t cap) {
    if (xs.size() <= cap) return xs;
    std::vector<std::size_t> out;
    const std::size_t stride = xs.size() / cap;
    for (std::size_t i = 0; i < xs.size() && out.size() < cap; i += stride) out.push_back(xs[i]);
    return out;
}

ConditionReport check_monotone_ratio(const PhiFunction& phi, const SamplingPlan& plan, bool increasing) {
    ConditionReport rep;
    rep.id = increasing ? PhiCondition::IncP : PhiCondition::DecQ;
    const double e = increasing ? (plan.inc_p > 0.0 ? plan.inc_p : phi.growth().p)
                                : (plan.dec_q > 0.0 ? plan.dec_q : phi.growth().q);
    rep.note = (increasing ? "exponent p = " : "exponent q = ") + std::to_string(e);
    rep.pass = true;
    const auto ells = ladder(plan);
    for (std::size_t x : plan.x_samples) {
        double prev = phi.eval(x, ells[0]) / std::pow(ells[0], e);
        for (std::size_t k = 1; k < ells.size(); ++k) {
            const double cur = phi.eval(x, ells[k]) / std::pow(ells[k], e);
            ++rep.samples_used;
            const bool ok = increasing ? cur >= prev * (1.0 - plan.tol) - 1e-300
                                       : cur <= prev * (1.0 + plan.tol) + 1e-300;
            if (!ok) {
                const double mag = std::abs(cur - prev) / std::max(std::abs(prev), 1e-300);
                if (!rep.witness || mag > rep.witness->magnitude)
                    rep.witness = ConditionWitness{x, ells[k], mag};
                rep.pass = false;
            }
            prev = cur;
        }
    }
    return rep;
}

ConditionReport check_a0(const PhiFunction& phi, const SamplingPlan& plan) {
    ConditionReport rep;
    rep.id = PhiCondition::A0;
    double beta = 1.0;
    std::size_t worst_x = plan.x_samples.front();
    for (std::size_t x : plan.x_samples) {
        const double l1 = phi.left_inverse(x, 1.0); // A(x, l1) = 1
        ++rep.samples_used;
        const double bx = std::min(l1, 1.0 / l1);
        if (bx < beta) { beta = bx; worst_x = x; }
    }
    beta = std::min(beta, 1.0) * (1.0 - 1e-9); // guard the bisection tolerance
    rep.beta = beta;
    rep.pass = beta > 0.0 && std::isfinite(beta);
    // verify the certificate directly
    for (std::size_t x : plan.x_samples) {
        if (phi.eval(x, beta) > 1.0 + plan.tol || phi.eval(x, 1.0 / beta) < 1.0 - plan.tol) {
            rep.pass = false;
            rep.witness = ConditionWitness{x, beta, phi.eval(x, beta) - 1.0};
        }
    }
    if (!rep.pass && !rep.witness) rep.witness = ConditionWitness{worst_x, beta, 0.0};
    return rep;
}

ConditionReport check_hypothesis_on_a(const PhiFunction& phi, const SamplingPlan& plan) {
    ConditionReport rep;
    rep.id = PhiCondition::HypothesisOnA;
    if (!phi.has_density()) throw config_error("hypothesis-on-a: phi has no density rule");
    const double am = phi.growth().p - 1.0, ap = phi.growth().q - 1.0;
    const double tol_fd = std::max(1e-4, plan.tol);
    rep.pass = true;
    rep.note = "a- = " + std::to_string(am) + ", a+ = " + std::to_string(ap);
    const auto rs = ladder(plan);
    for (std::size_t x : plan.x_samples) {
        for (double r : rs) {
            const double d = plan.fd_delta * r;
            const double da = (phi.density(x, r + d) - phi.density(x, r - d)) / (2.0 * d);
            const double val = r * da / phi.density(x, r) + 1.0;
            ++rep.samples_used;
            if (val < am - tol_fd || val > ap + tol_fd) {
                const double mag = std::max(am - val, val - ap);
                if (!rep.witness || mag > rep.witness->magnitude)
                    rep.witness = ConditionWitness{x, r, mag};
                rep.pass = false;
            }
        }
    }
    return rep;
}

ConditionReport check_pointwise_bounds(const PhiFunction& phi, const SamplingPlan& plan) {
    ConditionReport rep;
    rep.id = PhiCondition::PointwiseBounds;
    if (!phi.has_density()) throw config_error("pointwise-bounds: phi has no density rule");
    const double p = phi.growth().p, q = phi.growth().q;
    rep.pass = true;
    const auto ells = ladder(plan);
    for (std::size_t x : plan.x_samples) {
        for (double ell : ells) {
            const double A = phi.eval(x, ell);
            const double la = ell * ell * phi.density(x, ell);
            ++rep.samples_used;
            const double lo = p * A * (1.0 - plan.tol), hi = q * A * (1.0 + plan.tol);
            if (la < lo || la > hi) {
                const double mag = std::max(lo - la, la - hi) / std::max(A, 1e-300);
                if (!rep.witness || mag > rep.witness->magnitude)
                    rep.witness = ConditionWitness{x, ell, mag};
                rep.pass = false;
            }
        }
    }
    return rep;
}

ConditionReport check_a1(const PhiFunction& phi, const SamplingPlan& plan) {
    ConditionReport rep;
    rep.id = PhiCondition::A1;
    rep.sampled_only = true;
    if (plan.balls.empty()) throw config_error("(A1): sampling plan declares no balls");
    double beta = 1.0;
    for (const auto& ball : plan.balls) {
        if (!(ball.measure > 0.0 && ball.measure <= 1.0))
            throw config_error("(A1): ball measure must lie in (0,1]");
        const auto cells = capped(ball.cells, 12);
        const double lmax = 1.0 / ball.measure;
        for (int i = 0; i <= 8; ++i) {
            const double ell = std::pow(lmax, i / 8.0); // geometric in [1, 1/|B|]
            for (std::size_t x : cells) {
                const double ax = phi.left_inverse(x, ell);
                for (std::size_t y : cells) {
                    if (x == y) continue;
                    ++rep.samples_used;
                    beta = std::min(beta, phi.left_inverse(y, ell) / ax);
                }
            }
        }
    }
    rep.beta = beta;
    rep.pass = beta >= plan.beta_floor;
    rep.note = "sampled";
    if (!rep.pass) rep.witness = ConditionWitness{0, 0.0, plan.beta_floor - beta};
    return rep;
}

ConditionReport check_a2(const PhiFunction& phi, const SamplingPlan& plan) {
    ConditionReport rep;
    rep.id = PhiCondition::A2;
    rep.sampled_only = true;
    const auto xs = capped(plan.x_samples, 12);
    double beta = 1.0;
    for (int i = 1; i <= 8; ++i) {
        const double ell = plan.a2_sigma * i / 8.0;
        for (std::size_t x : xs) {
            const double ax = phi.left_inverse(x, ell);
            if (ax == 0.0) continue;
            for (std::size_t y : xs) {
                if (x == y) continue;
                ++rep.samples_used;
                beta = std::min(beta, phi.left_inverse(y, ell + 2.0 * plan.a2_h) / ax);
            }
        }
    }
    rep.beta = beta;
    rep.pass = beta >= plan.beta_floor;
    rep.note = "sampled, h = " + std::to_string(plan.a2_h);
    if (!rep.pass) rep.witness = ConditionWitness{0, 0.0, plan.beta_floor - beta};
    return rep;
}

} // namespace

ConditionReport check_condition(const PhiFunction& phi, PhiCondition cond, const SamplingPlan& plan) {
    if (plan.x_samples.empty()) throw config_error("check_condition: empty sampling plan");
    if (plan.ladder_hi <= plan.ladder_lo) throw config_error("check_condition: empty ladder");
    switch (cond) {
    case PhiCondition::IncP: return check_monotone_ratio(phi, plan, true);
    case PhiCondition::DecQ: return check_monotone_ratio(phi, plan, false);
    case PhiCondition::A0: return check_a0(phi, plan);
    case PhiCondition::A1: return check_a1(phi, plan);
    case PhiCondition::A2: return check_a2(phi, plan);
    case PhiCondition::HypothesisOnA: return check_hypothesis_on_a(phi, plan);
    case PhiCondition::PointwiseBounds: return check_pointwise_bounds(phi, plan);
    }
    throw config_error("check_condition: unknown condition");
}

} // namespace fso
