#include "fso/orlicz.hpp"

#include <cmath>

#include "fso/errors.hpp"
#include "fso/parallel.hpp"
#include "fso/spectral.hpp"

namespace fso {

namespace {

void check_grids(const Grid& field_grid, const PhiFunction& phi) {
    const Grid* pg = phi.parameter_grid();
    if (pg && *pg != field_grid)
        throw config_error("modular: field and phi parameter grids differ");
}

template <class Mag>
double modular_impl(const Grid& g, std::size_t n, const PhiFunction& phi, Mag&& mag) {
    const double vol = g.cell_volume();
    return vol * par::sum(n, [&](std::size_t i) {
        const double m = mag(i);
        return m == 0.0 ? 0.0 : phi.eval(i, m);
    });
}

template <class Mag>
double luxemburg_impl(const Grid& g, std::size_t n, const PhiFunction& phi, Mag&& mag) {
    const double vol = g.cell_volume();
    auto mod_at = [&](double rho) {
        return vol * par::sum(n, [&](std::size_t i) {
            const double m = mag(i);
            return m == 0.0 ? 0.0 : phi.eval(i, m / rho);
        });
    };

    const double J = modular_impl(g, n, phi, mag);
    if (J == 0.0) return 0.0;
    if (!std::isfinite(J)) throw std::domain_error("luxemburg_norm: non-finite modular");

    const auto gw = phi.growth();
    double lo = std::min(std::pow(J, 1.0 / gw.p), std::pow(J, 1.0 / gw.q)) * (1.0 - 1e-6);
    double hi = std::max(std::pow(J, 1.0 / gw.p), std::pow(J, 1.0 / gw.q)) * (1.0 + 1e-6);
    // safety expansion; the bracket above is already valid under (Inc)_p/(Dec)_q
    for (int k = 0; k < 200 && mod_at(lo) < 1.0; ++k) lo /= 8.0;
    for (int k = 0; k < 200 && mod_at(hi) > 1.0; ++k) hi *= 8.0;

    double zlo = std::log(lo), zhi = std::log(hi);
    auto f = [&](double z) { return std::log(mod_at(std::exp(z))); }; // decreasing, root at rho*
    double z = 0.5 * (zlo + zhi), fz = 0.0;
    double zprev = zlo, fprev = f(zlo);
    for (int it = 0; it < 80; ++it) {
        fz = f(z);
        if (std::abs(fz) <= 1e-14 || (zhi - zlo) <= 1e-15) break;
        if (fz > 0.0) zlo = z;
        else zhi = z;
        // secant proposal, bisection fallback
        double znext = 0.5 * (zlo + zhi);
        const double denom = fz - fprev;
        if (std::isfinite(fz) && std::isfinite(fprev) && denom != 0.0) {
            const double zs = z - fz * (z - zprev) / denom;
            if (zs > zlo && zs < zhi) znext = zs;
        }
        zprev = z;
        fprev = fz;
        z = znext;
    }
    return std::exp(z);
}

template <class Mag>
NormModularReport verify_impl(const Grid& g, std::size_t n, const PhiFunction& phi, Mag&& mag) {
    NormModularReport rep;
    rep.J = modular_impl(g, n, phi, mag);
    rep.norm = luxemburg_impl(g, n, phi, mag);
    const auto gw = phi.growth();
    rep.lower = std::min(std::pow(rep.J, 1.0 / gw.p), std::pow(rep.J, 1.0 / gw.q));
    rep.upper = std::max(std::pow(rep.J, 1.0 / gw.p), std::pow(rep.J, 1.0 / gw.q));
    rep.J_plus_one = rep.J + 1.0;
    const double c = 1e-9; // cushion for the norm solver tolerance
    const double np = std::pow(rep.norm, gw.p), nq = std::pow(rep.norm, gw.q);
    rep.pass = rep.lower <= rep.norm * (1.0 + c) && rep.norm <= rep.upper * (1.0 + c) &&
               rep.upper <= rep.J_plus_one * (1.0 + c) &&
               0.5 * std::min(np, nq) <= rep.J * (1.0 + c) &&
               rep.J <= 2.0 * std::max(np, nq) * (1.0 + c);
    return rep;
}

} // namespace

double modular(const GridField& u, const PhiFunction& phi) {
    check_grids(u.grid, phi);
    return modular_impl(u.grid, u.size(), phi, [&](std::size_t i) { return std::abs(u[i]); });
}

double modular(const VectorGridField& u, const PhiFunction& phi) {
    check_grids(u.grid, phi);
    return modular_impl(u.grid, u.size(), phi, [&](std::size_t i) { return u.magnitude(i); });
}

double luxemburg_norm(const GridField& u, const PhiFunction& phi) {
    check_grids(u.grid, phi);
    if (!u.all_finite()) throw std::domain_error("luxemburg_norm: non-finite samples");
    return luxemburg_impl(u.grid, u.size(), phi, [&](std::size_t i) { return std::abs(u[i]); });
}

double luxemburg_norm(const VectorGridField& u, const PhiFunction& phi) {
    check_grids(u.grid, phi);
    for (const auto& c : u.comp)
        if (!c.all_finite()) throw std::domain_error("luxemburg_norm: non-finite samples");
    return luxemburg_impl(u.grid, u.size(), phi, [&](std::size_t i) { return u.magnitude(i); });
}

NormModularReport verify_norm_modular(const GridField& u, const PhiFunction& phi) {
    check_grids(u.grid, phi);
    return verify_impl(u.grid, u.size(), phi, [&](std::size_t i) { return std::abs(u[i]); });
}

NormModularReport verify_norm_modular(const VectorGridField& u, const PhiFunction& phi) {
    check_grids(u.grid, phi);
    return verify_impl(u.grid, u.size(), phi, [&](std::size_t i) { return u.magnitude(i); });
}

double dual_pairing(const DualPairRHS& F, const GridField& g) {
    if (F.f.grid != g.grid || F.fvec.grid != g.grid)
        throw config_error("dual_pairing: grid mismatch");
    const auto dsg = riesz_gradient(g, F.s);
    return inner(F.f, g) + inner(F.fvec, dsg);
}

double lp_norm(const GridField& u, double p, const DomainMask* mask) {
    if (!(p >= 1.0)) throw std::domain_error("lp_norm: p >= 1 required");
    const double vol = u.grid.cell_volume();
    const double s = par::sum(u.size(), [&](std::size_t i) {
        if (mask && !mask->inside[i]) return 0.0;
        return std::pow(std::abs(u[i]), p);
    });
    return std::pow(s * vol, 1.0 / p);
}

LebesgueComparisonReport lebesgue_comparison_report(const GridField& u, const PhiFunction& phi,
                                                    const DomainMask& mask) {
    if (u.grid != mask.grid) throw config_error("lebesgue_comparison: grid mismatch");
    GridField restricted = u;
    mask.project(restricted);
    const auto gw = phi.growth();
    LebesgueComparisonReport rep;
    rep.lp = lp_norm(restricted, gw.p);
    rep.la = luxemburg_norm(restricted, phi);
    rep.lq = lp_norm(restricted, gw.q);
    rep.ratio_p_over_a = rep.la > 0.0 ? rep.lp / rep.la : 0.0;
    rep.ratio_a_over_q = rep.lq > 0.0 ? rep.la / rep.lq : 0.0;
    rep.finite = std::isfinite(rep.lp) && std::isfinite(rep.la) && std::isfinite(rep.lq);
    return rep;
}

} // namespace fso
