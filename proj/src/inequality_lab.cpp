#include "fso/inequality_lab.hpp"

#include <cmath>

#include "fso/errors.hpp"
#include "fso/fields.hpp"
#include "fso/orlicz.hpp"
#include "fso/spectral.hpp"

namespace fso {

DomainMask MaskGeometry::to_mask(const Grid& g) const {
    switch (kind) {
    case Kind::Full: return DomainMask::full(g);
    case Kind::Interval: return DomainMask::interval(g, cx, half_width);
    case Kind::Disk: return DomainMask::disk(g, cx, cy, half_width);
    }
    throw config_error("MaskGeometry: unknown kind");
}

double MaskGeometry::window_radius(const Grid& g) const {
    if (kind == Kind::Full) return 0.45 * g.length; // stay clear of the seam
    return 0.95 * half_width;
}

TestSuite TestSuite::build(const Grid& g, const MaskGeometry& geom, std::uint64_t seed) {
    TestSuite suite;
    suite.grid = g;
    suite.geometry = geom;
    suite.seed = seed;

    const double R = geom.window_radius(g);
    const double cy = g.dim == 2 ? geom.cy : 0.0;
    const GridField window = fields::bump(g, geom.cx, cy, R);

    auto normalized = [](GridField u) {
        double peak = 0.0;
        for (double x : u.v) peak = std::max(peak, std::abs(x));
        if (peak > 0.0)
            for (auto& x : u.v) x /= peak;
        return u;
    };
    auto push = [&](std::string id, GridField u) {
        suite.fields.push_back({std::move(id), normalized(std::move(u))});
    };

    // 3 bump widths x 2 placements
    const double widths[3] = {0.55 * R, 0.35 * R, 0.18 * R};
    const double offsets[2] = {0.0, 0.30 * R};
    for (int w = 0; w < 3; ++w)
        for (int o = 0; o < 2; ++o)
            push("bump-w" + std::to_string(w + 1) + "-p" + std::to_string(o + 1),
                 fields::bump(g, geom.cx + offsets[o], cy, widths[w]));

    // 5 seeded band-limited fields, windowed into the mask
    for (int i = 0; i < 5; ++i)
        push("band-" + std::to_string(i + 1),
             fields::multiply(fields::band_limited(g, seed + static_cast<std::uint64_t>(i), 8), window));

    // 3 windowed oscillatory modes
    const int ks[3] = {2, 5, 9};
    for (int i = 0; i < 3; ++i)
        push("mode-" + std::to_string(ks[i]),
             fields::multiply(fields::mode(g, ks[i], g.dim == 2 ? ks[i] : 0), window));

    return suite;
}

namespace {

bool is_zero(const GridField& u) {
    for (double x : u.v)
        if (x != 0.0) return false;
    return true;
}

} // namespace

std::vector<InequalityRecord> poincare_sweep(const TestSuite& suite, const PhiFunction& phi,
                                             std::span<const double> s_grid) {
    std::vector<InequalityRecord> out;
    for (double s : s_grid) {
        if (!(s > 0.0 && s <= 1.0)) throw std::domain_error("poincare_sweep: s must lie in (0,1]");
        for (const auto& f : suite.fields) {
            if (is_zero(f.u)) continue; // 0/0 excluded
            InequalityRecord rec;
            rec.inequality_id = "poincare";
            rec.s = s;
            rec.field_id = f.id;
            rec.lhs = luxemburg_norm(f.u, phi);
            const double grad_norm = luxemburg_norm(riesz_gradient(f.u, s), phi);
            rec.rhs_no_constant = grad_norm / (1.0 - std::pow(2.0, -s));
            rec.ratio = rec.lhs / rec.rhs_no_constant;
            out.push_back(std::move(rec));
        }
    }
    return out;
}

InequalityRecord interpolation_check(const GridField& u, const std::string& field_id, double r,
                                     double s, double t, const PhiFunction& phi) {
    if (!(0.0 <= r && r <= s && s <= t && t <= 1.0))
        throw std::domain_error("interpolation_check: need 0 <= r <= s <= t <= 1");
    InequalityRecord rec;
    rec.inequality_id = "interpolation";
    rec.r = r;
    rec.s = s;
    rec.t = t;
    rec.field_id = field_id;
    rec.lhs = luxemburg_norm(riesz_gradient(u, s), phi);
    if (t == r) {
        rec.rhs_no_constant = rec.lhs; // degenerate collapse: all three orders coincide
    } else {
        const double er = (t - s) / (t - r), et = (s - r) / (t - r);
        const double nr = luxemburg_norm(riesz_gradient(u, r), phi);
        const double nt = luxemburg_norm(riesz_gradient(u, t), phi);
        rec.rhs_no_constant = std::pow(nr, er) * std::pow(nt, et);
    }
    rec.ratio = rec.rhs_no_constant > 0.0 ? rec.lhs / rec.rhs_no_constant : 0.0;
    return rec;
}

double spaces_decrease_shape1(double sigma, int d) {
    return (1.0 / (d - 1.0 + sigma)) * (1.0 + 1.0 / (1.0 - std::pow(2.0, -sigma)));
}

double spaces_decrease_shape2(double sigma) {
    return (1.0 / sigma) * (1.0 / (1.0 - std::pow(2.0, -sigma)));
}

InequalityRecord spaces_decrease_check(const GridField& u, const std::string& field_id, double sigma,
                                       double s, const PhiFunction& phi) {
    if (!(0.0 < sigma && sigma < s && s <= 1.0))
        throw std::domain_error("spaces_decrease_check: need 0 < sigma < s <= 1");
    InequalityRecord rec;
    rec.inequality_id = "spaces-decrease";
    rec.sigma = sigma;
    rec.s = s;
    rec.field_id = field_id;
    rec.lhs = luxemburg_norm(riesz_gradient(u, sigma), phi);
    rec.rhs_no_constant = luxemburg_norm(riesz_gradient(u, s), phi);
    rec.ratio = rec.rhs_no_constant > 0.0 ? rec.lhs / rec.rhs_no_constant : 0.0;
    return rec;
}

InequalityRecord sobolev_check(const GridField& u, const std::string& field_id, double s,
                               const PhiFunction& phi) {
    const int d = u.grid.dim;
    const double gamma = s / d;
    if (!(gamma > 0.0 && gamma < 1.0)) throw std::domain_error("sobolev_check: gamma = s/d outside (0,1)");
    const PhiFunction companion = build_sobolev_companion(phi, gamma);
    InequalityRecord rec;
    rec.inequality_id = "sobolev";
    rec.s = s;
    rec.field_id = field_id;
    rec.lhs = luxemburg_norm(u, companion);
    rec.rhs_no_constant = luxemburg_norm(riesz_gradient(u, s), phi);
    rec.ratio = rec.rhs_no_constant > 0.0 ? rec.lhs / rec.rhs_no_constant : 0.0;
    return rec;
}

std::vector<double> s_continuity_study(const GridField& u, double sigma,
                                       std::span<const double> s_sequence, const PhiFunction& phi) {
    if (!(0.0 <= sigma && sigma <= 1.0)) throw std::domain_error("s_continuity_study: sigma outside [0,1]");
    const auto d_sigma = riesz_gradient(u, sigma);
    std::vector<double> errs;
    errs.reserve(s_sequence.size());
    for (double sn : s_sequence) {
        if (!(0.0 <= sn && sn <= 1.0)) throw std::domain_error("s_continuity_study: s outside [0,1]");
        if (sn == sigma) {
            errs.push_back(0.0);
            continue;
        }
        errs.push_back(luxemburg_norm(fields::subtract(riesz_gradient(u, sn), d_sigma), phi));
    }
    return errs;
}

InequalityRecord interpolation_multiplier_boundedness(const GridField& v, const std::string& field_id,
                                                      double s, double sigma, const PhiFunction& phi) {
    InequalityRecord rec;
    rec.inequality_id = "multiplier";
    rec.s = s;
    rec.sigma = sigma;
    rec.field_id = field_id;
    rec.lhs = luxemburg_norm(interpolation_multiplier(v, s, sigma), phi);
    rec.rhs_no_constant = luxemburg_norm(v, phi);
    rec.ratio = rec.rhs_no_constant > 0.0 ? rec.lhs / rec.rhs_no_constant : 0.0;
    return rec;
}

} // namespace fso
