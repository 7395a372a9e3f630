#include "fso/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <numbers>

#include <json.hpp>

#include "fso/errors.hpp"
#include "fso/fft.hpp"
#include "fso/field_io.hpp"
#include "fso/fields.hpp"
#include "fso/orlicz.hpp"
#include "fso/spectral.hpp"

namespace fso::experiments {

using nlohmann::json;

// ---- formatting -------------------------------------------------------------

std::string format_double(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

void write_csv(const std::string& path, const std::vector<std::string>& header,
               const std::vector<std::vector<std::string>>& rows) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw config_error("cannot open '" + path + "' for writing");
    for (std::size_t i = 0; i < header.size(); ++i) f << (i ? "," : "") << header[i];
    f << "\n";
    for (const auto& row : rows) {
        for (std::size_t i = 0; i < row.size(); ++i) f << (i ? "," : "") << row[i];
        f << "\n";
    }
}

void write_inequality_csv(const std::string& path, const std::vector<InequalityRecord>& records) {
    std::vector<std::vector<std::string>> rows;
    rows.reserve(records.size());
    for (const auto& r : records)
        rows.push_back({r.inequality_id, format_double(r.r), format_double(r.s), format_double(r.t),
                        format_double(r.sigma), r.field_id, format_double(r.lhs),
                        format_double(r.rhs_no_constant), format_double(r.ratio),
                        format_double(r.baseline), r.pass ? "1" : "0"});
    write_csv(path, {"inequality_id", "r", "s", "t", "sigma", "field_id", "lhs", "rhs", "ratio",
                     "baseline", "pass"},
              rows);
}

// ---- baselines ----------------------------------------------------------------

Baselines Baselines::load(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw config_error("baselines file '" + path + "' not found (run with --capture-baselines first)");
    json j;
    f >> j;
    Baselines b;
    for (auto it = j.begin(); it != j.end(); ++it) b.values[it.key()] = it.value().get<double>();
    return b;
}

void Baselines::save(const std::string& path) const {
    json j;
    for (const auto& [k, v] : values) j[k] = v;
    std::ofstream f(path, std::ios::binary);
    if (!f) throw config_error("cannot open '" + path + "' for writing");
    f << j.dump(2) << "\n";
}

double Baselines::at(const std::string& key) const {
    const auto it = values.find(key);
    if (it == values.end()) throw config_error("baselines: missing key '" + key + "'");
    return it->second;
}

// ---- operator identity suite ---------------------------------------------------

namespace {

double rel_err(const GridField& a, const GridField& b) {
    const double nb = l2_norm(b);
    return nb > 0.0 ? l2_norm(fields::subtract(a, b)) / nb : l2_norm(a);
}

double rel_err(const VectorGridField& a, const VectorGridField& b) {
    const double nb = l2_norm(b);
    return nb > 0.0 ? l2_norm(fields::subtract(a, b)) / nb : l2_norm(a);
}

// Classical spectral gradient, written out directly against the convention
// (i xi, Nyquist row zeroed) as an independent endpoint reference.
VectorGridField classical_gradient(const GridField& u) {
    const Grid& g = u.grid;
    const auto spec = fft::forward(u);
    const double base = 2.0 * std::numbers::pi / g.length;
    const long long nyq = -static_cast<long long>(g.n) / 2;
    VectorGridField out(g);
    for (int c = 0; c < g.dim; ++c) {
        std::vector<fft::cplx> cs(spec.size());
        for (std::size_t i = 0; i < spec.size(); ++i) {
            const long long k = g.dim == 1 ? g.freq_index(i) : g.freq_index(c == 0 ? i / g.n : i % g.n);
            const double xit = k == nyq ? 0.0 : base * static_cast<double>(k);
            cs[i] = spec[i] * fft::cplx(0.0, xit);
        }
        out.comp[c] = fft::inverse_real(g, std::move(cs));
    }
    return out;
}

GridField riesz_dot(const VectorGridField& W) {
    GridField acc(W.grid);
    for (int c = 0; c < W.dim(); ++c) {
        const auto r = riesz_transform(W.comp[c]);
        for (std::size_t i = 0; i < acc.size(); ++i) acc[i] += r.comp[c][i];
    }
    return acc;
}

VectorGridField potential_componentwise(const VectorGridField& W, double s) {
    VectorGridField out(W.grid);
    for (int c = 0; c < W.dim(); ++c)
        out.comp[c] = riesz_potential(W.comp[c], s, ZeroModePolicy::Zero);
    return out;
}

} // namespace

std::vector<IdentityRecord> run_identity_suite(const Grid& g, std::uint64_t seed) {
    std::vector<IdentityRecord> recs;
    auto add = [&](std::string id, double s, double err, double tol) {
        recs.push_back({std::move(id), s, err, tol, err <= tol});
    };

    const GridField u = random_mean_zero_field(g, seed);
    const GridField v = random_mean_zero_field(g, seed + 1);
    VectorGridField psi(g);
    for (int c = 0; c < g.dim; ++c) psi.comp[c] = random_mean_zero_field(g, seed + 7 + c);

    const double s_set[5] = {0.0, 0.25, 0.5, 0.75, 1.0};

    // Eq. (1): -D^s . D^s u = (-also)^s u; at s = 0 the composition reduces to
    // the identity on mean-zero resolved fields.
    for (double s : s_set) {
        const auto grad = riesz_gradient(u, s);
        GridField lhs = riesz_divergence(grad, s);
        for (auto& x : lhs.v) x = -x;
        const GridField rhs = s > 0.0 ? frac_laplacian(u, s) : u;
        add("frac-laplacian-composition", s, rel_err(lhs, rhs), 1e-12);
    }

    // Fundamental theorem of calculus: I_s(R . D^s u) = u (s = 0 becomes the
    // Riesz involution R.R = -Id).
    for (double s : {0.25, 0.5, 0.75, 1.0}) {
        const auto rd = riesz_dot(riesz_gradient(u, s));
        add("ftc", s, rel_err(riesz_potential(rd, s, ZeroModePolicy::Zero), u), 1e-12);
    }
    {
        GridField rr = riesz_dot(riesz_transform(u));
        for (auto& x : rr.v) x = -x;
        add("riesz-involution", 0.0, rel_err(rr, u), 1e-12);
    }

    // Semigroup D^sigma u = I_{s-sigma}(D^s u).
    const double pairs[4][2] = {{0.25, 0.5}, {0.5, 1.0}, {0.25, 0.75}, {0.75, 1.0}};
    for (const auto& pr : pairs) {
        const double sigma = pr[0], s = pr[1];
        const auto smoothed = potential_componentwise(riesz_gradient(u, s), s - sigma);
        add("semigroup-gradient", s, rel_err(smoothed, riesz_gradient(u, sigma)), 1e-12);
    }

    // Potential semigroup I_a I_b = I_{a+b}.
    for (const auto& ab : {std::pair{0.5, 0.5}, std::pair{0.3, 0.9}}) {
        const auto one = riesz_potential(riesz_potential(u, ab.first, ZeroModePolicy::Zero), ab.second,
                                         ZeroModePolicy::Zero);
        const auto both = riesz_potential(u, ab.first + ab.second, ZeroModePolicy::Zero);
        add("semigroup-potential", ab.first + ab.second, rel_err(one, both), 1e-12);
    }

    // Endpoints: D^1 = classical gradient, D^0 = -R.
    add("endpoint-gradient", 1.0, rel_err(riesz_gradient(u, 1.0), classical_gradient(u)), 1e-13);
    {
        auto mr = riesz_transform(u);
        for (auto& compf : mr.comp)
            for (auto& x : compf.v) x = -x;
        add("endpoint-transform", 0.0, rel_err(riesz_gradient(u, 0.0), mr), 1e-13);
    }

    // Discrete integration by parts.
    for (double s : {0.25, 0.75}) {
        const double lhs = inner(riesz_gradient(u, s), psi);
        const double rhs = inner(u, riesz_divergence(psi, s));
        const double scale = l2_norm(u) * l2_norm(psi) + 1e-300;
        add("integration-by-parts", s, std::abs(lhs + rhs) / scale, 1e-12);
    }

    // Linearity of the multiplier application.
    {
        const double a = 0.7, b = -1.3;
        GridField mix(g);
        for (std::size_t i = 0; i < mix.size(); ++i) mix[i] = a * u[i] + b * v[i];
        const auto left = riesz_gradient(mix, 0.5);
        auto right = riesz_gradient(u, 0.5);
        const auto rv = riesz_gradient(v, 0.5);
        for (int c = 0; c < g.dim; ++c)
            for (std::size_t i = 0; i < mix.size(); ++i)
                right.comp[c][i] = a * right.comp[c][i] + b * rv.comp[c][i];
        add("linearity", 0.5, rel_err(left, right), 1e-13);
    }

    // Reality (Hermitian symmetry) across symbol kinds.
    {
        double worst = 0.0;
        worst = std::max(worst, multiplier_imag_residual(SpectralMultiplier::riesz_gradient(0.5), u, 0));
        worst = std::max(worst, multiplier_imag_residual(SpectralMultiplier::riesz_transform(), u, g.dim - 1));
        worst = std::max(worst, multiplier_imag_residual(SpectralMultiplier::riesz_potential(0.7), u, 0));
        worst = std::max(worst, multiplier_imag_residual(SpectralMultiplier::frac_laplacian(0.6), u, 0));
        worst = std::max(worst, multiplier_imag_residual(SpectralMultiplier::interpolation_symbol(0.8, 0.3), u, 0));
        add("reality", 0.0, worst, 1e-13);
    }

    // Normalizing constant mu(d,s).
    add("mu-at-one", 1.0, std::abs(mu_constant(g.dim, 1.0)), 1e-15);
    add("mu-one-dim-zero", 0.0, std::abs(mu_constant(1, 0.0) - 1.0 / std::numbers::pi), 1e-12);
    {
        double sup = 0.0;
        for (int i = -100; i <= 100; ++i) sup = std::max(sup, mu_constant(2, i / 100.0));
        add("mu-sup-finite", 0.0, std::isfinite(sup) ? 0.0 : 1.0, 0.5);
    }

    // 2D: divergence annihilates curl-type fields.
    if (g.dim == 2) {
        const auto grad_psi = classical_gradient(random_mean_zero_field(g, seed + 11));
        VectorGridField curl(g);
        curl.comp[0] = grad_psi.comp[1];
        curl.comp[1] = grad_psi.comp[0];
        for (auto& x : curl.comp[0].v) x = -x;
        const auto div = riesz_divergence(curl, 0.5);
        add("divergence-of-curl", 0.5, l2_norm(div) / std::max(l2_norm(curl), 1e-300), 1e-12);
    }

    return recs;
}

// ---- inequality sweep -----------------------------------------------------------

SweepOutput run_inequality_sweep(const TestSuite& suite, const PhiFunction& phi,
                                 std::span<const double> s_grid) {
    SweepOutput out;
    const bool power_family = phi.family() == PhiFunction::Family::Power;
    const auto gw = phi.growth();
    const int d = suite.grid.dim;

    const double interp_triples[4][3] = {
        {0.0, 0.5, 1.0}, {0.25, 0.5, 0.75}, {0.0, 0.25, 0.5}, {0.5, 0.75, 1.0}};
    const double decrease_pairs[5][2] = {{0.1, 0.9}, {0.25, 0.75}, {0.4, 0.8}, {0.3, 0.5}, {0.6, 0.9}};
    const double mult_pairs[6][2] = {{0.0, 0.0}, {0.5, 0.0}, {0.5, 0.5},
                                     {1.0, 0.5}, {1.0, 1.0}, {0.75, 0.25}};
    // gamma = s/d must stay below 1/q for the companion to exist
    const double sob_s[2] = {0.5 * d / gw.q, 0.8 * d / gw.q};

    std::vector<SuiteField> tens;
    if (!power_family) {
        for (const auto& f : suite.fields) tens.push_back({f.id + "@x10", fields::scale(f.u, 10.0)});
    }

    auto all_fields = [&]() {
        std::vector<const SuiteField*> v;
        for (const auto& f : suite.fields) v.push_back(&f);
        for (const auto& f : tens) v.push_back(&f);
        return v;
    }();

    for (const SuiteField* fp : all_fields) {
        const auto& f = *fp;
        // distinct fractional orders used for this field, computed once each
        std::map<double, double> grad_norm;
        auto dnorm = [&](double s) {
            auto it = grad_norm.find(s);
            if (it != grad_norm.end()) return it->second;
            const double n = luxemburg_norm(riesz_gradient(f.u, s), phi);
            grad_norm.emplace(s, n);
            return n;
        };
        const double unorm = luxemburg_norm(f.u, phi);
        if (unorm == 0.0) continue;

        for (double s : s_grid) {
            InequalityRecord rec;
            rec.inequality_id = "poincare";
            rec.s = s;
            rec.field_id = f.id;
            rec.lhs = unorm;
            rec.rhs_no_constant = dnorm(s) / (1.0 - std::pow(2.0, -s));
            rec.ratio = rec.lhs / rec.rhs_no_constant;
            out.records.push_back(std::move(rec));
        }
        for (const auto& tr : interp_triples) {
            InequalityRecord rec;
            rec.inequality_id = "interpolation";
            rec.r = tr[0];
            rec.s = tr[1];
            rec.t = tr[2];
            rec.field_id = f.id;
            rec.lhs = dnorm(tr[1]);
            const double er = (tr[2] - tr[1]) / (tr[2] - tr[0]), et = (tr[1] - tr[0]) / (tr[2] - tr[0]);
            rec.rhs_no_constant = std::pow(dnorm(tr[0]), er) * std::pow(dnorm(tr[2]), et);
            rec.ratio = rec.lhs / rec.rhs_no_constant;
            out.records.push_back(std::move(rec));
        }
        for (const auto& pr : decrease_pairs) {
            InequalityRecord rec;
            rec.inequality_id = "spaces-decrease";
            rec.sigma = pr[0];
            rec.s = pr[1];
            rec.field_id = f.id;
            rec.lhs = dnorm(pr[0]);
            rec.rhs_no_constant = dnorm(pr[1]);
            rec.ratio = rec.lhs / rec.rhs_no_constant;
            out.records.push_back(std::move(rec));
        }
        for (double s : sob_s) {
            auto rec = sobolev_check(f.u, f.id, s, phi);
            out.records.push_back(std::move(rec));
        }
        for (const auto& pr : mult_pairs) {
            auto rec = interpolation_multiplier_boundedness(f.u, f.id, pr[0], pr[1], phi);
            out.records.push_back(std::move(rec));
        }
    }

    // s-continuity on two representative members (assertion is absolute, not
    // baseline-driven): e_n monotone and the last error <= 1e-3 ||D^sigma u||.
    {
        const double sigma = 0.5;
        std::vector<double> sn;
        for (int n = 1; n <= 11; ++n) sn.push_back(sigma + std::pow(2.0, -n));
        for (const char* id : {"bump-w2-p1", "band-1"}) {
            const auto it = std::find_if(suite.fields.begin(), suite.fields.end(),
                                         [&](const SuiteField& f) { return f.id == id; });
            if (it == suite.fields.end()) continue;
            const auto errs = s_continuity_study(it->u, sigma, sn, phi);
            const double dsnorm = luxemburg_norm(riesz_gradient(it->u, sigma), phi);
            for (std::size_t n = 0; n < errs.size(); ++n) {
                InequalityRecord rec;
                rec.inequality_id = "s-continuity";
                rec.s = sn[n];
                rec.sigma = sigma;
                rec.field_id = it->id;
                rec.lhs = errs[n];
                rec.rhs_no_constant = dsnorm;
                rec.ratio = errs[n] / dsnorm;
                rec.baseline = n + 1 == errs.size() ? 1e-3 : 0.0;
                rec.pass = (n == 0 || errs[n] <= errs[n - 1] * (1.0 + 1e-9)) &&
                           (n + 1 < errs.size() || errs[n] <= 1e-3 * dsnorm);
                out.records.push_back(std::move(rec));
            }
        }
    }

    // suite maxima per inequality + fitted shape constants for spaces-decrease
    double c1_fit = 0.0, c2_fit = 0.0;
    for (const auto& r : out.records) {
        if (r.inequality_id == "s-continuity") continue;
        auto& m = out.maxima[r.inequality_id];
        m = std::max(m, r.ratio);
        if (r.inequality_id == "spaces-decrease") {
            c1_fit = std::max(c1_fit, 0.5 * r.ratio / spaces_decrease_shape1(r.sigma, d));
            c2_fit = std::max(c2_fit, 0.5 * r.ratio / spaces_decrease_shape2(r.sigma));
        }
    }
    out.spaces_c1 = c1_fit;
    out.spaces_c2 = c2_fit;
    return out;
}

bool apply_baselines(SweepOutput& out, const Baselines& base, int grid_dim) {
    bool ok = true;
    for (auto& r : out.records) {
        if (r.inequality_id == "s-continuity") {
            ok = ok && r.pass;
            continue;
        }
        if (r.inequality_id == "spaces-decrease") {
            r.baseline = base.at("spaces_c1") * spaces_decrease_shape1(r.sigma, grid_dim) +
                         base.at("spaces_c2") * spaces_decrease_shape2(r.sigma);
        } else {
            r.baseline = base.at(r.inequality_id);
        }
        r.pass = r.ratio <= r.baseline * 1.05;
        ok = ok && r.pass;
    }
    return ok;
}

// ---- manufactured problems -------------------------------------------------------

ManufacturedProblem make_eigenmode_problem(const Grid& g, const PhiFunction& phi, double s) {
    ManufacturedProblem mp;
    GridField ustar = fields::mode(g, 1);
    mp.problem.s = s;
    mp.problem.phi = phi;
    mp.problem.mask = DomainMask::full(g);
    mp.problem.rhs = DualPairRHS{GridField(g), flux(riesz_gradient(ustar, s), phi), s};
    mp.reference = std::move(ustar);
    mp.reference_is_exact = true;
    return mp;
}

ManufacturedProblem make_manufactured_problem(const Grid& g, const PhiFunction& phi, double s,
                                              const DomainMask& mask) {
    ManufacturedProblem mp;
    GridField ustar;
    if (mask.is_full()) {
        ustar = fields::mexican_hat(g, 0.0, 0.0, 0.12 * g.length);
        const double m = mean(ustar);
        for (auto& x : ustar.v) x -= m; // solver iterates live in the mean-zero sector
    } else {
        // center of mass of the mask cells
        double cx = 0.0, cy = 0.0;
        std::size_t cnt = 0;
        for (std::size_t i = 0; i < mask.inside.size(); ++i)
            if (mask.inside[i]) {
                cx += g.coord(g.dim == 1 ? i : i / g.n);
                if (g.dim == 2) cy += g.coord(i % g.n);
                ++cnt;
            }
        cx /= static_cast<double>(cnt);
        cy /= static_cast<double>(cnt);
        // width safely inside the mask
        double radius = 1e300;
        for (std::size_t i = 0; i < mask.inside.size(); ++i)
            if (!mask.inside[i]) {
                const double x = g.coord(g.dim == 1 ? i : i / g.n);
                const double y = g.dim == 2 ? g.coord(i % g.n) : 0.0;
                radius = std::min(radius, std::hypot(x - cx, y - cy));
            }
        ustar = fields::bump(g, cx, cy, 0.8 * radius);
    }
    mp.problem.s = s;
    mp.problem.phi = phi;
    mp.problem.mask = mask;
    mp.problem.rhs = DualPairRHS{GridField(g), flux(riesz_gradient(ustar, s), phi), s};
    mp.reference = std::move(ustar);
    mp.reference_is_exact = mask.is_full();
    return mp;
}

// ---- experiment runners ------------------------------------------------------------

namespace {

namespace fs = std::filesystem;

void write_summary(const std::string& path, const json& j) {
    std::ofstream f(path, std::ios::binary);
    f << j.dump(2) << "\n";
}

SamplingPlan default_plan(const Grid& g, const RunConfig& cfg) {
    SamplingPlan plan;
    for (int i = 0; i < 8; ++i) plan.x_samples.push_back(g.size() * i / 8);
    plan.inc_p = cfg.audit_inc_p;
    plan.dec_q = cfg.audit_dec_q;
    // (A1) spot-check balls: three short intervals / small disks, |B| <= 1
    const double rb = std::min(0.45, g.length / 16.0);
    const double centers[3] = {cfg.mask_cx, cfg.mask_cx - 0.25 * g.length, cfg.mask_cx + 0.25 * g.length};
    for (double c : centers) {
        SampleBall ball;
        for (std::size_t i = 0; i < g.size(); ++i) {
            const double x = g.coord(g.dim == 1 ? i : i / g.n);
            const double y = g.dim == 2 ? g.coord(i % g.n) : 0.0;
            if (std::hypot(x - c, y) <= rb) ball.cells.push_back(i);
        }
        ball.measure = g.dim == 1 ? 2.0 * rb : std::numbers::pi * rb * rb;
        if (!ball.cells.empty()) plan.balls.push_back(std::move(ball));
    }
    return plan;
}

PhiCondition condition_from_name(const std::string& name) {
    if (name == "inc-p") return PhiCondition::IncP;
    if (name == "dec-q") return PhiCondition::DecQ;
    if (name == "a0") return PhiCondition::A0;
    if (name == "a1") return PhiCondition::A1;
    if (name == "a2") return PhiCondition::A2;
    if (name == "hypothesis-on-a") return PhiCondition::HypothesisOnA;
    if (name == "pointwise-bounds") return PhiCondition::PointwiseBounds;
    throw config_error("phi-audit: unknown condition '" + name + "'");
}

RunResult run_phi_audit(const RunConfig& cfg) {
    const Grid g = cfg.make_grid();
    const PhiFunction phi = cfg.make_phi();
    auto plan = default_plan(g, cfg);

    std::vector<std::string> names = cfg.conditions;
    if (names.empty()) names = {"inc-p", "dec-q", "a0", "hypothesis-on-a", "pointwise-bounds"};

    std::vector<std::vector<std::string>> rows;
    bool all_pass = true;
    std::string failures;
    for (const auto& name : names) {
        const auto rep = check_condition(phi, condition_from_name(name), plan);
        all_pass = all_pass && rep.pass;
        rows.push_back({to_string(rep.id), rep.pass ? "1" : "0", rep.sampled_only ? "1" : "0",
                        format_double(rep.beta),
                        rep.witness ? std::to_string(rep.witness->x) : "",
                        rep.witness ? format_double(rep.witness->ell) : "",
                        rep.witness ? format_double(rep.witness->magnitude) : "",
                        std::to_string(rep.samples_used)});
        if (!rep.pass && rep.witness)
            failures += "  " + to_string(rep.id) + " failed: witness x=" + std::to_string(rep.witness->x) +
                        " ell=" + format_double(rep.witness->ell) +
                        " violation=" + format_double(rep.witness->magnitude) + "\n";
    }
    write_csv(fs::path(cfg.out_dir) / "records.csv",
              {"condition", "pass", "sampled", "beta", "witness_x", "witness_ell", "witness_magnitude",
               "samples"},
              rows);
    json j{{"kind", "phi-audit"}, {"family", cfg.phi_family}, {"pass", all_pass}};
    write_summary(fs::path(cfg.out_dir) / "summary.json", j);
    return {all_pass ? 0 : 1, all_pass ? "phi-audit: all conditions pass\n" : "phi-audit failures:\n" + failures};
}

RunResult run_ops_verify(const RunConfig& cfg) {
    const Grid g = cfg.make_grid();
    const auto recs = run_identity_suite(g, cfg.seed);
    std::vector<std::vector<std::string>> rows;
    bool ok = true;
    std::string failures;
    for (const auto& r : recs) {
        rows.push_back({r.id, format_double(r.s), format_double(r.error), format_double(r.tol),
                        r.pass ? "1" : "0"});
        if (!r.pass) {
            ok = false;
            failures += "  " + r.id + " s=" + format_double(r.s) + " error=" + format_double(r.error) + "\n";
        }
    }
    write_csv(fs::path(cfg.out_dir) / "records.csv", {"identity", "s", "error", "tol", "pass"}, rows);
    json j{{"kind", "ops-verify"}, {"n", cfg.n}, {"dim", cfg.dim}, {"pass", ok}};
    write_summary(fs::path(cfg.out_dir) / "summary.json", j);
    return {ok ? 0 : 1, ok ? "ops-verify: all identities hold\n" : "ops-verify failures:\n" + failures};
}

RunResult run_ineq_sweep(const RunConfig& cfg) {
    const Grid g = cfg.make_grid();
    const PhiFunction phi = cfg.make_phi();
    const auto geom = cfg.make_mask_geometry();
    const auto suite = TestSuite::build(g, geom, cfg.seed);
    std::vector<double> s_grid = cfg.s_values;
    if (s_grid.empty()) s_grid = {0.1, 0.3, 0.5, 0.7, 0.9, 1.0};

    auto out = run_inequality_sweep(suite, phi, s_grid);

    // dual-bound sequence: fluxes of gradients of the band-limited members
    std::vector<VectorGridField> xi_seq;
    for (const auto& f : suite.fields)
        if (f.id.rfind("band-", 0) == 0) xi_seq.push_back(riesz_gradient(f.u, 0.5));
    const auto dual_rep = dual_bound_checks(xi_seq, phi);

    // Lebesgue comparison diagnostics and norm-modular records on the suite
    const auto mask = geom.to_mask(g);
    double leb_p = 0.0, leb_q = 0.0;
    json norm_modular_records = json::array();
    bool norm_modular_ok = true;
    for (const auto& f : suite.fields) {
        const auto rep = lebesgue_comparison_report(f.u, phi, mask);
        if (!rep.finite) throw std::runtime_error("lebesgue comparison produced non-finite norms");
        leb_p = std::max(leb_p, rep.ratio_p_over_a);
        leb_q = std::max(leb_q, rep.ratio_a_over_q);
        const auto nm = verify_norm_modular(f.u, phi);
        norm_modular_ok = norm_modular_ok && nm.pass;
        norm_modular_records.push_back(json{{"phi", phi.name()},
                                            {"field", f.id},
                                            {"J", nm.J},
                                            {"norm", nm.norm},
                                            {"bounds", {nm.lower, nm.upper, nm.J_plus_one}},
                                            {"pass", nm.pass}});
    }

    const std::string bpath =
        cfg.baselines_path.empty() ? (fs::path(cfg.out_dir) / "baselines.json").string() : cfg.baselines_path;

    int status = 0;
    std::string msg;
    if (cfg.capture_baselines) {
        Baselines b;
        b.values = out.maxima;
        b.values["spaces_c1"] = out.spaces_c1;
        b.values["spaces_c2"] = out.spaces_c2;
        b.values["dual_bound"] = dual_rep.max_dual_norm;
        b.values["lebesgue_p"] = leb_p;
        b.values["lebesgue_q"] = leb_q;
        b.values.erase("spaces-decrease"); // covered by the shaped constants
        b.save(bpath);
        msg = "ineq-sweep: baselines captured to " + bpath + "\n";
        if (!dual_rep.pointwise_pass) { status = 1; msg += "dual-bound pointwise check failed\n"; }
    } else {
        const auto base = Baselines::load(bpath);
        const bool sweep_ok = apply_baselines(out, base, g.dim);
        const bool dual_ok = dual_rep.pointwise_pass &&
                             dual_rep.max_dual_norm <= base.at("dual_bound") * 1.05;
        const bool leb_ok = leb_p <= base.at("lebesgue_p") * 1.05 && leb_q <= base.at("lebesgue_q") * 1.05;
        status = (sweep_ok && dual_ok && leb_ok && norm_modular_ok) ? 0 : 1;
        if (status) {
            msg = "ineq-sweep failures:\n";
            for (const auto& r : out.records)
                if (!r.pass)
                    msg += "  " + r.inequality_id + " field=" + r.field_id + " ratio=" +
                           format_double(r.ratio) + " baseline=" + format_double(r.baseline) + "\n";
            if (!dual_ok) msg += "  dual-bound check failed\n";
            if (!leb_ok) msg += "  lebesgue comparison drifted\n";
        } else {
            msg = "ineq-sweep: all ratio assertions pass\n";
        }
    }

    write_inequality_csv(fs::path(cfg.out_dir) / "records.csv", out.records);
    json j{{"kind", "ineq-sweep"},
           {"pass", status == 0},
           {"records", out.records.size()},
           {"maxima", out.maxima},
           {"spaces_c1", out.spaces_c1},
           {"spaces_c2", out.spaces_c2},
           {"dual_bound_max", dual_rep.max_dual_norm},
           {"lebesgue_p", leb_p},
           {"lebesgue_q", leb_q},
           {"norm_modular", norm_modular_records}};
    write_summary(fs::path(cfg.out_dir) / "summary.json", j);
    return {status, msg};
}

RunResult run_solve(const RunConfig& cfg) {
    const Grid g = cfg.make_grid();
    const PhiFunction phi = cfg.make_phi();
    const auto mask = cfg.make_mask();

    ManufacturedProblem mp;
    if (cfg.rhs_kind == "eigenmode") {
        mp = make_eigenmode_problem(g, phi, cfg.solve_s);
    } else if (cfg.rhs_kind == "manufactured") {
        mp = make_manufactured_problem(g, phi, cfg.solve_s, mask);
    } else if (cfg.rhs_kind == "files") {
        mp.problem.s = cfg.solve_s;
        mp.problem.phi = phi;
        mp.problem.mask = mask;
        GridField f = cfg.f_file.empty() ? GridField(g) : read_scalar_field(cfg.f_file);
        if (cfg.fvec_file.empty()) throw config_error("solve: rhs=files requires fvec_file");
        mp.problem.rhs = DualPairRHS{std::move(f), read_vector_field(cfg.fvec_file), cfg.solve_s};
        mp.reference = GridField(g);
        mp.reference_is_exact = false;
    } else {
        throw config_error("solve: unknown rhs kind '" + cfg.rhs_kind + "'");
    }

    SolverConfig scfg;
    scfg.max_iter = cfg.max_iter;
    scfg.energy_tol = cfg.energy_tol;
    scfg.residual_tol = cfg.residual_tol;
    auto [u, rep] = solve(mp.problem, scfg);

    double recovery = 0.0;
    if (mp.reference_is_exact) {
        const double nref = l2_norm(mp.reference);
        recovery = l2_norm(fields::subtract(u, mp.reference)) / (nref > 0.0 ? nref : 1.0);
    }

    write_field(fs::path(cfg.out_dir) / cfg.out_field, u);
    std::vector<std::vector<std::string>> rows;
    for (std::size_t i = 0; i < rep.energy_history.size(); ++i)
        rows.push_back({std::to_string(i), format_double(rep.energy_history[i])});
    write_csv(fs::path(cfg.out_dir) / "records.csv", {"iteration", "energy"}, rows);

    const bool ok = rep.converged && (!mp.reference_is_exact || recovery <= cfg.recovery_tol);
    json j{{"kind", "solve"},
           {"rhs", cfg.rhs_kind},
           {"s", cfg.solve_s},
           {"converged", rep.converged},
           {"iterations", rep.iterations},
           {"final_energy", rep.final_energy},
           {"final_residual", rep.final_residual},
           {"norm_u_la", rep.norm_u_la},
           {"norm_dsu_la", rep.norm_dsu_la},
           {"recovery_error", recovery},
           {"pass", ok}};
    write_summary(fs::path(cfg.out_dir) / "summary.json", j);
    return {ok ? 0 : 1,
            "solve: " + rep.stop_reason + ", iterations=" + std::to_string(rep.iterations) +
                ", residual=" + format_double(rep.final_residual) +
                (mp.reference_is_exact ? ", recovery=" + format_double(recovery) : "") + "\n"};
}

RunResult run_s_dependence(const RunConfig& cfg) {
    const Grid g = cfg.make_grid();
    const PhiFunction phi = cfg.make_phi();
    const auto mask = cfg.make_mask();

    std::vector<double> s_values = cfg.s_values;
    if (s_values.empty())
        for (int n = 1; n <= 6; ++n) s_values.push_back(cfg.sigma + std::pow(2.0, -n));

    // manufactured limit problem concentrated near |xi| = 1, where the
    // Riesz-gradient symbol is s-independent; the s-sensitivity enters
    // through the harmonic content the nonlinearity generates
    const int k0 = std::max(1, static_cast<int>(std::llround(g.length / (2.0 * std::numbers::pi))));
    GridField ustar = fields::mode(g, k0);
    if (!mask.is_full()) {
        ustar = fields::bump(g, cfg.mask_cx, cfg.mask_cy, 0.6 * cfg.mask_half_width);
    } else {
        ustar = fields::add(std::move(ustar), fields::mode(g, 2 * k0), 0.05);
    }
    mask.project(ustar);
    const VectorGridField f_limit = flux(riesz_gradient(ustar, cfg.sigma), phi);

    // f_n -> f with a small, decaying modulation
    std::vector<VectorGridField> f_values;
    const GridField wobble = fields::mode(g, 2 * k0);
    for (std::size_t n = 0; n < s_values.size(); ++n) {
        VectorGridField fn = f_limit;
        const double amp = 0.01 * std::pow(2.0, -static_cast<double>(n + 1));
        for (int c = 0; c < fn.dim(); ++c)
            for (std::size_t i = 0; i < fn.size(); ++i)
                fn.comp[c][i] *= 1.0 + amp * wobble[i];
        f_values.push_back(std::move(fn));
    }

    SolverConfig scfg;
    scfg.max_iter = cfg.max_iter;
    scfg.energy_tol = cfg.energy_tol;
    scfg.residual_tol = cfg.residual_tol;

    DependenceReport rep;
    bool aborted = false;
    std::string abort_reason;
    try {
        rep = continuous_dependence_experiment(cfg.sigma, s_values, f_values, f_limit, phi, mask, scfg);
    } catch (const experiment_aborted& e) {
        rep = e.partial;
        aborted = true;
        abort_reason = e.what();
    }

    std::vector<std::vector<std::string>> rows;
    double coercivity = 0.0;
    for (const auto& r : rep.rows) {
        rows.push_back({std::to_string(r.n), format_double(r.s_n), format_double(r.e_n),
                        format_double(r.w_max), std::to_string(r.iterations), format_double(r.energy)});
        coercivity = std::max(coercivity, r.coercivity_ratio);
    }
    write_csv(fs::path(cfg.out_dir) / "records.csv", {"n", "s_n", "e_n", "w_n_max", "iterations", "energy"},
              rows);

    bool ok = !aborted && rep.e_strictly_decreasing && rep.w_nonincreasing &&
              rep.e_last_rel <= cfg.dep_eps;
    // coercivity proxy ||D^{s_n} u_n|| <= C (||f_n||_{A'} + 1): captured as a
    // baseline constant and asserted on later runs when a baselines file exists
    const std::string bpath =
        cfg.baselines_path.empty() ? (fs::path(cfg.out_dir) / "baselines.json").string() : cfg.baselines_path;
    if (cfg.capture_baselines && !aborted) {
        Baselines b;
        if (fs::exists(bpath)) b = Baselines::load(bpath);
        b.values["dependence_eps"] = rep.e_last_rel;
        b.values["coercivity"] = coercivity;
        b.save(bpath);
    } else if (!cfg.capture_baselines && fs::exists(bpath)) {
        const auto b = Baselines::load(bpath);
        if (b.has("coercivity") && coercivity > b.at("coercivity") * 1.05) ok = false;
    }
    json j{{"kind", "s-dependence"},
           {"sigma", cfg.sigma},
           {"aborted", aborted},
           {"e_strictly_decreasing", rep.e_strictly_decreasing},
           {"w_nonincreasing", rep.w_nonincreasing},
           {"e_last_rel", rep.e_last_rel},
           {"norm_u_sigma", rep.norm_u_sigma},
           {"dep_eps", cfg.dep_eps},
           {"coercivity_max", coercivity},
           {"pass", ok}};
    write_summary(fs::path(cfg.out_dir) / "summary.json", j);

    std::string msg = aborted ? "s-dependence aborted: " + abort_reason + "\n"
                              : "s-dependence: e_last_rel=" + format_double(rep.e_last_rel) +
                                    (ok ? " (pass)\n" : " (FAIL)\n");
    return {ok ? 0 : 1, msg};
}

} // namespace

RunResult run(const RunConfig& cfg) {
    std::filesystem::create_directories(cfg.out_dir);
    if (cfg.kind == "phi-audit") return run_phi_audit(cfg);
    if (cfg.kind == "ops-verify") return run_ops_verify(cfg);
    if (cfg.kind == "ineq-sweep") return run_ineq_sweep(cfg);
    if (cfg.kind == "solve") return run_solve(cfg);
    if (cfg.kind == "s-dependence") return run_s_dependence(cfg);
    throw config_error("run: unknown experiment kind '" + cfg.kind + "'");
}

} // namespace fso::experiments
