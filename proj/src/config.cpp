#include "fso/config.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>

#include "fso/errors.hpp"
#include "fso/field_io.hpp"

namespace fso {

namespace {

std::string trim(const std::string& s) {
    const auto a = s.find_first_not_of(" \t\r");
    if (a == std::string::npos) return "";
    const auto b = s.find_last_not_of(" \t\r");
    return s.substr(a, b - a + 1);
}

double to_double(const std::string& key, const std::string& v) {
    try {
        std::size_t pos = 0;
        const double x = std::stod(v, &pos);
        if (pos != v.size()) throw std::invalid_argument(v);
        return x;
    } catch (const std::exception&) {
        throw config_error("config: key '" + key + "' expects a number, got '" + v + "'");
    }
}

std::uint64_t to_u64(const std::string& key, const std::string& v) {
    try {
        return std::stoull(v);
    } catch (const std::exception&) {
        throw config_error("config: key '" + key + "' expects an integer, got '" + v + "'");
    }
}

} // namespace

std::map<std::string, std::map<std::string, std::string>> parse_ini(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw config_error("cannot open config file '" + path + "'");
    std::map<std::string, std::map<std::string, std::string>> out;
    std::string line, section;
    std::size_t lineno = 0;
    while (std::getline(f, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        if (line.front() == '[') {
            if (line.back() != ']')
                throw config_error("config line " + std::to_string(lineno) + ": malformed section header");
            section = trim(line.substr(1, line.size() - 2));
            out[section];
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw config_error("config line " + std::to_string(lineno) + ": expected key = value");
        const std::string key = trim(line.substr(0, eq));
        const std::string val = trim(line.substr(eq + 1));
        if (key.empty()) throw config_error("config line " + std::to_string(lineno) + ": empty key");
        out[section][key] = val;
    }
    return out;
}

std::vector<double> parse_double_list(const std::string& text) {
    std::vector<double> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        item = trim(item);
        if (!item.empty()) out.push_back(to_double("list", item));
    }
    return out;
}

RunConfig RunConfig::from_file(const std::string& path) {
    const auto ini = parse_ini(path);
    RunConfig cfg;

    auto get = [&](const std::string& sec, const std::string& key) -> std::optional<std::string> {
        const auto s = ini.find(sec);
        if (s == ini.end()) return std::nullopt;
        const auto k = s->second.find(key);
        if (k == s->second.end()) return std::nullopt;
        return k->second;
    };
    auto num = [&](const std::string& sec, const std::string& key, double& dst) {
        if (auto v = get(sec, key)) dst = to_double(key, *v);
    };
    auto str = [&](const std::string& sec, const std::string& key, std::string& dst) {
        if (auto v = get(sec, key)) dst = *v;
    };

    if (auto v = get("grid", "dimension")) cfg.dim = static_cast<int>(to_double("dimension", *v));
    if (auto v = get("grid", "n")) cfg.n = static_cast<std::size_t>(to_u64("n", *v));
    num("grid", "length", cfg.length);

    str("phi", "family", cfg.phi_family);
    num("phi", "p", cfg.p);
    num("phi", "q", cfg.q);
    num("phi", "coeff", cfg.coeff);
    num("phi", "alpha", cfg.alpha);
    num("phi", "alpha_amp", cfg.alpha_amp);
    num("phi", "p_base", cfg.p_base);
    num("phi", "p_amp", cfg.p_amp);
    str("phi", "alpha_file", cfg.alpha_file);
    str("phi", "exponent_file", cfg.exponent_file);

    str("mask", "kind", cfg.mask_kind);
    num("mask", "center_x", cfg.mask_cx);
    num("mask", "center_y", cfg.mask_cy);
    num("mask", "half_width", cfg.mask_half_width);
    str("mask", "file", cfg.mask_file);

    str("experiment", "kind", cfg.kind);
    if (auto v = get("experiment", "s_values")) cfg.s_values = parse_double_list(*v);
    num("experiment", "sigma", cfg.sigma);
    if (auto v = get("experiment", "seed")) cfg.seed = to_u64("seed", *v);
    if (auto v = get("experiment", "conditions")) {
        std::stringstream ss(*v);
        std::string item;
        while (std::getline(ss, item, ','))
            if (!trim(item).empty()) cfg.conditions.push_back(trim(item));
    }
    num("experiment", "inc_p", cfg.audit_inc_p);
    num("experiment", "dec_q", cfg.audit_dec_q);
    str("experiment", "rhs", cfg.rhs_kind);
    num("experiment", "s", cfg.solve_s);
    num("experiment", "energy_tol", cfg.energy_tol);
    num("experiment", "residual_tol", cfg.residual_tol);
    if (auto v = get("experiment", "max_iter")) cfg.max_iter = static_cast<std::size_t>(to_u64("max_iter", *v));
    num("experiment", "recovery_tol", cfg.recovery_tol);
    num("experiment", "dep_eps", cfg.dep_eps);
    str("experiment", "f_file", cfg.f_file);
    str("experiment", "fvec_file", cfg.fvec_file);
    str("experiment", "out_field", cfg.out_field);

    cfg.validate();
    return cfg;
}

void RunConfig::validate() const {
    static const std::vector<std::string> kinds = {"phi-audit", "ops-verify", "ineq-sweep", "solve",
                                                   "s-dependence"};
    if (std::find(kinds.begin(), kinds.end(), kind) == kinds.end())
        throw config_error("config: unknown experiment kind '" + kind + "'");
    static const std::vector<std::string> families = {"power", "variable-exponent", "log-perturbed",
                                                      "double-phase"};
    if (std::find(families.begin(), families.end(), phi_family) == families.end())
        throw config_error("config: unknown phi family '" + phi_family + "'");
    static const std::vector<std::string> masks = {"full", "interval", "disk", "file"};
    if (std::find(masks.begin(), masks.end(), mask_kind) == masks.end())
        throw config_error("config: unknown mask kind '" + mask_kind + "'");
    Grid probe(dim, n, length); // validates grid parameters
    (void)probe;
}

Grid RunConfig::make_grid() const { return Grid(dim, n, length); }

MaskGeometry RunConfig::make_mask_geometry() const {
    MaskGeometry geom;
    geom.cx = mask_cx;
    geom.cy = mask_cy;
    geom.half_width = mask_half_width;
    if (mask_kind == "full") {
        geom.kind = MaskGeometry::Kind::Full;
    } else if (mask_kind == "interval") {
        if (dim != 1) throw config_error("config: interval masks need a 1D grid");
        geom.kind = MaskGeometry::Kind::Interval;
    } else if (mask_kind == "disk") {
        if (dim != 2) throw config_error("config: disk masks need a 2D grid");
        geom.kind = MaskGeometry::Kind::Disk;
    } else {
        throw config_error("config: the test-suite window needs an analytic mask (full/interval/disk)");
    }
    return geom;
}

DomainMask RunConfig::make_mask() const {
    if (mask_kind == "file") {
        if (mask_file.empty()) throw config_error("config: mask kind 'file' requires mask.file");
        const GridField indicator = read_scalar_field(mask_file);
        if (indicator.grid != make_grid()) throw config_error("config: mask field grid mismatch");
        std::vector<std::uint8_t> in(indicator.size());
        for (std::size_t i = 0; i < indicator.size(); ++i) in[i] = indicator[i] != 0.0 ? 1 : 0;
        return DomainMask(make_grid(), std::move(in));
    }
    return make_mask_geometry().to_mask(make_grid());
}

PhiFunction RunConfig::make_phi() const {
    const Grid g = make_grid();
    if (phi_family == "power") return PhiFunction::power(p, coeff);

    if (phi_family == "double-phase") {
        if (!alpha_file.empty()) return PhiFunction::double_phase(p, q, read_scalar_field(alpha_file));
        if (alpha_amp != 0.0) {
            GridField a(g);
            for (std::size_t i = 0; i < g.size(); ++i) {
                const double x = g.coord(g.dim == 1 ? i : i / g.n);
                a[i] = std::max(0.0, alpha + alpha_amp * std::cos(2.0 * std::numbers::pi * x / g.length));
            }
            return PhiFunction::double_phase(p, q, std::move(a));
        }
        return PhiFunction::double_phase(p, q, alpha);
    }

    // variable-exponent / log-perturbed: p(x) from file or the cosine profile
    GridField px(g);
    if (!exponent_file.empty()) {
        px = read_scalar_field(exponent_file);
        if (px.grid != g) throw config_error("config: exponent field grid mismatch");
    } else {
        for (std::size_t i = 0; i < g.size(); ++i) {
            const double x = g.coord(g.dim == 1 ? i : i / g.n);
            px[i] = p_base + p_amp * std::cos(2.0 * std::numbers::pi * x / g.length);
        }
    }
    if (phi_family == "variable-exponent") {
        if (!alpha_file.empty()) return PhiFunction::variable_exponent(std::move(px), read_scalar_field(alpha_file));
        return PhiFunction::variable_exponent(std::move(px));
    }
    return PhiFunction::log_perturbed(std::move(px));
}

} // namespace fso
