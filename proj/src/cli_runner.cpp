#include "renvol/cli.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <numbers>
#include <random>
#include <sstream>

#include <nlohmann/json.hpp>

#include "renvol/conformal.hpp"
#include "renvol/epstein.hpp"
#include "renvol/errors.hpp"
#include "renvol/foliation.hpp"
#include "renvol/hyp3.hpp"
#include "renvol/iso_profile.hpp"
#include "renvol/surface.hpp"
#include "renvol/tube_stability.hpp"

namespace renvol {

namespace {

using nlohmann::json;
constexpr double kPi = std::numbers::pi;

const std::vector<std::string> kCommands = {"ball",    "surface",  "flow",     "minkowski",
                                            "ricci-flow", "polyakov", "envelope", "profile",
                                            "hawking", "vr",       "tube"};

struct ReportBuilder {
    json report;
    bool all_pass = true;

    explicit ReportBuilder(const RunConfig& cfg) {
        report["command"] = cfg.command;
        json inputs;
        for (const auto& [k, v] : cfg.opts) inputs[k] = v;
        inputs["seed"] = cfg.seed;
        report["inputs"] = inputs;
        report["outputs"] = json::object();
        report["assertions"] = json::array();
    }

    void output(const std::string& key, const json& value) { report["outputs"][key] = value; }

    void check(const std::string& name, double value, double tolerance, bool pass) {
        report["assertions"].push_back(
            {{"name", name}, {"value", value}, {"tolerance", tolerance}, {"pass", pass}});
        all_pass = all_pass && pass;
    }
    /// |value| <= tolerance
    void check_abs(const std::string& name, double value, double tolerance) {
        check(name, value, tolerance, std::abs(value) <= tolerance);
    }
    /// value >= -tolerance
    void check_nonneg(const std::string& name, double value, double tolerance) {
        check(name, value, tolerance, value >= -tolerance);
    }
    void check_flag(const std::string& name, bool flag) { check(name, flag ? 1.0 : 0.0, 0.0, flag); }
};

class Options {
  public:
    Options(const RunConfig& cfg, std::initializer_list<std::string> known) : cfg_(cfg) {
        for (const std::string& k : known) known_.push_back(k);
        for (const auto& [k, v] : cfg.opts) {
            (void)v;
            bool ok = false;
            for (const std::string& kn : known_) ok = ok || kn == k;
            if (!ok) throw ConfigError("unknown option --" + k + " for command " + cfg.command);
        }
    }
    bool has(const std::string& k) const { return cfg_.opts.count(k) > 0; }
    std::string str(const std::string& k, const std::string& dflt = "") const {
        auto it = cfg_.opts.find(k);
        return it == cfg_.opts.end() ? dflt : it->second;
    }
    double num(const std::string& k, double dflt) const {
        auto it = cfg_.opts.find(k);
        if (it == cfg_.opts.end()) return dflt;
        try {
            return std::stod(it->second);
        } catch (...) {
            throw ConfigError("option --" + k + " expects a number, got '" + it->second + "'");
        }
    }
    int integer(const std::string& k, int dflt) const {
        const double v = num(k, dflt);
        return static_cast<int>(v);
    }
    std::string require(const std::string& k) const {
        if (!has(k)) throw ConfigError("command " + cfg_.command + " requires --" + k);
        return str(k);
    }

  private:
    const RunConfig& cfg_;
    std::vector<std::string> known_;
};

std::vector<double> parse_grid(const std::string& text, const std::string& what) {
    std::vector<double> out;
    std::stringstream ss(text);
    std::string tok;
    while (std::getline(ss, tok, ','))
        if (!tok.empty()) {
            try {
                out.push_back(std::stod(tok));
            } catch (...) {
                throw ConfigError(what + ": bad number '" + tok + "'");
            }
        }
    if (out.empty()) throw ConfigError(what + ": empty grid");
    return out;
}

// surface grammar: sphere:<r> | cos:<r0>,<amp>,<k> | csv:<path>
struct SurfaceSpec {
    RadialSurface surface;
    bool is_sphere = false;
};

SurfaceSpec parse_surface(const std::string& text, int nodes, int band_limit) {
    SurfaceSpec out;
    const auto colon = text.find(':');
    const std::string kind = text.substr(0, colon);
    const std::string rest = colon == std::string::npos ? "" : text.substr(colon + 1);
    if (kind == "sphere") {
        const double r = std::stod(rest);
        if (!(r > 0.0)) throw ConfigError("surface sphere: radius must be > 0");
        out.surface = sphere_surface(r, nodes);
        out.is_sphere = true;
    } else if (kind == "cos") {
        auto p = parse_grid(rest, "surface cos");
        if (p.size() != 3) throw ConfigError("surface cos expects r0,amp,k");
        const double r0 = p[0], amp = p[1];
        const int k = static_cast<int>(p[2]);
        out.surface = build_surface_from(
            [&](double theta) { return r0 + amp * std::cos(k * theta); },
            std::max(band_limit, 2 * k), nodes);
    } else if (kind == "csv") {
        out.surface = import_surface_csv(rest);
    } else {
        throw ConfigError("unknown surface spec '" + text + "'");
    }
    return out;
}

// omega grammar: const:<c> | zonal:<l>,<amp> | mobius:<t> | random:<amp>[,<L>] | json:<path>
ConformalFactor parse_omega(const std::string& text, unsigned long long seed) {
    const auto colon = text.find(':');
    const std::string kind = text.substr(0, colon);
    const std::string rest = colon == std::string::npos ? "" : text.substr(colon + 1);
    if (kind == "const") {
        const double c = std::stod(rest);
        SphCoeffs sc(4);
        sc.a[0] = c * std::sqrt(4.0 * kPi);
        return ConformalFactor::from_coeffs(std::move(sc));
    }
    if (kind == "zonal") {
        auto p = parse_grid(rest, "omega zonal");
        if (p.size() != 2) throw ConfigError("omega zonal expects l,amp");
        const int l = static_cast<int>(p[0]);
        if (l < 0 || l > 64) throw ConfigError("omega zonal: l out of range");
        SphCoeffs sc(std::max(l, 2));
        // amp * P_l(cos theta) in orthonormal terms
        sc.ca(l, 0) = p[1] * std::sqrt(4.0 * kPi / (2.0 * l + 1.0));
        return ConformalFactor::from_coeffs(std::move(sc));
    }
    if (kind == "mobius") {
        const double t = std::stod(rest);
        return mobius_factor(t, BoundaryPoint({0.0, 0.0, 1.0}));
    }
    if (kind == "random") {
        auto p = parse_grid(rest, "omega random");
        const double amp = p[0];
        const int L = p.size() > 1 ? static_cast<int>(p[1]) : 8;
        std::mt19937_64 rng(seed);
        std::normal_distribution<double> gauss(0.0, 1.0);
        SphCoeffs sc(L);
        for (int l = 1; l <= L; ++l)
            for (int m = 0; m <= l; ++m) {
                sc.ca(l, m) = gauss(rng) / (1.0 + l * l);
                if (m > 0) sc.cb(l, m) = gauss(rng) / (1.0 + l * l);
            }
        ConformalFactor f = ConformalFactor::from_coeffs(std::move(sc));
        const double scale = amp / std::max(f.max_abs(), 1e-12);
        SphCoeffs scaled = f.coeffs();
        for (size_t i = 0; i < scaled.a.size(); ++i) {
            scaled.a[i] *= scale;
            scaled.b[i] *= scale;
        }
        return ConformalFactor::from_coeffs(std::move(scaled));
    }
    if (kind == "json") {
        std::ifstream in(rest);
        if (!in) throw ConfigError("omega json: cannot open " + rest);
        std::stringstream ss;
        ss << in.rdbuf();
        return conformal_from_json(ss.str());
    }
    throw ConfigError("unknown omega spec '" + text + "'");
}

// profile grammar: fuchsian:genus=<g> | fuchsian:chi=<c> | csv:<path>
struct ProfileSpec {
    IsoProfile profile;
    bool is_fuchsian = false;
};

std::vector<double> profile_v_grid(double vmax, int samples) {
    if (!(vmax > 1.0)) throw ConfigError("profile: vmax must be > 1");
    if (samples < 8) throw ConfigError("profile: need at least 8 samples");
    std::vector<double> grid;
    grid.push_back(0.0);
    const double vmin = 1.0;
    for (int i = 0; i < samples; ++i)
        grid.push_back(vmin * std::pow(vmax / vmin, double(i) / (samples - 1)));
    return grid;
}

ProfileSpec parse_profile(const std::string& text, double vmax, int samples) {
    const auto colon = text.find(':');
    const std::string kind = text.substr(0, colon);
    const std::string rest = colon == std::string::npos ? "" : text.substr(colon + 1);
    if (kind == "fuchsian") {
        int chi_surface = 0;
        if (rest.rfind("genus=", 0) == 0) {
            const int g = std::stoi(rest.substr(6));
            if (g < 2) throw ConfigError("fuchsian profile: genus must be >= 2");
            chi_surface = 2 - 2 * g;
        } else if (rest.rfind("chi=", 0) == 0) {
            chi_surface = std::stoi(rest.substr(4));
        } else {
            throw ConfigError("fuchsian profile expects genus=<g> or chi=<c>");
        }
        return {fuchsian_profile(chi_surface, profile_v_grid(vmax, samples)), true};
    }
    if (kind == "csv") return {import_profile_csv(rest), false};
    throw ConfigError("unknown profile spec '" + text + "'");
}

void write_atomic(const std::string& path, const std::string& content) {
    const std::string tmp = path + ".tmp";
    {
        std::ofstream f(tmp, std::ios::trunc);
        if (!f) throw std::runtime_error("cannot open " + tmp);
        f << content;
    }
    if (std::rename(tmp.c_str(), path.c_str()) != 0)
        throw std::runtime_error("cannot rename " + tmp + " to " + path);
}

// ---- command implementations ----

void cmd_ball(const RunConfig& cfg, ReportBuilder& rb) {
    Options o(cfg, {"r", "out", "config"});
    const double r = o.num("r", 1.0);
    BallGeometry g = ball_closed_form(r);
    rb.output("area", g.area);
    rb.output("volume", g.volume);
    rb.output("H", g.mean_curvature);
    const double w = g.volume - 0.5 * g.mean_curvature * g.area;
    rb.output("w_volume", w);
    rb.check_abs("w_equals_minus_2pi_r", w + 2.0 * kPi * r, 1e-9);
}

void cmd_surface(const RunConfig& cfg, ReportBuilder& rb) {
    Options o(cfg, {"surface", "nodes", "band-limit", "csv", "out", "config"});
    SurfaceSpec s = parse_surface(o.require("surface"), o.integer("nodes", kDefaultSurfaceNodes),
                                  o.integer("band-limit", 16));
    GeometricTotals t = totals(s.surface);
    rb.output("area", t.area);
    rb.output("volume", t.volume);
    rb.output("int_H", t.int_H);
    rb.output("int_K_int", t.int_K_int);
    rb.output("euler", t.euler);
    rb.output("hconvexity_margin", hconvexity_margin(s.surface));
    rb.output("w_volume", w_volume(s.surface));
    rb.check_abs("gauss_bonnet_euler_2", t.euler - 2.0, 1e-6);
    if (o.has("csv")) export_surface_csv(s.surface, o.str("csv"));
}

void cmd_flow(const RunConfig& cfg, ReportBuilder& rb) {
    Options o(cfg, {"surface", "nodes", "band-limit", "r-grid", "out", "config"});
    SurfaceSpec s = parse_surface(o.require("surface"), o.integer("nodes", kDefaultSurfaceNodes),
                                  o.integer("band-limit", 16));
    std::vector<double> grid = parse_grid(o.str("r-grid", "0,1,2,4,6"), "r-grid");
    WInvarianceReport rep = w_invariance_report(s.surface, grid);
    rb.output("r_grid", grid);
    rb.output("w_values", rep.values);
    rb.output("spread", rep.max_deviation);
    HDefectLimit hd = h_defect_limit(s.surface, 8.0);
    rb.output("h_defect_at_8", hd.value_at_rmax);
    rb.output("h_defect_limit", hd.limit);
    BoundaryMetricArea bm = boundary_metric_area(s.surface);
    rb.output("beta", bm.beta);
    rb.check_abs("w_invariance_spread", rep.max_deviation, 1e-6);
    rb.check_abs("h_defect_minus_2pi", hd.value_at_rmax - 2.0 * kPi, 1e-5);
    rb.check_abs("boundary_area_consistency", bm.deviation, 1e-6);
}

void cmd_minkowski(const RunConfig& cfg, ReportBuilder& rb) {
    Options o(cfg, {"surface", "nodes", "band-limit", "out", "config"});
    SurfaceSpec s = parse_surface(o.require("surface"), o.integer("nodes", kDefaultSurfaceNodes),
                                  o.integer("band-limit", 16));
    MinkowskiReport m = minkowski_report(s.surface);
    rb.output("lhs", m.lhs);
    rb.output("rhs_log", m.rhs_log);
    rb.output("rhs_combined", m.rhs_combined);
    rb.output("slack_log", m.slack_log);
    rb.output("slack_combined", m.slack_combined);
    rb.check_nonneg("slack_log_nonnegative", m.slack_log, 1e-8);
    rb.check_nonneg("slack_combined_nonnegative", m.slack_combined, 1e-8);
    if (s.is_sphere) rb.check_abs("sphere_equality", m.slack_log, 1e-8);
}

void cmd_ricci_flow(const RunConfig& cfg, ReportBuilder& rb) {
    Options o(cfg, {"omega", "dt", "tmax", "tol", "csv", "out", "config"});
    ConformalFactor omega0 = area_normalize(parse_omega(o.str("omega", "random:0.2"), cfg.seed));
    RicciFlowOptions opts;
    opts.dt = o.num("dt", 0.01);
    opts.t_max = o.num("tmax", 50.0);
    opts.tol = o.num("tol", 1e-7);
    FlowTrace trace = ricci_flow(omega0, opts);
    const FlowTraceEntry& last = trace.entries.back();
    rb.output("steps", static_cast<int>(trace.entries.size()));
    rb.output("t_final", last.t);
    rb.output("w_rel_final", last.w_rel);
    rb.output("max_curv_dev_final", last.max_curv_dev);
    double min_w_step = 0.0, max_area_drift = 0.0, min_monitor = 0.0;
    for (size_t i = 0; i < trace.entries.size(); ++i) {
        if (i > 0)
            min_w_step = std::min(min_w_step,
                                  trace.entries[i].w_rel - trace.entries[i - 1].w_rel);
        max_area_drift =
            std::max(max_area_drift, std::abs(trace.entries[i].area - trace.entries[0].area));
        min_monitor = std::min(min_monitor, trace.entries[i].dW_monitor);
    }
    rb.check_flag("reached_stationarity", trace.stationary);
    rb.check_nonneg("w_rel_monotone_per_step", min_w_step, 1e-9);
    rb.check_abs("area_drift", max_area_drift, 1e-8);
    rb.check_nonneg("dW_monitor_sign", min_monitor, 1e-9);
    if (o.has("csv")) export_flow_trace_csv(trace, o.str("csv"));
}

void cmd_polyakov(const RunConfig& cfg, ReportBuilder& rb) {
    Options o(cfg, {"omega", "gap", "out", "config"});
    ConformalFactor omega = parse_omega(o.require("omega"), cfg.seed);
    const double diff = polyakov_diff(omega);
    rb.output("polyakov_diff", diff);

    // path consistency: integrate the first variation along t -> t*omega
    Quadrature q = gauss_legendre(8, 0.0, 1.0);
    double path = 0.0;
    for (int i = 0; i < q.size(); ++i) {
        SphCoeffs sc = omega.coeffs();
        for (size_t k = 0; k < sc.a.size(); ++k) {
            sc.a[k] *= q.x[i];
            sc.b[k] *= q.x[i];
        }
        ConformalFactor omega_t = ConformalFactor::from_coeffs(
            std::move(sc), omega.basis().n_theta(), omega.basis().n_phi());
        path += q.w[i] * w_first_variation(omega_t, omega);
    }
    rb.output("path_integral", path);
    rb.check_abs("ftc_consistency", path - diff, 1e-6);

    if (o.has("gap")) {
        ConformalFactor normalized = area_normalize(omega);
        CorollaryGap g = corollary_gap(normalized);
        rb.output("gap_lhs", g.lhs);
        rb.output("gap_rhs", g.rhs);
        rb.output("gap", g.gap);
        rb.output("int_omega", g.int_omega);
        rb.check_nonneg("corollary_gap_nonnegative", g.gap, 1e-9);
        rb.check("int_omega_nonpositive", g.int_omega, 1e-9, g.int_omega <= 1e-9);
    }
}

void cmd_envelope(const RunConfig& cfg, ReportBuilder& rb) {
    Options o(cfg, {"omega", "t", "nodes", "csv", "out", "config"});
    ConformalFactor omega = parse_omega(o.str("omega", "const:0"), cfg.seed);
    const double t = o.num("t", 1.0);
    EnvelopeOptions eopts;
    eopts.n_nodes = o.integer("nodes", kDefaultSurfaceNodes);
    eopts.band_limit = eopts.n_nodes / 2;
    EnvelopeProblem problem = EnvelopeProblem::from_conformal(omega, t);
    RadialSurface s = envelope(problem, eopts);
    rb.output("hconvexity_margin", hconvexity_margin(s));
    rb.output("w_volume", w_volume(s));
    const double dual = duality_check(problem, omega, eopts);
    rb.output("duality_discrepancy", dual);
    rb.check_abs("duality", dual, 1e-4);
    if (o.has("csv")) export_surface_csv(s, o.str("csv"));
}

void cmd_profile(const RunConfig& cfg, ReportBuilder& rb) {
    Options o(cfg, {"profile", "vmax", "samples", "csv", "out", "config"});
    ProfileSpec p = parse_profile(o.require("profile"), o.num("vmax", 1e4),
                                  o.integer("samples", 48));
    ProfileChecks c = foliation_profile_checks(p.profile);
    rb.output("V_star", c.V_star);
    rb.output("last_ratio", c.last_ratio);
    rb.output("ratio_limit", c.ratio_limit);
    rb.check_flag("derivative_exceeds_ratio_beyond_V_star", c.inequality_ok);
    rb.check_abs("ratio_limit_2", c.ratio_limit - 2.0, 1e-4);
    if (o.has("csv")) export_profile_csv(p.profile, o.str("csv"));
}

void cmd_hawking(const RunConfig& cfg, ReportBuilder& rb) {
    Options o(cfg, {"profile", "vmax", "samples", "csv", "out", "config"});
    ProfileSpec p = parse_profile(o.require("profile"), o.num("vmax", 1e4),
                                  o.integer("samples", 48));
    HawkingTrace t = hawking_mass(p.profile);
    double max_abs = 0.0;
    for (double m : t.m_H) max_abs = std::max(max_abs, std::abs(m));
    rb.output("max_abs_m_H", max_abs);
    rb.check_flag("monotone", t.monotone_ok);
    rb.check_flag("nonpositive", t.sign_ok);
    if (p.is_fuchsian) rb.check_abs("fuchsian_m_H_zero", max_abs, 1e-8);
    if (o.has("csv")) export_hawking_csv(t, o.str("csv"));
}

void cmd_vr(const RunConfig& cfg, ReportBuilder& rb) {
    Options o(cfg,
              {"profile", "surface", "vmax", "samples", "nodes", "band-limit", "out", "config"});
    if (o.has("profile")) {
        ProfileSpec p = parse_profile(o.str("profile"), o.num("vmax", 1e4),
                                      o.integer("samples", 48));
        VrFromProfile v = vr_from_profile(p.profile);
        rb.output("raw_limit", v.raw_limit);
        rb.output("v_r", v.v_r);
        rb.output("tail_spread", v.tail_spread);
        if (p.is_fuchsian) rb.check_abs("fuchsian_v_r_zero", v.v_r, 1e-4);
    } else if (o.has("surface")) {
        SurfaceSpec s = parse_surface(o.str("surface"), o.integer("nodes", kDefaultSurfaceNodes),
                                      o.integer("band-limit", 16));
        VrLimit v = vr_limit(s.surface);
        rb.output("raw_limit", v.raw_limit);
        rb.output("v_r", v.v_r);
        rb.output("tail_spread", v.tail_spread);
        if (s.is_sphere) rb.check_abs("ball_raw_limit_pi", v.raw_limit - kPi, 1e-6);
        rb.check("v_r_nonpositive", v.v_r, 1e-6, v.v_r <= 1e-6);
    } else {
        throw ConfigError("vr requires --profile or --surface");
    }
}

void cmd_tube(const RunConfig& cfg, ReportBuilder& rb) {
    Options o(cfg, {"a", "lambda", "bc", "csv", "out", "config"});
    const double lambda = o.num("lambda", kPi);
    const std::string bc_s = o.str("bc", "neumann");
    TubeBC bc;
    if (bc_s == "neumann")
        bc = TubeBC::Neumann;
    else if (bc_s == "periodic")
        bc = TubeBC::Periodic;
    else
        throw ConfigError("tube: --bc must be neumann or periodic");
    StabilityThreshold th = stability_threshold(lambda, bc);
    const double a = o.num("a", th.a_max);
    TubeSpec spec(a, lambda, bc);
    std::vector<double> eigs = jacobi_eigenvalues(spec, 4, 2);
    rb.output("lambda_1", eigs.front());
    rb.output("lowest_eigenvalues", std::vector<double>(eigs.begin(), eigs.begin() + 8));
    rb.output("a_max", th.a_max);
    rb.output("R_min", th.R_min);
    rb.check("lambda_1_negative", eigs.front(), 0.0, eigs.front() < 0.0);
    // the first radial mode vanishes exactly at the threshold slope
    const double mu = bc == TubeBC::Neumann ? std::pow(kPi / lambda, 2)
                                            : std::pow(2.0 * kPi / lambda, 2);
    const double a2 = th.a_max * th.a_max;
    const double threshold_mode =
        a2 / (1.0 + a2) * mu - (a2 + 1.0 / (a2 + 1.0) - 1.0);
    rb.check_abs("threshold_mode_zero", threshold_mode, 1e-12);
    if (o.has("csv")) {
        std::ofstream f(o.str("csv"));
        if (!f) throw std::runtime_error("tube: cannot open csv " + o.str("csv"));
        f << "lambda,bc,a_max,R_min\n";
        f.precision(17);
        f << lambda << "," << bc_s << "," << th.a_max << "," << th.R_min << "\n";
    }
}

}  // namespace

RunConfig parse_cli(const std::vector<std::string>& args) {
    if (args.empty()) throw ConfigError("usage: renvol <command> [--opt value]...");
    RunConfig cfg;
    cfg.command = args[0];
    bool known = false;
    for (const std::string& c : kCommands) known = known || c == cfg.command;
    if (!known) throw ConfigError("unknown command '" + cfg.command + "'");

    std::map<std::string, std::string> flags;
    for (size_t i = 1; i < args.size(); ++i) {
        const std::string& a = args[i];
        if (a.rfind("--", 0) != 0) throw ConfigError("expected --option, got '" + a + "'");
        std::string key = a.substr(2), value;
        const auto eq = key.find('=');
        if (eq != std::string::npos) {
            value = key.substr(eq + 1);
            key = key.substr(0, eq);
        } else {
            if (i + 1 >= args.size() || args[i + 1].rfind("--", 0) == 0) {
                value = "1";  // bare flag
            } else {
                value = args[++i];
            }
        }
        flags[key] = value;
    }

    // config file supplies defaults, flags override
    if (auto it = flags.find("config"); it != flags.end()) {
        std::ifstream f(it->second);
        if (!f) throw ConfigError("cannot open config file " + it->second);
        nlohmann::json j;
        try {
            f >> j;
        } catch (const std::exception& e) {
            throw ConfigError(std::string("config file parse error: ") + e.what());
        }
        for (auto& [k, v] : j.items())
            if (!flags.count(k))
                flags[k] = v.is_string() ? v.get<std::string>() : v.dump();
    }

    if (auto it = flags.find("seed"); it != flags.end()) {
        try {
            cfg.seed = std::stoull(it->second);
        } catch (...) {
            throw ConfigError("--seed expects an integer");
        }
        flags.erase(it);
    }
    if (auto it = flags.find("out"); it != flags.end()) {
        cfg.out_path = it->second;
        flags.erase(it);
    }
    cfg.opts = std::move(flags);
    cfg.opts.erase("config");
    return cfg;
}

int run_config(const RunConfig& cfg, std::string* report_out) {
    ReportBuilder rb(cfg);
    int status = 0;
    try {
        if (cfg.command == "ball")
            cmd_ball(cfg, rb);
        else if (cfg.command == "surface")
            cmd_surface(cfg, rb);
        else if (cfg.command == "flow")
            cmd_flow(cfg, rb);
        else if (cfg.command == "minkowski")
            cmd_minkowski(cfg, rb);
        else if (cfg.command == "ricci-flow")
            cmd_ricci_flow(cfg, rb);
        else if (cfg.command == "polyakov")
            cmd_polyakov(cfg, rb);
        else if (cfg.command == "envelope")
            cmd_envelope(cfg, rb);
        else if (cfg.command == "profile")
            cmd_profile(cfg, rb);
        else if (cfg.command == "hawking")
            cmd_hawking(cfg, rb);
        else if (cfg.command == "vr")
            cmd_vr(cfg, rb);
        else if (cfg.command == "tube")
            cmd_tube(cfg, rb);
        else
            throw ConfigError("unknown command '" + cfg.command + "'");
        status = rb.all_pass ? 0 : 1;
    } catch (const ConfigError& e) {
        rb.report["error"] = e.what();
        status = 2;
    } catch (const NonConvergence& e) {
        rb.report["error"] = e.what();
        status = 3;
    } catch (const std::invalid_argument& e) {
        rb.report["error"] = e.what();
        status = 2;
    }

    std::string text = rb.report.dump(2);
    if (report_out) *report_out = text;

    // timestamp lives in its own field so the payload stays byte-reproducible
    json stamped = rb.report;
    const auto now = std::chrono::system_clock::now();
    stamped["timestamp"] =
        static_cast<long long>(std::chrono::duration_cast<std::chrono::milliseconds>(
                                   now.time_since_epoch())
                                   .count());
    if (!cfg.out_path.empty()) write_atomic(cfg.out_path, stamped.dump(2) + "\n");
    return status;
}

int run_cli(const std::vector<std::string>& args, std::string* report_out) {
    try {
        RunConfig cfg = parse_cli(args);
        return run_config(cfg, report_out);
    } catch (const ConfigError& e) {
        if (report_out) *report_out = std::string("{\"error\": \"") + e.what() + "\"}";
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    }
}

}  // namespace renvol
