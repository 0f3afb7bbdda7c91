#include "renvol/conformal.hpp"

#include <cmath>
#include <fstream>
#include <numbers>
#include <stdexcept>

#include <nlohmann/json.hpp>

#include "renvol/errors.hpp"

namespace renvol {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kFourPi = 4.0 * std::numbers::pi;

int default_n_theta(int L) { return std::max(2 * L + 2, 32); }

double grid_max_abs(const std::vector<double>& g) {
    double m = 0.0;
    for (double v : g) m = std::max(m, std::abs(v));
    return m;
}

}  // namespace

ConformalFactor ConformalFactor::from_coeffs(SphCoeffs coeffs, int n_theta, int n_phi) {
    ConformalFactor f;
    const int L = coeffs.L;
    if (n_theta <= 0) n_theta = default_n_theta(L);
    if (n_phi <= 0) n_phi = 2 * n_theta;
    f.basis_ = SphereHarmonics::get(L, n_theta, n_phi);
    f.coeffs_ = std::move(coeffs);
    f.grid_ = f.basis_->synthesize(f.coeffs_);
    f.residual_ = 0.0;  // exact by construction (band-limited synthesis)
    return f;
}

ConformalFactor ConformalFactor::from_grid(std::vector<double> grid, int L, int n_theta,
                                           int n_phi, double residual_tol) {
    ConformalFactor f;
    f.basis_ = SphereHarmonics::get(L, n_theta, n_phi);
    if (static_cast<int>(grid.size()) != f.basis_->grid_size())
        throw std::invalid_argument("ConformalFactor::from_grid: grid size mismatch");
    f.coeffs_ = f.basis_->analyze(grid);
    std::vector<double> rec = f.basis_->synthesize(f.coeffs_);
    double res = 0.0;
    for (size_t i = 0; i < grid.size(); ++i) res = std::max(res, std::abs(rec[i] - grid[i]));
    f.residual_ = res;
    if (res > residual_tol)
        throw std::invalid_argument("ConformalFactor::from_grid: band limit insufficient, residual " +
                                    std::to_string(res));
    f.grid_ = std::move(rec);
    return f;
}

ConformalFactor ConformalFactor::zero(int L, int n_theta, int n_phi) {
    return from_coeffs(SphCoeffs(L), n_theta, n_phi);
}

double ConformalFactor::max_abs() const { return grid_max_abs(grid_); }

ConformalFactor ConformalFactor::shifted(double c) const {
    SphCoeffs sc = coeffs_;
    sc.a[0] += c * std::sqrt(kFourPi);
    return from_coeffs(std::move(sc), basis_->n_theta(), basis_->n_phi());
}

CurvatureField curvature(const ConformalFactor& omega) {
    const SphereHarmonics& B = omega.basis();
    if (B.n_theta() < 2 * omega.L())
        throw std::invalid_argument("curvature: evaluation grid must have n_theta >= 2L");
    std::vector<double> lap = B.synthesize_laplacian(omega.coeffs());
    const std::vector<double>& w = omega.grid();

    CurvatureField cf;
    cf.K.resize(w.size());
    double area = 0.0, total = 0.0;
    for (int i = 0; i < B.n_theta(); ++i) {
        for (int j = 0; j < B.n_phi(); ++j) {
            const size_t id = static_cast<size_t>(i) * B.n_phi() + j;
            const double e2w = std::exp(2.0 * w[id]);
            cf.K[id] = (1.0 - lap[id]) / e2w;
            area += B.weight(i) * e2w;
            total += B.weight(i) * (1.0 - lap[id]);  // K dvol_h = (1 - lap) dvol_0
        }
    }
    cf.area = area;
    cf.total_curvature = total;
    cf.K_mean = total / area;
    double dev = 0.0;
    for (double k : cf.K) dev = std::max(dev, std::abs(k - cf.K_mean));
    cf.max_deviation = dev;
    return cf;
}

double polyakov_diff(const ConformalFactor& omega) {
    return -0.25 * (dirichlet_energy(omega.coeffs()) + 2.0 * mean_integral(omega.coeffs()));
}

double w_first_variation(const ConformalFactor& omega, const ConformalFactor& delta) {
    const SphereHarmonics& B = omega.basis();
    if (B.L() != delta.basis().L() || B.n_theta() != delta.basis().n_theta() ||
        B.n_phi() != delta.basis().n_phi())
        throw std::invalid_argument("w_first_variation: omega and delta must share a basis");
    std::vector<double> lap_delta = B.synthesize_laplacian(delta.coeffs());
    const std::vector<double>& d = delta.grid();
    std::vector<double> lap_omega = B.synthesize_laplacian(omega.coeffs());
    double acc = 0.0;
    for (int i = 0; i < B.n_theta(); ++i)
        for (int j = 0; j < B.n_phi(); ++j) {
            const size_t id = static_cast<size_t>(i) * B.n_phi() + j;
            // deltaK dvol_h = (-2 K delta - Lap_h delta) e^{2w} dvol_0
            //              = (-2 (1 - Lap_0 w) e^{-2w} delta - e^{-2w} Lap_0 delta) e^{2w} dvol_0
            acc += B.weight(i) *
                   (-2.0 * (1.0 - lap_omega[id]) * d[id] - lap_delta[id]);
        }
    return 0.25 * acc;
}

ConformalFactor area_normalize(const ConformalFactor& omega) {
    const SphereHarmonics& B = omega.basis();
    double area = 0.0;
    for (int i = 0; i < B.n_theta(); ++i)
        for (int j = 0; j < B.n_phi(); ++j)
            area += B.weight(i) * std::exp(2.0 * omega.grid()[static_cast<size_t>(i) * B.n_phi() + j]);
    return omega.shifted(0.5 * std::log(kFourPi / area));
}

namespace {

double conformal_area(const SphereHarmonics& B, const std::vector<double>& w) {
    double area = 0.0;
    for (int i = 0; i < B.n_theta(); ++i)
        for (int j = 0; j < B.n_phi(); ++j)
            area += B.weight(i) * std::exp(2.0 * w[static_cast<size_t>(i) * B.n_phi() + j]);
    return area;
}

}  // namespace

FlowTrace ricci_flow(const ConformalFactor& omega0, const RicciFlowOptions& opts) {
    // Work band limit above the seed: the stationary metric (a Mobius factor)
    // is not band-limited, so the truncation tail must sit below tol.
    const int L_flow = std::max(2 * omega0.L(), 16);
    const int n_theta = default_n_theta(L_flow);
    const int n_phi = 2 * n_theta;
    auto basis = SphereHarmonics::get(L_flow, n_theta, n_phi);

    SphCoeffs c(L_flow);
    for (int l = 0; l <= omega0.L(); ++l)
        for (int m = 0; m <= l; ++m) {
            c.ca(l, m) = omega0.coeffs().ca(l, m);
            c.cb(l, m) = omega0.coeffs().cb(l, m);
        }

    auto make_factor = [&](const SphCoeffs& cc) {
        return ConformalFactor::from_coeffs(cc, n_theta, n_phi);
    };

    // d/dt omega = 4 pi / area - K, projected to degree <= L_flow
    auto rhs = [&](const SphCoeffs& cc, double area_target) {
        ConformalFactor f = make_factor(cc);
        std::vector<double> lap = basis->synthesize_laplacian(cc);
        std::vector<double> g(f.grid().size());
        for (size_t id = 0; id < g.size(); ++id)
            g[id] = kFourPi / area_target - (1.0 - lap[id]) * std::exp(-2.0 * f.grid()[id]);
        return basis->analyze(g);
    };

    const double area0 = conformal_area(*basis, make_factor(c).grid());
    const double w0 = polyakov_diff(make_factor(c));

    auto diagnostics = [&](const SphCoeffs& cc, double t) {
        ConformalFactor f = make_factor(cc);
        CurvatureField K = curvature(f);
        double k2 = 0.0;
        for (int i = 0; i < basis->n_theta(); ++i)
            for (int j = 0; j < basis->n_phi(); ++j) {
                const size_t id = static_cast<size_t>(i) * basis->n_phi() + j;
                k2 += basis->weight(i) * K.K[id] * K.K[id] * std::exp(2.0 * f.grid()[id]);
            }
        FlowTraceEntry e;
        e.t = t;
        e.omega = cc;
        e.w_rel = polyakov_diff(f) - w0;
        e.max_curv_dev = K.max_deviation;
        e.area = K.area;
        e.dW_monitor = 0.5 * k2 - K.total_curvature * K.total_curvature / (2.0 * K.area);
        return e;
    };

    FlowTrace trace;
    trace.entries.push_back(diagnostics(c, 0.0));
    if (trace.entries.back().max_curv_dev < opts.tol) {
        trace.stationary = true;
        return trace;
    }

    double t = 0.0;
    double dt = opts.dt;
    const double dt_min = opts.dt * 1e-6;
    const double stiffness = double(L_flow) * (L_flow + 1.0);
    int step = 0;
    while (t < opts.t_max && step < opts.max_steps) {
        ++step;
        // step control on max |d/dt omega| plus the RK4 stability bound for
        // the stiffest retained mode, eigenvalue ~ L(L+1) e^{2 max omega}
        SphCoeffs k1 = rhs(c, area0);
        const double rate = grid_max_abs(basis->synthesize(k1));
        const double dt_stab =
            2.5 / (stiffness * std::exp(2.0 * grid_max_abs(basis->synthesize(c))));
        double h = std::min({dt, dt_stab, opts.t_max - t});
        if (rate * h > 0.05) h = 0.05 / rate;

        auto axpy = [&](const SphCoeffs& base, double s, const SphCoeffs& d) {
            SphCoeffs r = base;
            for (size_t i = 0; i < r.a.size(); ++i) {
                r.a[i] += s * d.a[i];
                r.b[i] += s * d.b[i];
            }
            return r;
        };
        SphCoeffs k2 = rhs(axpy(c, 0.5 * h, k1), area0);
        SphCoeffs k3 = rhs(axpy(c, 0.5 * h, k2), area0);
        SphCoeffs k4 = rhs(axpy(c, h, k3), area0);
        SphCoeffs cn = c;
        for (size_t i = 0; i < cn.a.size(); ++i) {
            cn.a[i] += h / 6.0 * (k1.a[i] + 2.0 * k2.a[i] + 2.0 * k3.a[i] + k4.a[i]);
            cn.b[i] += h / 6.0 * (k1.b[i] + 2.0 * k2.b[i] + 2.0 * k3.b[i] + k4.b[i]);
        }

        // exact area restoration by a constant shift
        const double area_raw = conformal_area(*basis, basis->synthesize(cn));
        cn.a[0] += 0.5 * std::log(area0 / area_raw) * std::sqrt(kFourPi);

        FlowTraceEntry e = diagnostics(cn, t + h);
        if (grid_max_abs(basis->synthesize(cn)) > opts.blowup_guard)
            throw NonConvergence("ricci_flow: ||omega||_inf exceeded blow-up guard");
        const bool monotone_ok = e.w_rel >= trace.entries.back().w_rel - 1e-9;
        const bool area_ok = std::abs(e.area - area0) <= 1e-8 * std::max(1.0, area0);
        if (!monotone_ok || !area_ok) {
            dt *= 0.5;  // reject
            if (dt < dt_min)
                throw NonConvergence("ricci_flow: step size collapsed during rejection");
            continue;
        }
        c = std::move(cn);
        t = e.t;
        trace.entries.push_back(std::move(e));
        if (trace.entries.back().max_curv_dev < opts.tol) {
            trace.stationary = true;
            break;
        }
        dt = std::min(dt * 1.1, opts.dt * 4.0);
    }
    return trace;
}

void export_flow_trace_csv(const FlowTrace& trace, std::ostream& out) {
    out << "t,W_rel,max_curv_dev,area\n";
    out.precision(17);
    for (const FlowTraceEntry& e : trace.entries)
        out << e.t << "," << e.w_rel << "," << e.max_curv_dev << "," << e.area << "\n";
}

void export_flow_trace_csv(const FlowTrace& trace, const std::string& path) {
    std::ofstream f(path);
    if (!f) throw std::runtime_error("export_flow_trace_csv: cannot open " + path);
    export_flow_trace_csv(trace, f);
}

CorollaryGap corollary_gap(const ConformalFactor& omega) {
    const SphereHarmonics& B = omega.basis();
    double area_defect = 0.0;
    for (int i = 0; i < B.n_theta(); ++i)
        for (int j = 0; j < B.n_phi(); ++j)
            area_defect +=
                B.weight(i) * (std::exp(2.0 * omega.grid()[static_cast<size_t>(i) * B.n_phi() + j]) - 1.0);
    if (std::abs(area_defect) > 1e-8)
        throw std::invalid_argument("corollary_gap: area constraint violated, defect " +
                                    std::to_string(area_defect));
    CorollaryGap g;
    g.int_omega = mean_integral(omega.coeffs());
    g.lhs = std::abs(2.0 * g.int_omega);
    g.rhs = dirichlet_energy(omega.coeffs());
    g.gap = g.rhs - g.lhs;
    return g;
}

ConformalFactor mobius_factor(double t, const BoundaryPoint& axis, int L, int n_theta,
                              int n_phi) {
    if (!(std::abs(t) < 4.0))
        throw std::invalid_argument("mobius_factor: |t| must be < 4 (resolution guard)");
    if (n_theta <= 0) n_theta = default_n_theta(L);
    if (n_phi <= 0) n_phi = 2 * n_theta;
    auto basis = SphereHarmonics::get(L, n_theta, n_phi);
    const double e2t = std::exp(2.0 * t);
    std::vector<double> grid(basis->grid_size());
    for (int i = 0; i < n_theta; ++i) {
        const double st = std::sin(basis->theta(i));
        const double ct = std::cos(basis->theta(i));
        for (int j = 0; j < n_phi; ++j) {
            const double ph = basis->phi(j);
            // u = cos(angle to axis)
            const double u = st * std::cos(ph) * axis.dir[0] + st * std::sin(ph) * axis.dir[1] +
                             ct * axis.dir[2];
            // pullback factor of the boundary dilation in stereographic coordinates
            grid[static_cast<size_t>(i) * n_phi + j] =
                t + std::log(2.0 / ((1.0 + u) + e2t * (1.0 - u)));
        }
    }
    return ConformalFactor::from_grid(std::move(grid), L, n_theta, n_phi, 1e-10);
}

WmonoResult wmono_check(const ConformalFactor& omega) {
    for (double v : omega.grid())
        if (v < -1e-12)
            throw std::invalid_argument("wmono_check: omega must be nonnegative pointwise");
    WmonoResult r;
    r.w_conformal_rel = polyakov_diff(omega);
    if (r.w_conformal_rel > 1e-12)
        throw std::runtime_error("wmono_check: W increased under a pointwise-larger metric");
    if (r.w_conformal_rel > -1e-10 && omega.max_abs() >= 1e-8)
        throw std::runtime_error("wmono_check: equality without omega == 0");
    return r;
}

std::string conformal_to_json(const ConformalFactor& omega) {
    nlohmann::json j;
    j["L"] = omega.L();
    std::vector<double> flat;
    flat.reserve(2 * omega.coeffs().a.size());
    for (int l = 0; l <= omega.L(); ++l)
        for (int m = 0; m <= l; ++m) {
            flat.push_back(omega.coeffs().ca(l, m));
            flat.push_back(m == 0 ? 0.0 : omega.coeffs().cb(l, m));
        }
    j["coeffs"] = flat;
    return j.dump();
}

ConformalFactor conformal_from_json(const std::string& text) {
    nlohmann::json j = nlohmann::json::parse(text);
    const int L = j.at("L").get<int>();
    std::vector<double> flat = j.at("coeffs").get<std::vector<double>>();
    SphCoeffs c(L);
    if (flat.size() != 2 * c.a.size())
        throw std::invalid_argument("conformal_from_json: coefficient count mismatch");
    size_t k = 0;
    for (int l = 0; l <= L; ++l)
        for (int m = 0; m <= l; ++m) {
            c.ca(l, m) = flat[k++];
            const double s = flat[k++];
            if (m > 0) c.cb(l, m) = s;
        }
    return ConformalFactor::from_coeffs(std::move(c));
}

}  // namespace renvol
