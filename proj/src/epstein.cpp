#include "renvol/epstein.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "renvol/errors.hpp"
#include "renvol/parallel.hpp"

namespace renvol {

namespace {

// tangency residuals and Jacobian at node angle theta
struct TangencySystem {
    const ZonalSeries& omega;
    double t;
    double theta;

    void residuals(double rho, double alpha, double& g1, double& g2) const {
        double w, wp, wpp;
        omega.eval_derivs(alpha, w, wp, wpp);
        const double ch = std::cosh(rho), sh = std::sinh(rho);
        const double c = std::cos(theta - alpha), s = std::sin(theta - alpha);
        const double D = ch - sh * c;
        g1 = -std::log(D) - t - w;
        g2 = sh * s / D - wp;
    }

    void jacobian(double rho, double alpha, double J[2][2]) const {
        double w, wp, wpp;
        omega.eval_derivs(alpha, w, wp, wpp);
        const double ch = std::cosh(rho), sh = std::sinh(rho);
        const double c = std::cos(theta - alpha), s = std::sin(theta - alpha);
        const double D = ch - sh * c;
        const double D_rho = sh - ch * c;
        const double D_alpha = sh * s;
        J[0][0] = -D_rho / D;
        J[0][1] = sh * s / D - wp;  // = g2 at the current point
        J[1][0] = (ch * s * D - sh * s * D_rho) / (D * D);
        J[1][1] = (-sh * c * D - sh * s * D_alpha) / (D * D) - wpp;
    }
};

// Newton iteration from a caller-supplied starting point.
bool newton_node(const ZonalSeries& omega, double t, double theta, double& rho,
                 double& alpha, const EnvelopeOptions& opts) {
    TangencySystem sys{omega, t, theta};
    for (int it = 0; it < opts.max_newton_iters; ++it) {
        double g1, g2;
        sys.residuals(rho, alpha, g1, g2);
        if (std::abs(g1) < opts.newton_tol && std::abs(g2) < opts.newton_tol) return true;
        double J[2][2];
        sys.jacobian(rho, alpha, J);
        const double det = J[0][0] * J[1][1] - J[0][1] * J[1][0];
        if (det == 0.0) return false;
        rho -= (g1 * J[1][1] - g2 * J[0][1]) / det;
        alpha -= (g2 * J[0][0] - g1 * J[1][0]) / det;
        if (!(rho > 1e-8)) rho = 1e-8;
    }
    double g1, g2;
    sys.residuals(rho, alpha, g1, g2);
    return std::abs(g1) < 1e-10 && std::abs(g2) < 1e-10;
}

ZonalSeries scaled_series(const ZonalSeries& z, double lam) {
    std::vector<double> c = z.coeffs();
    for (double& v : c) v *= lam;
    return ZonalSeries::from_coeffs(std::move(c));
}

// Solve one node, with continuation in the amplitude of omega as fallback.
double solve_node(const ZonalSeries& omega, double t, double theta,
                  const EnvelopeOptions& opts) {
    double rho = t + omega.eval(theta);
    double alpha = theta;
    if (newton_node(omega, t, theta, rho, alpha, opts)) return rho;

    rho = t;
    alpha = theta;
    for (double lam : {0.25, 0.5, 0.75, 1.0}) {
        ZonalSeries zs = scaled_series(omega, lam);
        if (!newton_node(zs, t, theta, rho, alpha, opts))
            throw NonConvergence("envelope: Newton failed at theta=" + std::to_string(theta));
    }
    return rho;
}

}  // namespace

EnvelopeProblem EnvelopeProblem::from_conformal(const ConformalFactor& omega, double offset) {
    double nonzonal = 0.0;
    for (int l = 0; l <= omega.L(); ++l)
        for (int m = 1; m <= l; ++m)
            nonzonal += omega.coeffs().ca(l, m) * omega.coeffs().ca(l, m) +
                        omega.coeffs().cb(l, m) * omega.coeffs().cb(l, m);
    if (nonzonal >= 1e-12)
        throw std::invalid_argument("EnvelopeProblem: conformal factor is not zonal");
    // orthonormal zonal coefficients to plain Legendre coefficients:
    // Y_l0 = sqrt((2l+1)/(4 pi)) P_l
    std::vector<double> c(omega.L() + 1, 0.0);
    for (int l = 0; l <= omega.L(); ++l)
        c[l] = omega.coeffs().ca(l, 0) *
               std::sqrt((2.0 * l + 1.0) / (4.0 * 3.14159265358979323846));
    EnvelopeProblem p;
    p.omega = ZonalSeries::from_coeffs(std::move(c));
    p.offset = offset;
    return p;
}

EnvelopeProblem EnvelopeProblem::from_zonal(ZonalSeries omega, double offset) {
    EnvelopeProblem p;
    p.omega = std::move(omega);
    p.offset = offset;
    return p;
}

RadialSurface envelope(const EnvelopeProblem& problem, const EnvelopeOptions& opts) {
    Quadrature q = gauss_legendre(opts.n_nodes);
    std::vector<double> radius(opts.n_nodes);
    std::vector<std::string> failures(opts.n_nodes);
    parallel_for(opts.n_nodes, [&](int i) {
        try {
            radius[i] = solve_node(problem.omega, problem.offset, std::acos(q.x[i]), opts);
        } catch (const NonConvergence& e) {
            failures[i] = e.what();
        }
    });
    for (const std::string& f : failures)
        if (!f.empty()) throw NonConvergence(f);
    RadialSurface s = build_surface(std::move(radius), opts.band_limit, opts.n_nodes);
    if (!(hconvexity_margin(s) > 0.0))
        throw NonConvergence("envelope: result is not horospherically convex");
    return s;
}

double duality_check(const EnvelopeProblem& problem, const ConformalFactor& omega,
                     const EnvelopeOptions& opts) {
    RadialSurface with_omega = envelope(problem, opts);
    EnvelopeProblem base;
    base.omega = ZonalSeries::from_coeffs({0.0});
    base.offset = problem.offset;
    RadialSurface without = envelope(base, opts);
    const double geometric = w_volume(with_omega) - w_volume(without);
    return std::abs(geometric - polyakov_diff(omega));
}

}  // namespace renvol
