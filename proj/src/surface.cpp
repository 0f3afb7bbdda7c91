#include "renvol/surface.hpp"

#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace renvol {

namespace {
constexpr double kPi = std::numbers::pi;
constexpr double kTwoPi = 2.0 * std::numbers::pi;
}

double RadialSurface::theta(int i) const { return std::acos(nodes_.x[i]); }

RadialSurface build_surface(std::vector<double> radius_samples, int band_limit,
                            int n_nodes) {
    if (static_cast<int>(radius_samples.size()) != n_nodes)
        throw std::invalid_argument("build_surface: sample count != n_nodes");
    for (double r : radius_samples)
        if (!(r > 0.0)) throw std::invalid_argument("build_surface: radius must be positive");
    if (band_limit < 0 || band_limit > n_nodes / 2)
        throw std::invalid_argument("build_surface: band_limit must be <= N/2");

    RadialSurface s;
    s.nodes_ = gauss_legendre(n_nodes);
    s.radius_ = std::move(radius_samples);
    s.series_ = ZonalSeries::fit(s.nodes_, s.radius_, band_limit);
    if (s.series_.residual() > 1e-8)
        throw std::invalid_argument("build_surface: spectral residual above 1e-8, input under-resolved");

    s.pointdata_.resize(n_nodes);
    for (int i = 0; i < n_nodes; ++i) {
        const double theta = s.theta(i);
        double r, rp, rpp;
        s.series_.eval_derivs(theta, r, rp, rpp);
        // Use the sampled radius; the series only supplies derivatives.
        r = s.radius_[i];
        const double sh = std::sinh(r);
        const double ch = std::cosh(r);
        const double cot_theta = s.nodes_.x[i] / std::sin(theta);
        const double E = rp * rp + sh * sh;                 // meridian metric coefficient
        const double W = std::sqrt(E) / sh;                 // |grad(rho - r(theta))|
        // Principal curvatures of the radial graph with respect to the outward
        // normal; derived from the ambient Hessian of rho - r(theta).
        const double k1 = (-rpp + sh * ch + 2.0 * rp * rp * ch / sh) / (E * W);
        const double k2 = (ch / sh - cot_theta * rp / (sh * sh)) / W;

        SurfacePointData& p = s.pointdata_[i];
        p.k1 = k1;
        p.k2 = k2;
        p.H = 0.5 * (k1 + k2);
        p.K_int = -1.0 + k1 * k2;
        p.traceless_norm_sq = 0.5 * (k1 - k2) * (k1 - k2);
        // Quadrature weight of the area element: dA = dA_weight * w_i (GL in
        // cos theta, azimuthal 2 pi folded in).
        p.dA = kTwoPi * sh * std::sqrt(E);
    }
    return s;
}

RadialSurface sphere_surface(double r0, int n_nodes) {
    if (!(r0 > 0.0)) throw std::invalid_argument("sphere_surface: r0 must be > 0");
    return build_surface(std::vector<double>(n_nodes, r0), 0, n_nodes);
}

GeometricTotals totals(const RadialSurface& s) {
    GeometricTotals t;
    const auto& q = s.nodes();
    for (int i = 0; i < s.size(); ++i) {
        const SurfacePointData& p = s.pointdata()[i];
        const double dA = q.w[i] * p.dA;
        t.area += dA;
        t.int_H += p.H * dA;
        t.int_H_minus_1 += (p.H - 1.0) * dA;
        t.int_K_int += p.K_int * dA;
        // star-shaped volume by radial density: int_0^r sinh^2 = sinh(2r)/4 - r/2
        const double r = s.radius()[i];
        t.volume += q.w[i] * kTwoPi * (0.25 * std::sinh(2.0 * r) - 0.5 * r);
    }
    t.euler = t.int_K_int / kTwoPi;
    return t;
}

double hconvexity_margin(const RadialSurface& s) {
    double m = std::numeric_limits<double>::infinity();
    for (const SurfacePointData& p : s.pointdata())
        m = std::min(m, std::min(p.k1, p.k2) + 1.0);
    return m;
}

double w_volume(const RadialSurface& s) {
    GeometricTotals t = totals(s);
    return t.volume - 0.5 * t.int_H;
}

void export_surface_csv(const RadialSurface& s, std::ostream& out) {
    out << "# band_limit=" << s.band_limit() << " N=" << s.size() << "\n";
    out << "theta,radius\n";
    out.precision(17);
    for (int i = 0; i < s.size(); ++i)
        out << s.theta(i) << "," << s.radius()[i] << "\n";
}

void export_surface_csv(const RadialSurface& s, const std::string& path) {
    std::ofstream f(path);
    if (!f) throw std::runtime_error("export_surface_csv: cannot open " + path);
    export_surface_csv(s, f);
}

RadialSurface import_surface_csv(std::istream& in) {
    std::string line;
    if (!std::getline(in, line) || line.rfind("# band_limit=", 0) != 0)
        throw std::runtime_error("import_surface_csv: missing header");
    int band_limit = 0, n = 0;
    if (std::sscanf(line.c_str(), "# band_limit=%d N=%d", &band_limit, &n) != 2)
        throw std::runtime_error("import_surface_csv: malformed header");
    std::getline(in, line);  // column names
    std::vector<double> radius;
    radius.reserve(n);
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::istringstream row(line);
        std::string theta_s, r_s;
        if (!std::getline(row, theta_s, ',') || !std::getline(row, r_s, ','))
            throw std::runtime_error("import_surface_csv: malformed row");
        radius.push_back(std::stod(r_s));
    }
    if (static_cast<int>(radius.size()) != n)
        throw std::runtime_error("import_surface_csv: row count != N");
    return build_surface(std::move(radius), band_limit, n);
}

RadialSurface import_surface_csv(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw std::runtime_error("import_surface_csv: cannot open " + path);
    return import_surface_csv(f);
}

}  // namespace renvol
