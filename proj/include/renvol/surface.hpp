#pragma once

#include <cmath>
#include <iosfwd>
#include <string>
#include <vector>

#include "renvol/legendre.hpp"
#include "renvol/quadrature.hpp"

namespace renvol {

/// Pointwise curvature data with respect to the outward normal.
struct SurfacePointData {
    double k1;                 // meridional principal curvature
    double k2;                 // azimuthal principal curvature
    double H;                  // (k1+k2)/2
    double K_int;              // intrinsic Gauss curvature, -1 + k1*k2
    double traceless_norm_sq;  // (k1-k2)^2 / 2
    double dA;                 // area element weight (see RadialSurface::area_weight)
};

struct GeometricTotals {
    double area = 0.0;
    double volume = 0.0;
    double int_H = 0.0;
    double int_H_minus_1 = 0.0;
    double int_K_int = 0.0;
    double euler = 0.0;  // int_K_int / (2 pi); ~2 for embedded spheres
};

/// Rotationally symmetric star-shaped surface rho = r(theta) in geodesic polar
/// coordinates about the origin. Curvatures come from Legendre-coefficient
/// differentiation of r(theta); samples live at Gauss-Legendre nodes in
/// cos(theta), which keeps every total a plain weighted sum.
class RadialSurface {
  public:
    const Quadrature& nodes() const { return nodes_; }
    int size() const { return nodes_.size(); }
    int band_limit() const { return series_.band_limit(); }
    const std::vector<double>& radius() const { return radius_; }
    const std::vector<SurfacePointData>& pointdata() const { return pointdata_; }
    const ZonalSeries& radius_series() const { return series_; }

    /// theta of node i.
    double theta(int i) const;

    friend RadialSurface build_surface(std::vector<double> radius_samples, int band_limit,
                                       int n_nodes);

  private:
    Quadrature nodes_;
    std::vector<double> radius_;
    std::vector<SurfacePointData> pointdata_;
    ZonalSeries series_;
};

/// Default polar resolution.
inline constexpr int kDefaultSurfaceNodes = 128;

/// Build from per-node radius samples (Gauss-Legendre nodes in cos theta,
/// ascending x = cos theta, i.e. theta descending from pi to 0).
/// Rejects non-positive radii and inputs whose Legendre reconstruction
/// residual exceeds 1e-8 (under-resolved data).
RadialSurface build_surface(std::vector<double> radius_samples, int band_limit,
                            int n_nodes = kDefaultSurfaceNodes);

/// Convenience: sample r(theta) at the quadrature nodes and build.
template <typename F>
RadialSurface build_surface_from(F&& radial, int band_limit,
                                 int n_nodes = kDefaultSurfaceNodes) {
    Quadrature q = gauss_legendre(n_nodes);
    std::vector<double> r(n_nodes);
    for (int i = 0; i < n_nodes; ++i) r[i] = radial(std::acos(q.x[i]));
    return build_surface(std::move(r), band_limit, n_nodes);
}

RadialSurface sphere_surface(double r0, int n_nodes = kDefaultSurfaceNodes);

GeometricTotals totals(const RadialSurface& s);

/// min over nodes of min(k1,k2) + 1; the surface is horospherically convex
/// iff the margin is positive.
double hconvexity_margin(const RadialSurface& s);

/// W-volume of the bounded region: |Omega| - (1/2) * int_Sigma H dSigma.
double w_volume(const RadialSurface& s);

/// CSV import/export: header line records band_limit and N, then theta,radius rows.
void export_surface_csv(const RadialSurface& s, std::ostream& out);
void export_surface_csv(const RadialSurface& s, const std::string& path);
RadialSurface import_surface_csv(std::istream& in);
RadialSurface import_surface_csv(const std::string& path);

}  // namespace renvol
