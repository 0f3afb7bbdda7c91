#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "renvol/hyp3.hpp"
#include "renvol/sphere_harmonics.hpp"

namespace renvol {

// Conformal metrics e^{2 omega} h_0 on S^2, h_0 the unit round metric
// (curvature +1, area 4 pi, Scal = 2). W-volume differences follow the
// Polyakov-type formula
//   W(e^{2 omega} h_0) - W(h_0) = -(1/4) int |grad omega|^2 + 2 omega dvol_0,
// validated against the geodesic-ball family (constant omega gives -2 pi c).

/// Band-limited conformal factor: grid samples plus spherical-harmonic
/// coefficients, kept in sync (round-trip residual < 1e-10 enforced).
class ConformalFactor {
  public:
    static ConformalFactor from_coeffs(SphCoeffs coeffs, int n_theta = 0, int n_phi = 0);
    /// Project a grid-sampled function onto degree <= L. Throws if the
    /// projection misses the samples by more than residual_tol.
    static ConformalFactor from_grid(std::vector<double> grid, int L, int n_theta,
                                     int n_phi, double residual_tol = 1e-10);
    static ConformalFactor zero(int L, int n_theta = 0, int n_phi = 0);

    int L() const { return coeffs_.L; }
    const SphCoeffs& coeffs() const { return coeffs_; }
    const std::vector<double>& grid() const { return grid_; }
    const SphereHarmonics& basis() const { return *basis_; }
    double round_trip_residual() const { return residual_; }

    double max_abs() const;
    /// omega + c (constant shifts only touch the degree-0 coefficient)
    ConformalFactor shifted(double c) const;

  private:
    SphCoeffs coeffs_;
    std::vector<double> grid_;
    std::shared_ptr<const SphereHarmonics> basis_;
    double residual_ = 0.0;
};

struct CurvatureField {
    std::vector<double> K;     // Gauss curvature of e^{2 omega} h_0 on the grid
    double K_mean;             // int K dvol_h / area
    double area;               // int e^{2 omega} dvol_0
    double total_curvature;    // int K dvol_h (Gauss-Bonnet: 4 pi)
    double max_deviation;      // max |K - K_mean|
};

/// K = e^{-2 omega} (1 - Lap_0 omega), Laplacian applied spectrally.
/// Requires n_theta >= 2L (aliasing guard).
CurvatureField curvature(const ConformalFactor& omega);

/// W(e^{2 omega} h_0) - W(h_0).
double polyakov_diff(const ConformalFactor& omega);

/// First variation (1/4) int deltaK dvol_h for the conformal perturbation
/// delta h = 2 delta h, with deltaK = -2 K delta - Lap_h delta.
double w_first_variation(const ConformalFactor& omega, const ConformalFactor& delta);

/// Shift omega by a constant so that int e^{2 omega} dvol_0 = 4 pi.
ConformalFactor area_normalize(const ConformalFactor& omega);

struct RicciFlowOptions {
    double dt = 0.01;        // initial step
    double t_max = 50.0;
    double tol = 1e-7;       // stationarity threshold on max |K - K_mean|
    int max_steps = 200000;
    double blowup_guard = 10.0;  // limit on ||omega||_inf
};

struct FlowTraceEntry {
    double t;
    SphCoeffs omega;
    double w_rel;          // W(h_t) - W(h_0)
    double max_curv_dev;   // max |K - K_mean|
    double area;
    double dW_monitor;     // (1/2) int K^2 dvol_h - (1/(2 area)) (int K dvol_h)^2
};

struct FlowTrace {
    std::vector<FlowTraceEntry> entries;
    bool stationary = false;  // reached tol before t_max
};

/// Area-preserving conformal Ricci flow d/dt omega = 4 pi / area - K,
/// RK4 with step rejection; area re-projected by a constant shift each step.
FlowTrace ricci_flow(const ConformalFactor& omega0, const RicciFlowOptions& opts = {});

void export_flow_trace_csv(const FlowTrace& trace, std::ostream& out);
void export_flow_trace_csv(const FlowTrace& trace, const std::string& path);

struct CorollaryGap {
    double lhs;        // | int 2 omega dvol_0 |
    double rhs;        // int |grad omega|^2 dvol_0
    double gap;        // rhs - lhs
    double int_omega;  // int omega dvol_0 (<= 0 under the area constraint)
};
/// Requires int (e^{2 omega} - 1) dvol_0 = 0 within 1e-8.
CorollaryGap corollary_gap(const ConformalFactor& omega);

/// Conformal factor of the boundary action of the hyperbolic translation of
/// length t along the axis: e^{2 omega} h_0 = (Mobius dilation)^* h_0.
ConformalFactor mobius_factor(double t, const BoundaryPoint& axis, int L = 48,
                              int n_theta = 0, int n_phi = 0);

struct WmonoResult {
    double w_base_rel = 0.0;  // W(h_0) relative to itself
    double w_conformal_rel;   // W(e^{2 omega} h_0) - W(h_0), <= 0 for omega >= 0
};
/// For omega >= 0 pointwise: W(h_0) >= W(e^{2 omega} h_0) with equality only
/// at omega == 0; violations throw.
WmonoResult wmono_check(const ConformalFactor& omega);

/// JSON serialization {L, coeffs}: per (l, m) the pair (cos, sin) interleaved.
std::string conformal_to_json(const ConformalFactor& omega);
ConformalFactor conformal_from_json(const std::string& text);

}  // namespace renvol
