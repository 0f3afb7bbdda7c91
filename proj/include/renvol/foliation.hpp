#pragma once

#include <vector>

#include "renvol/surface.hpp"

namespace renvol {

// Normal (equidistant) flow of a horospherically convex surface. The flow is
// pointwise-exact: principal curvatures transport by
//   k^r = (sinh r + cosh r k) / (cosh r + sinh r k)
// and the area element by the product of the two metric stretch factors.
// Boundary Euler characteristic is fixed to chi = 2 here (sphere boundaries).

struct FlowState {
    double r = 0.0;
    std::vector<double> k1;
    std::vector<double> k2;
    std::vector<double> H;
    std::vector<double> dA;        // per-node weight, same convention as SurfacePointData::dA
    GeometricTotals totals;        // totals of the flowed surface; volume = enclosed_volume
    double enclosed_volume = 0.0;

    // quadrature of the seed, needed to compose flows and integrate volume
    Quadrature nodes;
    double seed_volume = 0.0;
};

FlowState flow(const RadialSurface& surface, double r);
FlowState flow(const FlowState& state, double r);

struct WInvarianceReport {
    std::vector<double> values;  // vol_r - 1/2 int H_r dA_r + 2 pi r
    double max_deviation = 0.0;  // spread of values
};
WInvarianceReport w_invariance_report(const RadialSurface& surface,
                                      const std::vector<double>& r_grid);

struct HDefectLimit {
    double value_at_rmax;  // int (H_r - 1) dA_r at r = r_max
    double limit;          // Richardson-extrapolated r -> infinity value (2 pi for spheres)
};
HDefectLimit h_defect_limit(const RadialSurface& surface, double r_max);

/// Area of the rescaled metric at infinity, lim e^{-2r} |Sigma_r|.
struct BoundaryMetricArea {
    double beta;        // (1/2)|Sigma| + (1/2) int H + pi
    double flow_limit;  // extrapolated e^{-2r} area_r
    double deviation;   // |beta - flow_limit|
};
BoundaryMetricArea boundary_metric_area(const RadialSurface& surface);

struct VrLimit {
    double raw_limit;    // lim vol_r - 1/2 area_r + 2 pi log sqrt(area_r / pi)
    double v_r;          // raw_limit - pi
    double tail_spread;  // disagreement of successive extrapolants
};
VrLimit vr_limit(const RadialSurface& surface, double tolerance = 1e-6);

struct MinkowskiReport {
    double lhs;             // int H - 2 |Omega|
    double rhs_log;         // 2 pi log(1 + (1/2pi) int (H+1))
    double rhs_combined;    // 2 |Omega| + 2 pi log(1 + |S|/2pi + sqrt(|S|^2/4pi^2 + |S|/pi))
    double slack_log;       // lhs - rhs_log, >= 0 with equality only for spheres
    double slack_combined;  // int H - rhs_combined
};
MinkowskiReport minkowski_report(const RadialSurface& surface);

struct NestedMonotonicity {
    double inner_value;  // int H - 2 |Omega| of the inner surface
    double outer_value;
};
/// Requires r_in <= r_out pointwise and K_int >= 0 on the inner surface;
/// checks inner_value <= outer_value within 1e-9.
NestedMonotonicity nested_monotonicity_check(const RadialSurface& inner,
                                             const RadialSurface& outer);

}  // namespace renvol
