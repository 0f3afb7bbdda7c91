#pragma once

#include <array>

namespace renvol {

// Hyperbolic 3-space is fixed to the Poincare ball model throughout.
//
// Mean curvature convention: H is the AVERAGE of the principal curvatures,
// (k1+k2)/2, so H = coth(r) for the geodesic sphere of radius r and
// H = tanh(r) for the equidistant at distance r from a geodesic plane.
// Many sources use the sum; every formula in this library assumes the average.

/// Point of the open unit ball, |coords| < 1.
struct SpacePoint {
    std::array<double, 3> coords;

    explicit SpacePoint(std::array<double, 3> c);
    double norm() const;
};

/// Point of the sphere at infinity, |dir| = 1 within 1e-12.
struct BoundaryPoint {
    std::array<double, 3> dir;

    explicit BoundaryPoint(std::array<double, 3> d);
    /// Unit vector from arbitrary nonzero input.
    static BoundaryPoint normalized(std::array<double, 3> d);
};

/// Closed-form data of the geodesic ball of radius r.
struct BallGeometry {
    double radius;
    double area;            // 4 pi sinh^2 r
    double volume;          // pi sinh(2r) - 2 pi r
    double mean_curvature;  // coth r
};

/// Closed-form data of the tube {x^2+y^2 = (a z)^2 / ...} of slope a about a geodesic.
/// sinh R = 1/a, so R -> 0 as a -> infinity.
struct TubeGeometry {
    double a;
    double radius;                       // log((1 + sqrt(a^2+1)) / a)
    std::array<double, 2> metric_diag;   // ((1+a^2)/a^2, 1/a^2)
    std::array<double, 2> shape_diag;    // (sqrt(a^2+1), 1/sqrt(a^2+1))
    double mean_curvature;               // (sqrt(a^2+1) + 1/sqrt(a^2+1)) / 2, always > 1
};

/// Busemann function B_b(x) = log((1-|x|^2)/|x-b|^2), normalized so that
/// B_b(origin) = 0 and B_b increases at unit rate along the geodesic toward b.
/// The level set {B_b = s} is the horosphere tangent to the sphere at infinity at b.
double busemann(const SpacePoint& x, const BoundaryPoint& b);

BallGeometry ball_closed_form(double r);

/// Equidistant surface at (signed) distance r >= 0 on one side of a totally
/// geodesic seed of area A0: returns (area, one-sided volume, H).
struct EquidistantPlane {
    double area;    // A0 cosh^2 r
    double volume;  // A0 (r/2 + sinh(2r)/4)
    double mean_curvature;  // tanh r
};
EquidistantPlane equidistant_plane_closed_form(double r, double A0);

TubeGeometry tube_closed_form(double a);

}  // namespace renvol
