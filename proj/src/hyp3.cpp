#include "renvol/hyp3.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace renvol {

namespace {
constexpr double kPi = std::numbers::pi;
}

SpacePoint::SpacePoint(std::array<double, 3> c) : coords(c) {
    if (!(norm() < 1.0)) throw std::invalid_argument("SpacePoint: |coords| must be < 1");
}

double SpacePoint::norm() const {
    return std::sqrt(coords[0] * coords[0] + coords[1] * coords[1] + coords[2] * coords[2]);
}

BoundaryPoint::BoundaryPoint(std::array<double, 3> d) : dir(d) {
    const double n = std::sqrt(d[0] * d[0] + d[1] * d[1] + d[2] * d[2]);
    if (std::abs(n - 1.0) > 1e-12)
        throw std::invalid_argument("BoundaryPoint: |dir| must be 1 within 1e-12");
}

BoundaryPoint BoundaryPoint::normalized(std::array<double, 3> d) {
    const double n = std::sqrt(d[0] * d[0] + d[1] * d[1] + d[2] * d[2]);
    if (n == 0.0) throw std::invalid_argument("BoundaryPoint: zero direction");
    return BoundaryPoint({d[0] / n, d[1] / n, d[2] / n});
}

double busemann(const SpacePoint& x, const BoundaryPoint& b) {
    const double r2 = x.coords[0] * x.coords[0] + x.coords[1] * x.coords[1] +
                      x.coords[2] * x.coords[2];
    if (r2 >= (1.0 - 1e-9) * (1.0 - 1e-9))
        throw std::invalid_argument("busemann: point numerically at infinity");
    const double dx0 = x.coords[0] - b.dir[0];
    const double dx1 = x.coords[1] - b.dir[1];
    const double dx2 = x.coords[2] - b.dir[2];
    const double d2 = dx0 * dx0 + dx1 * dx1 + dx2 * dx2;
    return std::log((1.0 - r2) / d2);
}

BallGeometry ball_closed_form(double r) {
    if (!(r > 0.0)) throw std::invalid_argument("ball_closed_form: r must be > 0");
    const double sh = std::sinh(r);
    BallGeometry g;
    g.radius = r;
    g.area = 4.0 * kPi * sh * sh;
    g.volume = kPi * std::sinh(2.0 * r) - 2.0 * kPi * r;
    g.mean_curvature = std::cosh(r) / sh;
    return g;
}

EquidistantPlane equidistant_plane_closed_form(double r, double A0) {
    if (!(A0 > 0.0)) throw std::invalid_argument("equidistant_plane: A0 must be > 0");
    if (r < 0.0) throw std::invalid_argument("equidistant_plane: r must be >= 0");
    const double ch = std::cosh(r);
    EquidistantPlane e;
    e.area = A0 * ch * ch;
    e.volume = A0 * (0.5 * r + 0.25 * std::sinh(2.0 * r));
    e.mean_curvature = std::tanh(r);
    return e;
}

TubeGeometry tube_closed_form(double a) {
    if (!(a > 0.0)) throw std::invalid_argument("tube_closed_form: a must be > 0");
    const double s = std::sqrt(a * a + 1.0);
    TubeGeometry t;
    t.a = a;
    t.radius = std::log((1.0 + s) / a);
    t.metric_diag = {(1.0 + a * a) / (a * a), 1.0 / (a * a)};
    t.shape_diag = {s, 1.0 / s};
    t.mean_curvature = 0.5 * (s + 1.0 / s);
    return t;
}

}  // namespace renvol
