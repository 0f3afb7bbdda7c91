#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>
#include <sstream>

#include "renvol/hyp3.hpp"
#include "renvol/surface.hpp"

using namespace renvol;

namespace {

constexpr double kPi = std::numbers::pi;

// curvature of the radial graph from explicitly supplied derivatives; used to
// cross-check the spectral differentiation with finite differences
void curvatures_from_derivs(double theta, double r, double rp, double rpp, double& k1,
                            double& k2) {
    const double sh = std::sinh(r), ch = std::cosh(r);
    const double E = rp * rp + sh * sh;
    const double W = std::sqrt(E) / sh;
    k1 = (-rpp + sh * ch + 2.0 * rp * rp * ch / sh) / (E * W);
    k2 = (ch / sh - (std::cos(theta) / std::sin(theta)) * rp / (sh * sh)) / W;
}

RadialSurface random_band_limited(std::mt19937_64& rng) {
    std::uniform_real_distribution<double> amp(-0.03, 0.03);
    std::vector<double> c(7, 0.0);
    for (int l = 1; l <= 6; ++l) c[l] = amp(rng);
    ZonalSeries z = ZonalSeries::from_coeffs(c);
    return build_surface_from([&](double theta) { return 1.2 + z.eval(theta); }, 6);
}

}  // namespace

TEST_CASE("round sphere is umbilic with k = coth r") {
    RadialSurface s = sphere_surface(1.0);
    const double want = 1.0 / std::tanh(1.0);
    for (const SurfacePointData& p : s.pointdata()) {
        CHECK(p.k1 == doctest::Approx(want).epsilon(1e-12));
        CHECK(p.k2 == doctest::Approx(want).epsilon(1e-12));
        CHECK(p.traceless_norm_sq < 1e-10);
        CHECK(p.K_int == doctest::Approx(-1.0 + want * want).epsilon(1e-12));
    }
}

TEST_CASE("constant-radius totals match the ball closed forms") {
    for (double c : {0.5, 1.0, 2.0}) {
        RadialSurface s = sphere_surface(c);
        GeometricTotals t = totals(s);
        BallGeometry g = ball_closed_form(c);
        CHECK(std::abs(t.area - g.area) < 1e-8 * std::max(1.0, g.area));
        CHECK(std::abs(t.volume - g.volume) < 1e-8 * std::max(1.0, g.volume));
        CHECK(std::abs(t.int_H - g.mean_curvature * g.area) < 1e-8 * g.area);
        CHECK(t.euler == doctest::Approx(2.0).epsilon(1e-10));
    }
}

TEST_CASE("integral spot values at r = 1") {
    GeometricTotals t = totals(sphere_surface(1.0));
    CHECK(t.int_H == doctest::Approx(22.78824).epsilon(1e-6));
    // int H - 2 |Omega| = 4 pi r for balls
    CHECK(t.int_H - 2.0 * t.volume == doctest::Approx(4.0 * kPi).epsilon(1e-10));
}

TEST_CASE("gauss-bonnet for a perturbed sphere") {
    RadialSurface s = build_surface_from(
        [](double theta) { return 1.0 + 0.05 * std::cos(theta); }, 2);
    GeometricTotals t = totals(s);
    CHECK(std::abs(t.int_K_int - 4.0 * kPi) < 1e-6);
}

TEST_CASE("gauss-bonnet across a corpus of band-limited surfaces") {
    std::mt19937_64 rng(23);
    for (int k = 0; k < 8; ++k) {
        GeometricTotals t = totals(random_band_limited(rng));
        CHECK(std::abs(t.int_K_int - 4.0 * kPi) < 1e-6);
    }
}

TEST_CASE("degenerate radius: totals vanish") {
    GeometricTotals t = totals(sphere_surface(1e-6));
    CHECK(t.area < 1e-10);
    CHECK(t.volume < 1e-15);
    CHECK(t.int_H < 1e-4);  // H ~ 1/r while area ~ r^2
}

TEST_CASE("h-convexity margins") {
    CHECK(hconvexity_margin(sphere_surface(1.0)) ==
          doctest::Approx(1.0 / std::tanh(1.0) + 1.0).epsilon(1e-10));
    // deep concavity turns the margin negative
    RadialSurface dented = build_surface_from(
        [](double theta) { return 1.0 + 0.9 * std::cos(4.0 * theta); }, 8, 256);
    CHECK(hconvexity_margin(dented) < 0.0);
}

TEST_CASE("w volume") {
    for (double r0 : {0.5, 1.0, 2.0}) {
        CHECK(std::abs(w_volume(sphere_surface(r0)) + 2.0 * kPi * r0) < 1e-9);
    }
    // difference under a constant shift
    CHECK(w_volume(sphere_surface(1.3)) - w_volume(sphere_surface(1.0)) ==
          doctest::Approx(-2.0 * kPi * 0.3).epsilon(1e-10));
    // W -> 0 at rate -2 pi r
    CHECK(std::abs(w_volume(sphere_surface(1e-4)) + 2.0 * kPi * 1e-4) < 1e-9);
}

TEST_CASE("spectral curvatures match the finite-difference oracle") {
    std::mt19937_64 rng(5);
    const double h = 1e-3;
    for (int trial = 0; trial < 5; ++trial) {
        RadialSurface s = random_band_limited(rng);
        const ZonalSeries& z = s.radius_series();
        for (int i = 0; i < s.size(); i += 7) {
            const double theta = s.theta(i);
            const double r = z.eval(theta);
            const double rp = (z.eval(theta + h) - z.eval(theta - h)) / (2.0 * h);
            const double rpp =
                (z.eval(theta + h) - 2.0 * r + z.eval(theta - h)) / (h * h);
            double k1, k2;
            curvatures_from_derivs(theta, r, rp, rpp, k1, k2);
            CHECK(std::abs(k1 - s.pointdata()[i].k1) < 1e-5);
            CHECK(std::abs(k2 - s.pointdata()[i].k2) < 1e-5);
        }
    }
}

TEST_CASE("build_surface rejects bad input") {
    CHECK_THROWS_AS(build_surface({1.0, -1.0}, 0, 2), std::invalid_argument);
    CHECK_THROWS_AS(build_surface(std::vector<double>(16, 1.0), 9, 16), std::invalid_argument);
    // white noise cannot be represented at low band limit
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> u(0.9, 1.1);
    std::vector<double> noisy(64);
    for (double& v : noisy) v = u(rng);
    CHECK_THROWS_AS(build_surface(std::move(noisy), 4, 64), std::invalid_argument);
}

TEST_CASE("csv round trip") {
    RadialSurface s = build_surface_from(
        [](double theta) { return 1.0 + 0.07 * std::cos(2.0 * theta); }, 4);
    std::stringstream ss;
    export_surface_csv(s, ss);
    RadialSurface back = import_surface_csv(ss);
    REQUIRE(back.size() == s.size());
    CHECK(back.band_limit() == s.band_limit());
    for (int i = 0; i < s.size(); ++i)
        CHECK(back.radius()[i] == doctest::Approx(s.radius()[i]).epsilon(1e-14));
}
