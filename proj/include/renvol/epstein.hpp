#pragma once

#include "renvol/conformal.hpp"
#include "renvol/legendre.hpp"
#include "renvol/surface.hpp"

namespace renvol {

// Horosphere-envelope construction for rotationally symmetric conformal data.
// A boundary point at polar angle alpha carries the horosphere
// {B_alpha = t + omega(alpha)}; the envelope point in the meridian half-plane
// at polar angle theta solves the tangency system
//   F(rho, alpha)        = -log(cosh rho - sinh rho cos(theta - alpha)) - t - omega(alpha) = 0
//   dF/dalpha(rho,alpha) = 0.
// For omega == 0 this returns the geodesic sphere of radius t.

/// Zonal conformal factor (m = 0 coefficients only) with a global offset t.
struct EnvelopeProblem {
    ZonalSeries omega;  // omega(theta), Legendre series
    double offset;      // t; the horosphere level is t + omega

    /// Build from a general ConformalFactor; rejects non-zonal content
    /// (coefficient mass of m != 0 must be < 1e-12).
    static EnvelopeProblem from_conformal(const ConformalFactor& omega, double offset);
    static EnvelopeProblem from_zonal(ZonalSeries omega, double offset);
};

struct EnvelopeOptions {
    int n_nodes = kDefaultSurfaceNodes;
    int band_limit = kDefaultSurfaceNodes / 2;
    int max_newton_iters = 60;
    double newton_tol = 1e-13;
};

RadialSurface envelope(const EnvelopeProblem& problem, const EnvelopeOptions& opts = {});

/// |[W(envelope(omega,t)) - W(envelope(0,t))] - polyakov_diff(omega)|;
/// the geometric and conformal routes to the W-difference must agree.
double duality_check(const EnvelopeProblem& problem, const ConformalFactor& omega,
                     const EnvelopeOptions& opts = {});

}  // namespace renvol
