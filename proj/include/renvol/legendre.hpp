#pragma once

#include <span>
#include <vector>

#include "renvol/quadrature.hpp"

namespace renvol {

/// P_0(x) .. P_lmax(x) into out (size lmax+1).
void legendre_values(int lmax, double x, std::span<double> out);

/// Legendre polynomials with first and second x-derivatives at a point.
/// Valid for x strictly inside (-1, 1); the derivative recurrences divide by 1-x^2.
void legendre_derivs(int lmax, double x, std::span<double> p, std::span<double> dp,
                     std::span<double> d2p);

/// Truncated Legendre series in cos(theta) fitted at Gauss-Legendre nodes.
///
/// The fit is a plain projection a_l = (2l+1)/2 * sum_i w_i f_i P_l(x_i); the
/// max reconstruction error at the nodes is kept as `residual` so callers can
/// detect under-resolved input.
class ZonalSeries {
  public:
    ZonalSeries() = default;

    static ZonalSeries fit(const Quadrature& nodes, std::span<const double> values,
                           int band_limit);
    static ZonalSeries from_coeffs(std::vector<double> coeffs);

    int band_limit() const { return static_cast<int>(coeffs_.size()) - 1; }
    const std::vector<double>& coeffs() const { return coeffs_; }
    double residual() const { return residual_; }

    double eval(double theta) const;
    /// Value together with d/dtheta and d^2/dtheta^2.
    void eval_derivs(double theta, double& f, double& df, double& d2f) const;

  private:
    std::vector<double> coeffs_;  // index l
    double residual_ = 0.0;
};

}  // namespace renvol
