#include "renvol/legendre.hpp"

#include <cmath>
#include <stdexcept>

namespace renvol {

void legendre_values(int lmax, double x, std::span<double> out) {
    out[0] = 1.0;
    if (lmax == 0) return;
    out[1] = x;
    for (int l = 1; l < lmax; ++l)
        out[l + 1] = ((2.0 * l + 1.0) * x * out[l] - l * out[l - 1]) / (l + 1.0);
}

void legendre_derivs(int lmax, double x, std::span<double> p, std::span<double> dp,
                     std::span<double> d2p) {
    legendre_values(lmax, x, p);
    const double s2 = 1.0 - x * x;
    dp[0] = 0.0;
    d2p[0] = 0.0;
    for (int l = 1; l <= lmax; ++l) {
        // (1-x^2) P_l' = l (P_{l-1} - x P_l)
        dp[l] = l * (p[l - 1] - x * p[l]) / s2;
        // Legendre ODE: (1-x^2) P'' = 2x P' - l(l+1) P
        d2p[l] = (2.0 * x * dp[l] - l * (l + 1.0) * p[l]) / s2;
    }
}

ZonalSeries ZonalSeries::fit(const Quadrature& nodes, std::span<const double> values,
                             int band_limit) {
    const int n = nodes.size();
    if (static_cast<int>(values.size()) != n)
        throw std::invalid_argument("ZonalSeries::fit: values/nodes size mismatch");
    if (band_limit < 0 || band_limit > n / 2)
        throw std::invalid_argument("ZonalSeries::fit: band limit must be in [0, n/2]");

    ZonalSeries z;
    z.coeffs_.assign(band_limit + 1, 0.0);
    std::vector<double> p(band_limit + 1);
    for (int i = 0; i < n; ++i) {
        legendre_values(band_limit, nodes.x[i], p);
        const double wf = nodes.w[i] * values[i];
        for (int l = 0; l <= band_limit; ++l) z.coeffs_[l] += wf * p[l];
    }
    for (int l = 0; l <= band_limit; ++l) z.coeffs_[l] *= (2.0 * l + 1.0) / 2.0;

    double res = 0.0;
    for (int i = 0; i < n; ++i) {
        legendre_values(band_limit, nodes.x[i], p);
        double rec = 0.0;
        for (int l = 0; l <= band_limit; ++l) rec += z.coeffs_[l] * p[l];
        res = std::max(res, std::abs(rec - values[i]));
    }
    z.residual_ = res;
    return z;
}

ZonalSeries ZonalSeries::from_coeffs(std::vector<double> coeffs) {
    if (coeffs.empty()) coeffs.push_back(0.0);
    ZonalSeries z;
    z.coeffs_ = std::move(coeffs);
    return z;
}

double ZonalSeries::eval(double theta) const {
    const int lmax = band_limit();
    std::vector<double> p(lmax + 1);
    legendre_values(lmax, std::cos(theta), p);
    double f = 0.0;
    for (int l = 0; l <= lmax; ++l) f += coeffs_[l] * p[l];
    return f;
}

void ZonalSeries::eval_derivs(double theta, double& f, double& df, double& d2f) const {
    const int lmax = band_limit();
    const double x = std::cos(theta);
    const double s = std::sin(theta);
    std::vector<double> p(lmax + 1), dp(lmax + 1), d2p(lmax + 1);
    legendre_derivs(lmax, x, p, dp, d2p);
    double v = 0.0, vx = 0.0, vxx = 0.0;
    for (int l = 0; l <= lmax; ++l) {
        v += coeffs_[l] * p[l];
        vx += coeffs_[l] * dp[l];
        vxx += coeffs_[l] * d2p[l];
    }
    f = v;
    // chain rule through x = cos(theta)
    df = -s * vx;
    d2f = s * s * vxx - x * vx;
}

}  // namespace renvol
