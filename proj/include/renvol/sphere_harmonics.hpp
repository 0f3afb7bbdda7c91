#pragma once

#include <memory>
#include <vector>

#include "renvol/quadrature.hpp"

namespace renvol {

/// Real spherical-harmonic coefficients up to degree L.
/// cos-coefficients a(l,m) for m in [0,l], sin-coefficients b(l,m) for m in [1,l].
struct SphCoeffs {
    int L = 0;
    std::vector<double> a;  // size (L+1)(L+2)/2
    std::vector<double> b;  // same layout; m = 0 slots stay zero

    explicit SphCoeffs(int L_ = 0);
    static int index(int l, int m) { return l * (l + 1) / 2 + m; }
    double& ca(int l, int m) { return a[index(l, m)]; }
    double& cb(int l, int m) { return b[index(l, m)]; }
    double ca(int l, int m) const { return a[index(l, m)]; }
    double cb(int l, int m) const { return b[index(l, m)]; }
};

/// Transform tables for a Gauss-Legendre (colatitude) x uniform (longitude)
/// grid. The basis is orthonormal; analysis and synthesis are exact for
/// band-limited data when n_theta >= L+1 and n_phi >= 2L+1.
class SphereHarmonics {
  public:
    SphereHarmonics(int L, int n_theta, int n_phi);

    int L() const { return L_; }
    int n_theta() const { return n_theta_; }
    int n_phi() const { return n_phi_; }
    int grid_size() const { return n_theta_ * n_phi_; }
    const Quadrature& nodes() const { return nodes_; }
    double theta(int i) const { return theta_[i]; }
    double phi(int j) const { return 2.0 * 3.14159265358979323846 * j / n_phi_; }

    SphCoeffs analyze(const std::vector<double>& grid) const;
    std::vector<double> synthesize(const SphCoeffs& c) const;
    /// Laplace-Beltrami of the unit round sphere applied spectrally.
    std::vector<double> synthesize_laplacian(const SphCoeffs& c) const;
    /// Point evaluation away from the grid (used by oracles).
    double eval(const SphCoeffs& c, double theta, double phi) const;

    /// integral over S^2 with the round measure
    double integrate(const std::vector<double>& grid) const;
    /// quadrature weight of grid node (i, j)
    double weight(int i) const { return nodes_.w[i] * phi_weight_; }

    /// shared instances keyed by (L, n_theta, n_phi)
    static std::shared_ptr<const SphereHarmonics> get(int L, int n_theta, int n_phi);

  private:
    int L_, n_theta_, n_phi_;
    Quadrature nodes_;
    std::vector<double> theta_;
    double phi_weight_;
    // normalized associated Legendre values, [node][SphCoeffs::index(l,m)]
    std::vector<double> plm_;
    // trig tables, [m][j]
    std::vector<double> cos_mphi_, sin_mphi_;

    void fill_plm_row(double x, double* row) const;
};

/// Dirichlet energy int |grad f|^2 dvol_0 = sum l(l+1) (a^2 + b^2).
double dirichlet_energy(const SphCoeffs& c);
/// int f dvol_0 = sqrt(4 pi) a(0,0).
double mean_integral(const SphCoeffs& c);

}  // namespace renvol
