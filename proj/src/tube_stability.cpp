#include "renvol/tube_stability.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include <Eigen/Dense>

namespace renvol {

namespace {

constexpr double kPi = std::numbers::pi;

double potential(double a) { return a * a + 1.0 / (a * a + 1.0) - 1.0; }

// lowest eigenvalues of the radial operator for one angular mode
std::vector<double> radial_spectrum_fd(const TubeSpec& spec, int grid_n, int n_mode) {
    const double c = spec.a * spec.a / (1.0 + spec.a * spec.a);
    const double shift = potential(spec.a) - spec.a * spec.a * n_mode * n_mode;
    const double h = spec.lambda / grid_n;
    const double off = c / (h * h);

    Eigen::VectorXd eig;
    if (spec.bc == TubeBC::Neumann) {
        // cell-centered grid with mirror boundaries: symmetric tridiagonal
        Eigen::VectorXd diag(grid_n), sub(grid_n - 1);
        for (int j = 0; j < grid_n; ++j) {
            const bool boundary = (j == 0 || j == grid_n - 1);
            diag[j] = shift - (boundary ? 1.0 : 2.0) * off;
        }
        sub.setConstant(off);
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver;
        solver.computeFromTridiagonal(diag, sub, Eigen::EigenvaluesOnly);
        eig = solver.eigenvalues();
    } else {
        Eigen::MatrixXd M = Eigen::MatrixXd::Zero(grid_n, grid_n);
        for (int j = 0; j < grid_n; ++j) {
            M(j, j) = shift - 2.0 * off;
            M(j, (j + 1) % grid_n) += off;
            M(j, (j + grid_n - 1) % grid_n) += off;
        }
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(M, Eigen::EigenvaluesOnly);
        eig = solver.eigenvalues();
    }
    // L phi = -lambda phi: flip sign, then sort ascending
    std::vector<double> out(eig.size());
    for (int j = 0; j < eig.size(); ++j) out[j] = -eig[j];
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace

TubeSpec::TubeSpec(double a_, double lambda_, TubeBC bc_) : a(a_), lambda(lambda_), bc(bc_) {
    if (!(a > 0.0)) throw std::invalid_argument("TubeSpec: a must be > 0");
    if (!(lambda > 0.0)) throw std::invalid_argument("TubeSpec: lambda must be > 0");
}

std::vector<double> jacobi_eigenvalues(const TubeSpec& spec, int m_max, int n_max) {
    if (m_max < 1 || n_max < 1)
        throw std::invalid_argument("jacobi_eigenvalues: m_max, n_max must be >= 1");
    const double a2 = spec.a * spec.a;
    const double c = a2 / (1.0 + a2);
    const double pot = potential(spec.a);
    std::vector<double> out;
    for (int m = 0; m <= m_max; ++m) {
        const double mu = spec.bc == TubeBC::Neumann
                              ? std::pow(m * kPi / spec.lambda, 2)
                              : std::pow(2.0 * m * kPi / spec.lambda, 2);
        const int radial_mult = (spec.bc == TubeBC::Periodic && m >= 1) ? 2 : 1;
        for (int n = 0; n <= n_max; ++n) {
            const double lam = c * mu + a2 * n * n - pot;
            const int mult = radial_mult * (n >= 1 ? 2 : 1);
            for (int k = 0; k < mult; ++k) out.push_back(lam);
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<double> jacobi_eigenvalues_fd(const TubeSpec& spec, int grid_n, int n_max,
                                          int count) {
    if (grid_n < 64) throw std::invalid_argument("jacobi_eigenvalues_fd: grid_n must be >= 64");
    if (n_max < 0) throw std::invalid_argument("jacobi_eigenvalues_fd: n_max must be >= 0");
    std::vector<double> out;
    for (int n = 0; n <= n_max; ++n) {
        std::vector<double> spec_n = radial_spectrum_fd(spec, grid_n, n);
        const int take = std::min<int>(count, static_cast<int>(spec_n.size()));
        for (int j = 0; j < take; ++j) {
            out.push_back(spec_n[j]);
            if (n >= 1) out.push_back(spec_n[j]);  // angular multiplicity
        }
    }
    std::sort(out.begin(), out.end());
    if (static_cast<int>(out.size()) > count) out.resize(count);
    return out;
}

StabilityThreshold stability_threshold(double lambda, TubeBC bc) {
    if (!(lambda > 0.0)) throw std::invalid_argument("stability_threshold: lambda must be > 0");
    StabilityThreshold t;
    t.a_max = (bc == TubeBC::Neumann ? kPi : 2.0 * kPi) / lambda;
    t.R_min = std::log((1.0 + std::sqrt(t.a_max * t.a_max + 1.0)) / t.a_max);
    return t;
}

}  // namespace renvol
