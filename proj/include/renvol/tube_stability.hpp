#pragma once

#include <vector>

namespace renvol {

enum class TubeBC { Neumann, Periodic };

/// Tube of slope a about a geodesic, between two orthogonal geodesic planes a
/// hyperbolic distance lambda apart (Neumann, free boundary) or in the cyclic
/// quotient of translation length lambda (Periodic).
struct TubeSpec {
    double a;
    double lambda;
    TubeBC bc;

    TubeSpec(double a_, double lambda_, TubeBC bc_);
};

// Jacobi operator in the flat tube coordinates,
//   L = a^2/(1+a^2) d_rr + a^2 d_thth + (a^2 + 1/(a^2+1) - 1),
// eigenvalue convention L phi = -lambda phi. The constant mode always has
// lambda_1 = 1 - a^2 - 1/(a^2+1) < 0; stability means every other
// volume-admissible mode is nonnegative.

/// Analytic spectrum over radial modes m = 0..m_max and angular modes
/// n = 0..n_max, sorted ascending with multiplicities.
std::vector<double> jacobi_eigenvalues(const TubeSpec& spec, int m_max, int n_max);

/// Second-order finite-difference spectrum (the validation oracle): the 1-D
/// radial operator is discretized per angular mode with the requested boundary
/// condition; angular separation is exact. Sorted ascending with multiplicities.
std::vector<double> jacobi_eigenvalues_fd(const TubeSpec& spec, int grid_n, int n_max = 2,
                                          int count = 16);

struct StabilityThreshold {
    double a_max;  // pi/lambda (Neumann) or 2 pi/lambda (Periodic)
    double R_min;  // log((1 + sqrt(a_max^2+1)) / a_max) = asinh(1/a_max)
};
StabilityThreshold stability_threshold(double lambda, TubeBC bc);

}  // namespace renvol
