#pragma once

#include <vector>

namespace renvol {

/// Gauss-Legendre nodes and weights on [-1, 1], nodes ascending.
struct Quadrature {
    std::vector<double> x;
    std::vector<double> w;

    int size() const { return static_cast<int>(x.size()); }
};

Quadrature gauss_legendre(int n);

/// Gauss-Legendre rule mapped to [a, b].
Quadrature gauss_legendre(int n, double a, double b);

}  // namespace renvol
