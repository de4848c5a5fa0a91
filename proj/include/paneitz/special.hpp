#pragma once

#include <vector>

namespace paneitz {

// Lanczos approximation (g = 7, nine terms) with reflection; relative error
// below 1e-13 on the real line away from the poles.
double gamma_fn(double x);
// 1/Gamma, zero at the non-positive integers.
double rgamma(double x);
double lgamma_fn(double x);
// Gamma(a)/Gamma(b); 0 when b is a pole and a is not.
double gamma_ratio(double a, double b);

struct Quadrature {
    std::vector<double> nodes, weights;
};

// Gauss-Jacobi rule on [-1,1] for the weight (1-x)^alpha (1+x)^beta
// (Golub-Welsch).
Quadrature gauss_jacobi(int m, double alpha, double beta);

}  // namespace paneitz
