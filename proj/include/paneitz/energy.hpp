#pragma once

#include <string>
#include <utility>
#include <vector>

#include "paneitz/check.hpp"
#include "paneitz/conformal.hpp"
#include "paneitz/geometry.hpp"

namespace paneitz {

struct EnergyReport {
    double route_a = 0.0;  // literal pairing with the boundary operators
    double route_b = 0.0;  // symmetric first-order form
    double discrepancy = 0.0;
    NamedValues terms_a, terms_b;  // each sums to its route
};

// Q4(u,v) = int u L4 v + sum over faces of (B0 u B3 v + B1 u B2 v).
EnergyReport q4_pairing(const Geometry& g, const Field& u, const Field& v);
// Q2(u,v) = int u L2 v + sum over faces of f B1^1 v.
EnergyReport q2_pairing(const Geometry& g, const Field& u, const Field& v);

struct ReillyResult {
    double hessian_norm = 0.0;  // int |Hess u|^2
    double recast = 0.0;        // right-hand side written through B0^3 u and B1^3 u
    double residual = 0.0;
};
ReillyResult reilly(const Geometry& g, const Field& u);

// Route agreement and symmetry of Q4 and Q2 under refinement.
std::vector<CheckReport> check_energy(const GridFn& grid, const ConformalDraw& draw, const std::vector<int>& sizes,
                                      const std::string& tag = "");
// E4(u; e^{2 sigma} g) = E4(e^{(n-3) sigma/2} u; g).
CheckReport check_energy_covariance(const GridFn& grid, const ConformalDraw& draw, const std::vector<int>& sizes,
                                    const std::string& tag = "");
CheckReport reilly_check(const GridFn& grid, const ConformalDraw& draw, const std::vector<int>& sizes,
                         const std::string& tag = "");

enum class Constraint { Y41, Y42 };

struct EulerResiduals {
    double interior = 0.0;    // |L4 u|
    double constraint = 0.0;  // |B1^3 u| for Y41, |B2^3 u| for Y42
    double top = 0.0;         // |B3^3 u - lambda u^{(n+3)/(n-3)}|
};
// Max-norm residuals of the Euler-Lagrange system; requires n >= 4 and a
// positive boundary trace (throws std::domain_error otherwise).
EulerResiduals euler_residuals(const Geometry& g, const Field& u, double lambda, Constraint c);
CheckReport euler_residual(const Geometry& g, const Field& u, double lambda, Constraint c, double tol = 1e-8);

}  // namespace paneitz
