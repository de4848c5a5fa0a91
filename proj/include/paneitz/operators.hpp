#pragma once

#include <stdexcept>

#include "paneitz/geometry.hpp"

namespace paneitz {

struct WeightError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// Interior operators.
Field conformal_laplacian(const Geometry& g, const Field& u);  // L2
Field paneitz_operator(const Geometry& g, const Field& u);              // L4

// Boundary derivatives of u that the boundary operators are built from.
struct BoundaryJet {
    Field f;          // u restricted
    Field eta_u;      // eta u
    Field hess_nn;    // nabla^2 u(eta, eta)
    Field lap_bar;    // Delta-bar f
    Field eta_lap;    // eta Delta u
    Field lap_bar_eta;  // Delta-bar (eta u)
    Field a0_hess;    // <A0, nabla-bar^2 f>
    Field gradH_du;   // <grad-bar H, grad-bar f>
};
// lap_u: optional precomputed bulk Laplacian of u, shared between faces.
BoundaryJet boundary_jet(const Boundary& b, const Field& u, int max_order = 3, const Field* lap_u = nullptr);

// Scalar boundary curvatures. The Paneitz-weight ones are always filled;
// S2w/T3w only when a generic weight was requested.
struct BoundaryCurvatures {
    Field S23, T13, T23, T23_tilde, T33;
    Field S2w, T3w;
    double w = 0.0;
    bool has_generic = false;
};
BoundaryCurvatures boundary_curvatures(const Boundary& b);
BoundaryCurvatures boundary_curvatures(const Boundary& b, double w);

// Throws WeightError when the k = 3 family is singular at w (w = 1 or n + 2w - 4 = 0).
void check_weight(int k, double w, int n);
inline double paneitz_weight(int n) { return -(n - 3) / 2.0; }

// B_k^1 (k in {0,1}).
Field robin(const Boundary& b, int k, const Field& u);
Field robin(const Boundary& b, int k, const BoundaryJet& jet);

// Weight families B_{k,w}, k in {0,1,2,3}.
Field boundary_family(const Boundary& b, int k, double w, const Field& u);
Field boundary_family(const Boundary& b, const BoundaryCurvatures& c, int k, double w, const BoundaryJet& jet);

// B_k^3, k in {0,1,2,3}.
Field paneitz_boundary(const Boundary& b, int k, const Field& u);
Field paneitz_boundary(const Boundary& b, const BoundaryCurvatures& c, int k, const BoundaryJet& jet);

}  // namespace paneitz
