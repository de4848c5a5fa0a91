#pragma once

#include <Eigen/Dense>
#include <functional>
#include <stdexcept>
#include <vector>

#include "paneitz/check.hpp"

namespace paneitz {

// Separable reductions of the extension problem.
//
// Flat: the half-space {y > 0} with boundary y = 0 and a tangential Fourier
// mode of frequency |xi|; the profile a(y) lives on [0, length] and is clamped
// (a = a' = 0) at the far end. With |xi| > 0 and length 0 the interval is
// truncated at 20/|xi|. |xi| = 0 needs an explicit slab length.
//
// Hemisphere: the upper hemisphere of the round (n+1)-sphere, boundary the
// equator, and a mode a(theta) Y_l with Y_l a degree-l harmonic on S^n. The
// reduced unknown is p(t), t = cos(theta) in [0,1] (t = 0 the boundary, t = 1
// the pole), with a = (1 - t^2)^{l/2} p, which builds in pole regularity.
enum class Model { Flat, Hemisphere };

struct SeparableProblem {
    Model model = Model::Flat;
    double xi = 1.0;
    int ell = 0;
    int n = 4;
    int nodes = 32;  // Chebyshev intervals
    double length = 0.0;
    // Hemisphere only: false drops the lower-order terms of L4 and of the
    // energy, leaving the bi-Laplacian of the round metric.
    bool lower_order = true;

    static SeparableProblem flat(double xi, int nodes = 32, double length = 0.0);
    // nodes = 0 picks a count suited to ell
    static SeparableProblem hemisphere(int n, int ell, int nodes = 0);
};

class SolverError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};
class IndefiniteError : public SolverError {
  public:
    using SolverError::SolverError;
};

// Chebyshev interpolant of the reduced unknown (a for Flat, p for Hemisphere)
// on the problem's nodes; node 0 is the boundary end.
struct Profile {
    SeparableProblem problem;
    Eigen::VectorXd values;

    // Reduced variable of node j: y for Flat, t for Hemisphere.
    double node(int j) const;
    double reduced(double s) const;
    // a at y (Flat) or theta (Hemisphere).
    double operator()(double r) const;
    double f() const;    // B0^3 u
    double psi() const;  // B1^3 u
};

// Sample a function of the reduced variable.
Profile sample_profile(const SeparableProblem& p, const std::function<double(double)>& fn);

struct ExtensionSolution {
    Profile u;
    double f = 0.0, psi = 0.0;
    // recomputed from u: componentwise backward error of L4 u = 0 at the
    // nodes, and the boundary mismatches relative to max(|f|, |psi|, 1)
    double residual_interior = 0.0, residual_b0 = 0.0, residual_b1 = 0.0;
    double b2 = 0.0, b3 = 0.0;  // B2^3 u, B3^3 u
    double energy = 0.0;
};

// Boundary images of a profile.
double apply_b2(const Profile& u);
double apply_b3(const Profile& u);
// max_j |(L4 u)_j - source| / (|L4| |u| + |source|)_j over the nodes.
double interior_residual(const Profile& u, double source = 0.0);

// Symmetric energy form per unit boundary mass of the mode.
double energy_form(const Profile& u, const Profile& v);
double energy(const Profile& u);
double mass(const Profile& u);  // int u^2

// Dense collocation solve of L4 u = 0, B0 u = f, B1 u = psi. Cross-checked
// against a solve with four more nodes; throws SolverError when the system is
// singular or the two disagree by more than 1e-7 in the boundary images.
// A nonzero source solves S1 S2 p = source instead, which is L4 a = source
// for flat modes and for the hemisphere at l = 0.
ExtensionSolution solve_extension(const SeparableProblem& p, double f, double psi, double source = 0.0);

struct Minimization {
    ExtensionSolution solution;
    double direct_energy = 0.0;  // energy of solve_extension's answer
    double energy_gap = 0.0;     // minimum minus direct
    double profile_gap = 0.0;    // max |a_min - a_direct| at the nodes
};

// Minimize the energy over u0 + span(basis); each basis element must lie in
// the kernel of B0^3 and B1^3 (std::invalid_argument otherwise). Throws
// IndefiniteError if the form is not positive on the span.
Minimization minimize_energy(const Profile& u0, const std::vector<Profile>& basis);
// Same with a default admissible u0 for (f, psi).
Minimization minimize_energy(const SeparableProblem& p, double f, double psi, const std::vector<Profile>& basis);
Profile admissible_profile(const SeparableProblem& p, double f, double psi);

// Mode multiplier of the induced operator: k = 1 gives B2^3 u_{0,1} / 2,
// k = 3 gives B3^3 u_{1,0} / 2.
double induced_operator(const SeparableProblem& p, int k);

// B2^3 u_{f,0} = 0 and B3^3 u_{0,psi} = 0, plus B2^3 u_{f,psi} = 2 B1 psi and
// B3^3 u_{f,psi} = 2 B3 f.
CheckReport check_decoupling(const SeparableProblem& p, double f, double psi, double tol = 1e-8);

// Smallest Rayleigh quotient E4(u) / int u^2 over polynomial profiles with
// B0^3 u = B1^3 u = 0 (and clamped at the far end of the flat model). Throws
// std::invalid_argument when the discrete space is empty.
double estimate_lambda1(const SeparableProblem& p);

}  // namespace paneitz
