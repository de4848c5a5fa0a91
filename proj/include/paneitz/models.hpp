#pragma once

#include <functional>
#include <vector>

#include "paneitz/solver.hpp"

namespace paneitz {

// Decaying biharmonic extension of one flat Fourier mode:
// u(y) = (a + b y) e^{-|xi| y}, a = f, b = |xi| f - psi.
struct FourierProfile {
    double xi = 0.0, a = 0.0, b = 0.0;
    double b2 = 0.0, b3 = 0.0;  // 2|xi| psi and 2|xi|^3 f
    double operator()(double y) const;
};
FourierProfile flat_fourier_extension(double xi, double f, double psi);

// Mode e^{i xi x} w(y) of the scattering problem on the upper half-space
// model of hyperbolic space, g+ = y^{-2}(dy^2 + dx^2), at gamma in {1/2, 3/2}:
// w = y^{n/2 - gamma} h(y), h = datum + second y^2 + ... + G y^{2 gamma} + ...
struct ScatteringExpansion {
    double gamma = 0.5;
    int n = 2;
    double xi = 0.0;
    double leading = 0.0;
    double second = 0.0;  // y^2 coefficient of h (gamma = 3/2), 0 otherwise
    double G = 0.0;
    // P1 = -G_psi / psi, P3 = 3 G_f / f
    double multiplier() const;
    double operator()(double y) const;  // w(y)
};
ScatteringExpansion hyperbolic_scattering(double gamma, int n, double xi, double datum);
// Same coefficients from a Chebyshev solve of the reduced ODE
// -y h'' + (2 gamma - 1) h' + xi^2 y h = 0, h(0) = datum, h'(Y) = 0.
ScatteringExpansion scattering_by_ode(double gamma, int n, double xi, double datum, int nodes = 40);

struct FactorizationResidual {
    // max |L4 v| over nodes at least 8 from the y-faces; the identity is
    // interior and the face closures are one-sided
    double paneitz = 0.0;
    double full_chart = 0.0;  // same over every node
    double factor = 0.0;      // the annihilating second-order factor, interior
    double constant = 0.0;    // (n^2-9)/4 for gamma = 3/2, (n^2-1)/4 for 1/2
    double scale = 0.0;       // max |v|
};
// Applies L4 of the hyperbolic metric, assembled by the operators module on
// the chart [1,2] x (period 2 pi/|xi|, or 1) x T^{n-1}, to cos(xi x1) w(y);
// `nodes` per axis on the first two, 10 on the rest.
FactorizationResidual factorization_residual(const ScatteringExpansion& v, int nodes = 65);

// Gamma(l + n/2 + k/2) / Gamma(l + n/2 - k/2).
double hemisphere_spectrum(int n, int ell, int k);
// (l + (n-1)/2)^k: the flat symbol |xi|^k carried to S^n by stereographic
// projection, which the spectrum approaches as l grows.
double transported_flat_symbol(int n, int ell, int k);

struct SharpConstant {
    int n = 0, k = 0;
    double value = 0.0;
};
SharpConstant sharp_constant(int n, int k);
// Fractional Sobolev constant C_{2 gamma} on S^n.
double beckner_constant(int n, double gamma);

double sphere_volume(int m);  // |S^m|
double gegenbauer(int l, double lambda, double s);
// oint_{S^n} C_l^{(n-1)/2}(x . e)^2
double zonal_norm_sq(int n, int l);

// f(x) = sum_l c[l] C_l^{(n-1)/2}(x . e) on S^n.
struct ZonalDatum {
    int n = 4;
    std::vector<double> c;
    double operator()(double s) const;
};
double lp_norm(const ZonalDatum& f, double p);
// coefficients by Gauss-Gegenbauer projection
ZonalDatum project_zonal(int n, int lmax, const std::function<double(double)>& fn);

enum class BubbleKind { F, Psi };
// a (1 + xi . x)^{-(n-3)/2} (F) or a (1 + xi . x)^{-(n-1)/2} (Psi), zonal
// about the direction of xi; requires |xi| < 1.
ZonalDatum extremal_family(int n, BubbleKind kind, double a, double xi, int lmax = 30);

struct SobolevDeficit {
    double lhs = 0.0;   // the hemisphere interior energy
    double rhs = 0.0;   // boundary cross term + C3 |f|^2 + C1 |psi|^2
    double deficit = 0.0;
    double energy = 0.0;
    double quotient = 0.0;  // energy / |f|^2_{2n/(n-3)} (0 if f = 0)
};
// u given mode by mode: modes[l] is a hemisphere profile of degree l.
SobolevDeficit sobolev_deficit(int n, const std::vector<Profile>& modes);
// u the Paneitz-harmonic extension of (f, psi).
SobolevDeficit sobolev_deficit(const ZonalDatum& f, const ZonalDatum& psi);

// E4(u)/2 - (oint f P3 f + oint psi P1 psi) for one model mode, with the
// multipliers from the closed forms.
double extension_deficit(const Profile& u);
// int (Delta u)^2 - (2|xi|^3 f^2 - 4|xi|^2 f psi + 2|xi| psi^2) on a flat mode.
double flat_biharmonic_deficit(const Profile& u);

}  // namespace paneitz
