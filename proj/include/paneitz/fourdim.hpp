#pragma once

#include <vector>

#include "paneitz/check.hpp"
#include "paneitz/conformal.hpp"
#include "paneitz/geometry.hpp"
#include "paneitz/models.hpp"
#include "paneitz/solver.hpp"

// Four-manifolds with boundary (n = 3). Chart functions take a dim-4
// geometry and throw std::invalid_argument otherwise; boundary integrals run
// over both faces of the chart.
namespace paneitz {

void require_four_dimensional(const Geometry& g);

// max |e^{k sigma} T-hat_k - T_k - B_k sigma| over both faces, k = 1, 2, 3.
NamedValues t_prescription_residuals(const Geometry& g, const Geometry& gh, const Field& sigma);

// int Q4 + oint T_3^3.
double total_q(const Geometry& g);

// Chang-Qing boundary operators and curvature.
struct ChangQingBoundary {
    Field P3, P32, T;
};
ChangQingBoundary chang_qing_operators(const Boundary& b, const Field& u);

struct FunctionalValues {
    double F = 0.0, G = 0.0;
    NamedValues F_terms, G_terms;  // each sums to its functional
};
FunctionalValues functionals(const Geometry& g, const Field& u);

// b_2(u) and D(u) of the Chang-Qing determinant formula.
struct ChangQingFunctionals {
    double b2 = 0.0, D = 0.0;
};
ChangQingFunctionals chang_qing_functionals(const Geometry& g, const Field& u);
// 4 b2 + D/3 - (F - G) = oint [|A0|^2 psi / 4 - 8 (<W(eta,.,eta,.), A0> + (2/3) tr A0^3) f].
double chang_qing_correction(const Geometry& g, const Field& u);

// Gauss-Bonnet-Chern integrand totals: int (|W|^2 + Q4) + oint (T_3^3 - (2/3) tr A0^3),
// with |W|^2 = W_abcd W^abcd / 4.
struct GaussBonnet {
    double weyl = 0.0, q = 0.0, t = 0.0, a0 = 0.0;
    double total() const { return weyl + q + t - a0; }
};
GaussBonnet gauss_bonnet(const Geometry& g);

// Every chart-level identity of the n = 3 theory on one grid, sharing the
// geometry of g and of e^{2 sigma} g:
//   T1..T3 prescription, total Q invariance, Chang-Qing P3 / P3^2 / T,
//   the b2 + D comparison, the F and G cocycles (u = sigma, v = v) and
//   Gauss-Bonnet against 8 pi^2 chi with chi(T^3 x I) = 0.
NamedValues fourdim_chart_residuals(const ChartGrid& grid, const MetricField& g, const Field& sigma, const Field& v);
// Refinement reports for the above on a seeded draw (sigma = draw.sigma,
// v = draw.u). Total Q invariance passes at tolerance 1e-4 on the finest grid.
std::vector<CheckReport> check_fourdim(const GridFn& grid, const ConformalDraw& draw, const std::vector<int>& sizes,
                                       const std::string& tag = "");

// The T-curvature of the boundary of a separable model: v solves
// P4 v + Q4 = 0, v = 0 and B_1^3 v + H/3 = 0, and T = T-hat_3^3 / 2.
enum class FourModel { FlatSlab, Hemisphere };
struct TCurvatureResult {
    FourModel model = FourModel::Hemisphere;
    Profile v;
    double T = 0.0;  // constant on the boundary of both models
    double total = 0.0;  // oint T over a unit-area torus (slab) or the unit S^3
    double residual_interior = 0.0, residual_v = 0.0, residual_b1 = 0.0;
    int chi = 0;
    double gauss_bonnet = 0.0;  // int |W|^2 + 2 oint T - (2/3) oint tr A0^3
};
TCurvatureResult compute_t_curvature(FourModel model);

// Q3 of the round S^3 from the scattering log solution on hyperbolic 4-space,
// v = log r + A + B r^3 with -Delta v = 3 and Q3 = 3 B on the boundary.
double q3_by_scattering(int nodes = 32);

// e^{3w} T-hat - T - P3 w on the hemisphere for a zonal boundary rescaling w
// (n = 3), max over the sphere.
double t_curvature_transformation_residual(const ZonalDatum& w);

// Critical-point systems for g-hat = e^{2u} g.
struct CriticalResiduals {
    NamedValues values;  // name -> max residual of each condition
};
// Vol(M) = 1, Q-hat = 0, T-hat_2 = 0, T-hat_3 = int Q4 + oint T_3^3.
CriticalResiduals critical_residuals_f(const Geometry& g, const Field& u);
// 2 B-hat_1 T-hat_1 + T-hat_2 for u in ker L4 on the round hemisphere with
// zonal data (f, psi); decoupling of every mode is verified first.
CriticalResiduals critical_residuals_g(const ZonalDatum& f, const ZonalDatum& psi);

struct CriticalSharpDeficit {
    double lhs = 0.0;      // int (Delta u)^2 + 2 |grad u|^2 over the hemisphere
    double rhs = 0.0;
    double deficit = 0.0;
    double beckner_f = 0.0;    // oint f P3 f - (8 pi^2/3) log(oint e^{3(f - fbar)} / 2 pi^2)
    double beckner_psi = 0.0;  // oint psi P1 psi - (2 pi^2)^{1/3} (oint |psi|^3)^{2/3}
};
// u given mode by mode on the round upper hemisphere of S^4. The logarithmic
// term is (16 pi^2/3) log(oint e^{3(f - fbar)} / 2 pi^2): with this exponent it
// is sharp, with equality for f = a - log(1 + x . xi) and psi = b / (1 + x . xi).
CriticalSharpDeficit critical_sharp_deficit(const std::vector<Profile>& modes);
// u the Paneitz-harmonic extension of zonal (f, psi) on S^3.
CriticalSharpDeficit critical_sharp_deficit(const ZonalDatum& f, const ZonalDatum& psi);

}  // namespace paneitz
