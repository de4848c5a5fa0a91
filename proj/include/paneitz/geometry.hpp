#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <vector>

#include "paneitz/check.hpp"
#include "paneitz/grid.hpp"

namespace paneitz {

struct GeometryError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Symmetric (0,2) tensor field; components packed with sym().
struct MetricField {
    std::vector<Field> c;
    double at(std::size_t node, int i, int j, int d) const { return c[sym(i, j, d)][node]; }
};

MetricField flat_metric(const ChartGrid& grid);
MetricField conformal_metric(const ChartGrid& grid, const Field& phi);  // e^{2 phi} delta
MetricField rescale(const MetricField& g, const Field& sigma);        // e^{2 sigma} g
void check_spd(const ChartGrid& grid, const MetricField& g);

// Curvature package of (grid, g). Riemann is not stored; riemann_at()
// evaluates it at a node from finite differences of the Christoffel symbols.
class Geometry {
public:
    Geometry(const ChartGrid& grid, MetricField g);
    Geometry(const Geometry&) = delete;
    Geometry& operator=(const Geometry&) = delete;

    const ChartGrid& grid() const { return grid_; }
    int dim() const { return grid_.dim(); }
    int n() const { return grid_.dim() - 1; }  // boundary dimension
    const MetricField& metric() const { return g_; }
    const std::vector<Field>& ginv() const { return ginv_; }
    const Field& sqrtg() const { return sqrtg_; }
    const Field& gamma(int k, int i, int j) const { return gam_[k * S_ + sym(i, j, dim())]; }
    const Field& gamma_trace(int b) const { return C_[b]; }  // Gamma^a_{ab} = d_b log sqrt(g)
    const std::vector<Field>& ricci() const { return ric_; }
    const std::vector<Field>& schouten() const { return P_; }
    const Field& scalar() const { return R_; }
    const Field& J() const { return J_; }

    std::vector<Field> gradient(const Field& u) const;  // coordinate partials
    std::vector<Field> second_partials(const Field& u) const;  // packed
    std::vector<Field> hessian(const Field& u) const;          // covariant, packed
    Field laplacian(const Field& u) const;
    Field divergence(const std::vector<Field>& V) const;  // V given by contravariant components
    Field inner(const std::vector<Field>& du, const std::vector<Field>& dv) const;  // g^{ij}
    Field norm2_sym(const std::vector<Field>& T) const;   // |T|^2 of a packed symmetric 2-tensor

    // (4P - (n-1)J g)(grad u), raised index.
    std::vector<Field> paneitz_flux(const Field& u) const;
    const Field& q4() const;

    double integrate(const Field& u) const { return paneitz::integrate(grid_, u, &sqrtg_); }
    double volume() const;

    // R_{abcd} at one node (lowered), index ((a*d+b)*d+c)*d+e; convention
    // Ric_{bd} = R^a_{bad}.
    std::vector<double> riemann_at(std::size_t node) const;
    // R^a_{bcd} at one node.
    std::vector<double> riemann_up_at(std::size_t node) const;

private:
    const ChartGrid& grid_;
    int S_;
    MetricField g_;
    std::vector<Field> ginv_, gam_, C_, Gc_, ric_, P_;
    Field sqrtg_, R_, J_;
    mutable std::optional<Field> q4_;
};

// Extrinsic and intrinsic data of one boundary face.
class Boundary {
public:
    Boundary(const Geometry& bulk, int face);
    Boundary(const Boundary&) = delete;
    Boundary& operator=(const Boundary&) = delete;

    const Geometry& bulk() const { return bulk_; }
    const Geometry& intrinsic() const { return *intr_; }
    const ChartGrid& face_grid() const { return fgrid_; }
    int face() const { return face_; }
    int n() const { return bulk_.n(); }
    std::size_t count() const { return fgrid_.count(); }
    std::size_t node(std::size_t p) const { return off_ + p; }

    const std::vector<Field>& eta() const { return eta_; }  // eta^i
    const Field& eta_low0() const { return eta0_; }         // eta_0; other lower comps vanish
    const std::vector<Field>& A() const { return A_; }
    const std::vector<Field>& A0() const { return A0_; }
    const Field& H() const { return H_; }
    const Field& A0sq() const { return A0sq_; }
    const std::vector<Field>& h() const { return intr_->metric().c; }
    const std::vector<Field>& hinv() const { return intr_->ginv(); }
    const std::vector<Field>& Pbar() const { return Pbar_; }
    const Field& Jbar() const { return intr_->J(); }
    const Field& J() const { return J_; }
    const Field& Pnn() const { return Pnn_; }
    const Field& etaJ() const { return etaJ_; }
    const std::vector<Field>& Peta() const { return Peta_; }  // P(eta, e_a)
    const std::vector<Field>& P() const { return Ptan_; }     // P restricted to TM

    Field restrict(const Field& u) const;
    Field normal(const Field& u) const;   // eta u
    std::vector<Field> hess_face(const Field& u) const;  // bulk nabla^2 u at face nodes, packed
    Field hess_nn(const Field& u) const;  // nabla^2 u(eta, eta)
    Field third_nnn(const Field& u) const;  // nabla^3 u(eta, eta, eta)
    std::vector<Field> hess_tangential(const Field& u) const;  // nabla^2 u restricted to TM

    // Intrinsic operations on face fields.
    Field lap(const Field& f) const { return intr_->laplacian(f); }
    std::vector<Field> hess(const Field& f) const { return intr_->hessian(f); }
    std::vector<Field> grad(const Field& f) const { return intr_->gradient(f); }
    Field dot(const Field& a, const Field& b) const;  // <grad a, grad b>_h
    Field pair(const std::vector<Field>& S, const std::vector<Field>& T) const;  // <S,T>_h
    Field bilinear(const std::vector<Field>& S, const Field& a, const Field& b) const;  // S(grad a, grad b)
    Field div(const std::vector<Field>& covector) const;  // delta-bar of a one-form (h-raised)
    std::vector<Field> div_sym(const std::vector<Field>& T) const;  // (delta-bar T)_b
    Field trace_cube(const std::vector<Field>& T) const;  // tr_h T^3
    std::vector<Field> square(const std::vector<Field>& T) const;  // (T^2)_{ab} = T_a^c T_cb

    std::vector<Field> riemann_nn() const;  // R(eta, ., eta, .) on TM
    std::vector<Field> weyl_nn() const;     // W(eta, ., eta, .) on TM
    Field ric_nn() const;

    double integrate(const Field& f) const { return intr_->integrate(f); }

private:
    const Geometry& bulk_;
    int face_;
    double sign_;
    std::size_t off_;
    ChartGrid fgrid_;
    std::unique_ptr<Geometry> intr_;
    std::vector<Field> eta_, A_, A0_, Pbar_, Peta_, Ptan_;
    Field eta0_, H_, A0sq_, J_, Pnn_, etaJ_;
};

using GridFn = std::function<ChartGrid(int)>;
using MetricFn = std::function<MetricField(const ChartGrid&)>;
using FieldFn = std::function<Field(const ChartGrid&)>;

// Max-norm residuals of the boundary identities on one face: the
// Gauss-Codazzi equations, the Laplacian splitting, the normal/tangential
// Hessian decomposition and the normal derivative of the Laplacian.
struct BoundaryIdentityResiduals {
    double gauss_trace = 0, gauss_tensor = 0, codazzi = 0;
    double laplacian_split = 0, hessian_normal = 0, normal_laplacian = 0;
};
BoundaryIdentityResiduals boundary_identity_residuals(const Boundary& b, const Field& u, const Field& v);

std::vector<CheckReport> verify_boundary_identities(const GridFn& grid, const MetricFn& metric,
                                                    const FieldFn& u, const FieldFn& v,
                                                    const std::vector<int>& sizes);

}  // namespace paneitz
