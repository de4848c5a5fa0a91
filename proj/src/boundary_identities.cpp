#include <algorithm>

#include "paneitz/geometry.hpp"

namespace paneitz {

namespace {

double max_diff(const Field& a, const Field& b) {
    double m = 0.0;
    for (std::size_t k = 0; k < a.size(); ++k) m = std::max(m, std::abs(a[k] - b[k]));
    return m;
}

}  // namespace

BoundaryIdentityResiduals boundary_identity_residuals(const Boundary& b, const Field& u, const Field& v) {
    const Geometry& g = b.bulk();
    const int d = g.dim();
    const int n = b.n();
    const std::size_t M = b.count();
    const auto& h = b.h();
    BoundaryIdentityResiduals r;

    // J = Jbar + P(eta,eta) - H^2/2n + |A0|^2/2(n-1)
    {
        Field rhs(M);
        for (std::size_t p = 0; p < M; ++p)
            rhs[p] = b.Jbar()[p] + b.Pnn()[p] - b.H()[p] * b.H()[p] / (2.0 * n) +
                     (n > 1 ? b.A0sq()[p] / (2.0 * (n - 1)) : 0.0);
        r.gauss_trace = max_diff(b.J(), rhs);
    }
    if (n >= 3) {
        const auto W = b.weyl_nn();
        const auto A02 = b.square(b.A0());
        double m = 0.0;
        for (int s = 0; s < sym_count(n); ++s)
            for (std::size_t p = 0; p < M; ++p) {
                const double H = b.H()[p];
                const double rhs = b.Pbar()[s][p] - H / n * b.A0()[s][p] - H * H / (2.0 * n * n) * h[s][p] +
                                   (W[s][p] + A02[s][p] - b.A0sq()[p] / (2.0 * (n - 1)) * h[s][p]) / (n - 2);
                m = std::max(m, std::abs(b.P()[s][p] - rhs));
            }
        r.gauss_tensor = m;
    }
    {
        const auto divA = b.div_sym(b.A());
        const auto dH = b.grad(b.H());
        double m = 0.0;
        for (int a = 0; a < n; ++a)
            for (std::size_t p = 0; p < M; ++p)
                m = std::max(m, std::abs(divA[a][p] - (n - 1) * b.Peta()[a][p] - dH[a][p]));
        r.codazzi = m;
    }

    const Field uf = b.restrict(u), vf = b.restrict(v);
    const Field eta_u = b.normal(u), eta_v = b.normal(v);
    const Field hnn = b.hess_nn(u);
    {
        const Field lap = b.restrict(g.laplacian(u));
        const Field lbar = b.lap(uf);
        Field rhs(M);
        for (std::size_t p = 0; p < M; ++p) rhs[p] = lbar[p] + hnn[p] + b.H()[p] * eta_u[p];
        r.laplacian_split = max_diff(lap, rhs);
    }
    {
        const auto Hf = b.hess_face(u);
        const ChartGrid& grid = g.grid();
        Field lhs(M, 0.0);
        for (std::size_t p = 0; p < M; ++p) {
            const std::size_t q = b.node(p);
            std::vector<double> dv(d), up(d, 0.0);
            for (int k = 0; k < d; ++k) dv[k] = partial_at(grid, v, q, k, 1);
            for (int j = 0; j < d; ++j)
                for (int k = 0; k < d; ++k) up[j] += g.ginv()[sym(j, k, d)][q] * dv[k];
            for (int i = 0; i < d; ++i)
                for (int j = 0; j < d; ++j) lhs[p] += b.eta()[i][p] * Hf[sym(i, j, d)][p] * up[j];
        }
        const Field t1 = b.dot(eta_u, vf);
        const Field t3 = b.bilinear(b.A(), uf, vf);
        Field rhs(M);
        for (std::size_t p = 0; p < M; ++p) rhs[p] = t1[p] + eta_v[p] * hnn[p] - t3[p];
        r.hessian_normal = max_diff(lhs, rhs);
    }
    {
        const Field lhs = b.normal(g.laplacian(u));
        const Field t3 = b.third_nnn(u);
        const Field lbar_eta = b.lap(eta_u);
        const auto du = b.grad(uf);
        std::vector<Field> Adu(n, Field(M, 0.0));
        for (int a = 0; a < n; ++a)
            for (int c = 0; c < n; ++c)
                for (int e = 0; e < n; ++e)
                    for (std::size_t p = 0; p < M; ++p)
                        Adu[a][p] += b.A()[sym(a, c, n)][p] * b.hinv()[sym(c, e, n)][p] * du[e][p];
        const Field divAdu = b.div(Adu);
        const Field dHdu = b.dot(b.H(), uf);
        Field rhs(M);
        for (std::size_t p = 0; p < M; ++p) {
            const double H = b.H()[p];
            const double c = b.Jbar()[p] + n * b.Pnn()[p] + H * H / (2.0 * n) +
                             (n > 1 ? (2.0 * n - 1) / (2.0 * (n - 1)) * b.A0sq()[p] : 0.0);
            rhs[p] = t3[p] + H * hnn[p] + lbar_eta[p] - 2.0 * divAdu[p] + dHdu[p] - c * eta_u[p];
        }
        r.normal_laplacian = max_diff(lhs, rhs);
    }
    return r;
}

std::vector<CheckReport> verify_boundary_identities(const GridFn& grid, const MetricFn& metric,
                                                    const FieldFn& u, const FieldFn& v,
                                                    const std::vector<int>& sizes) {
    std::vector<double> gc, lap, hes, nl;
    for (int N : sizes) {
        const ChartGrid cg = grid(N);
        const Geometry geo(cg, metric(cg));
        const Field uu = u(cg), vv = v(cg);
        BoundaryIdentityResiduals worst;
        for (int face = 0; face < 2; ++face) {
            const Boundary b(geo, face);
            const auto r = boundary_identity_residuals(b, uu, vv);
            worst.gauss_trace = std::max({worst.gauss_trace, r.gauss_trace, r.gauss_tensor, r.codazzi});
            worst.laplacian_split = std::max(worst.laplacian_split, r.laplacian_split);
            worst.hessian_normal = std::max(worst.hessian_normal, r.hessian_normal);
            worst.normal_laplacian = std::max(worst.normal_laplacian, r.normal_laplacian);
        }
        gc.push_back(worst.gauss_trace);
        lap.push_back(worst.laplacian_split);
        hes.push_back(worst.hessian_normal);
        nl.push_back(worst.normal_laplacian);
    }
    return {refinement_check("boundary.gauss_codazzi", "Gauss-Codazzi equations in Schouten form", sizes, gc),
            refinement_check("boundary.laplacian_split", "Laplacian = tangential + normal Hessian + H d_eta", sizes, lap),
            refinement_check("boundary.hessian_normal", "Hessian(eta, grad v) decomposition", sizes, hes),
            refinement_check("boundary.normal_laplacian", "normal derivative of the Laplacian", sizes, nl)};
}

}  // namespace paneitz
