#include "paneitz/energy.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "paneitz/operators.hpp"

namespace paneitz {

namespace {

// T(grad u, grad v) for a packed covariant 2-tensor, given coordinate gradients.
Field tensor_on_gradients(const Geometry& g, const std::vector<Field>& T, const std::vector<Field>& du,
                          const std::vector<Field>& dv) {
    const int d = g.dim();
    const std::size_t N = g.grid().count();
    std::vector<Field> uu(d, Field(N, 0.0)), vv(d, Field(N, 0.0));
    for (int i = 0; i < d; ++i)
        for (int a = 0; a < d; ++a) {
            const Field& gi = g.ginv()[sym(i, a, d)];
            for (std::size_t k = 0; k < N; ++k) {
                uu[i][k] += gi[k] * du[a][k];
                vv[i][k] += gi[k] * dv[a][k];
            }
        }
    Field out(N, 0.0);
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) {
            const Field& t = T[sym(i, j, d)];
            for (std::size_t k = 0; k < N; ++k) out[k] += t[k] * uu[i][k] * vv[j][k];
        }
    return out;
}

Field product(const Field& a, const Field& b) {
    Field out(a.size());
    for (std::size_t k = 0; k < a.size(); ++k) out[k] = a[k] * b[k];
    return out;
}

double total(const NamedValues& terms) {
    double s = 0.0;
    for (const auto& t : terms) s += t.second;
    return s;
}

void add_term(NamedValues& terms, const std::string& name, double value) {
    for (auto& t : terms)
        if (t.first == name) {
            t.second += value;
            return;
        }
    terms.emplace_back(name, value);
}

EnergyReport finish(EnergyReport r) {
    r.route_a = total(r.terms_a);
    r.route_b = total(r.terms_b);
    r.discrepancy = std::abs(r.route_a - r.route_b);
    return r;
}

}  // namespace

EnergyReport q4_pairing(const Geometry& g, const Field& u, const Field& v) {
    const double n = g.n();
    if (n < 2) throw std::invalid_argument("q4_pairing: needs n >= 2");
    EnergyReport r;
    r.terms_a.emplace_back("interior", g.integrate(product(u, paneitz_operator(g, v))));

    const Field lu = g.laplacian(u), lv = g.laplacian(v);
    const auto du = g.gradient(u), dv = g.gradient(v);
    const auto flux = g.paneitz_flux(v);
    Field tflux(u.size(), 0.0);
    for (int i = 0; i < g.dim(); ++i)
        for (std::size_t k = 0; k < tflux.size(); ++k) tflux[k] += du[i][k] * flux[i][k];
    Field qterm(u.size());
    for (std::size_t k = 0; k < qterm.size(); ++k) qterm[k] = 0.5 * (n - 3) * g.q4()[k] * u[k] * v[k];
    r.terms_b.emplace_back("laplacians", g.integrate(product(lu, lv)));
    r.terms_b.emplace_back("schouten", -g.integrate(tflux));
    r.terms_b.emplace_back("q_curvature", g.integrate(qterm));

    for (int face = 0; face < 2; ++face) {
        const Boundary b(g, face);
        const BoundaryCurvatures c = boundary_curvatures(b);
        const BoundaryJet ju = boundary_jet(b, u, 3, &lu), jv = boundary_jet(b, v, 3, &lv);
        const Field f1 = ju.f, f2 = jv.f;
        const Field p1 = paneitz_boundary(b, c, 1, ju), p2 = paneitz_boundary(b, c, 1, jv);
        add_term(r.terms_a, "B0B3", b.integrate(product(f1, paneitz_boundary(b, c, 3, jv))));
        add_term(r.terms_a, "B1B2", b.integrate(product(p1, paneitz_boundary(b, c, 2, jv))));

        const std::size_t M = b.count();
        const Field g12 = b.dot(f1, p2), g21 = b.dot(f2, p1), ff = b.dot(f1, f2);
        const Field a0ff = b.bilinear(b.A0(), f1, f2);
        const Field lapH = b.lap(b.H());
        Field grads(M), mean(M), t2(M), tf(M), t3(M);
        for (std::size_t p = 0; p < M; ++p) {
            const double H = b.H()[p];
            grads[p] = 2 * g12[p] + 2 * g21[p];
            mean[p] = -2.0 / n * H * p1[p] * p2[p];
            t2[p] = 0.5 * (n - 3) * c.T23_tilde[p] * (f1[p] * p2[p] + f2[p] * p1[p]);
            tf[p] = -(4.0 / (n - 1) * a0ff[p] - 2.0 / n * H * ff[p]);
            t3[p] = 0.5 * (n - 3) * (2.0 / n * lapH[p] + c.T33[p] - (n - 3) / (2 * n) * H * c.T23_tilde[p]) * f1[p] * f2[p];
        }
        add_term(r.terms_b, "boundary_gradients", b.integrate(grads));
        add_term(r.terms_b, "boundary_mean_curvature", b.integrate(mean));
        add_term(r.terms_b, "boundary_T2", b.integrate(t2));
        add_term(r.terms_b, "boundary_tracefree", b.integrate(tf));
        add_term(r.terms_b, "boundary_T3", b.integrate(t3));
    }
    return finish(std::move(r));
}

EnergyReport q2_pairing(const Geometry& g, const Field& u, const Field& v) {
    const double n = g.n();
    EnergyReport r;
    r.terms_a.emplace_back("interior", g.integrate(product(u, conformal_laplacian(g, v))));
    const Field grad = g.inner(g.gradient(u), g.gradient(v));
    Field jt(u.size());
    for (std::size_t k = 0; k < jt.size(); ++k) jt[k] = 0.5 * (n - 1) * g.J()[k] * u[k] * v[k];
    r.terms_b.emplace_back("gradients", g.integrate(grad));
    r.terms_b.emplace_back("J", g.integrate(jt));
    for (int face = 0; face < 2; ++face) {
        const Boundary b(g, face);
        const Field f1 = b.restrict(u), f2 = b.restrict(v);
        add_term(r.terms_a, "boundary", b.integrate(product(f1, robin(b, 1, v))));
        Field h(b.count());
        for (std::size_t p = 0; p < h.size(); ++p) h[p] = (n - 1) / (2 * n) * b.H()[p] * f1[p] * f2[p];
        add_term(r.terms_b, "boundary_mean_curvature", b.integrate(h));
    }
    return finish(std::move(r));
}

ReillyResult reilly(const Geometry& g, const Field& u) {
    const double n = g.n();
    ReillyResult r;
    r.hessian_norm = g.integrate(g.norm2_sym(g.hessian(u)));
    const Field lu = g.laplacian(u);
    const auto du = g.gradient(u);
    const Field ric = tensor_on_gradients(g, g.ricci(), du, du);  // (n-1) P + J g
    Field bulk(u.size());
    for (std::size_t k = 0; k < bulk.size(); ++k) bulk[k] = lu[k] * lu[k] - ric[k];
    double rhs = g.integrate(bulk);
    const double c = (n - 3) / (2 * n);
    for (int face = 0; face < 2; ++face) {
        const Boundary b(g, face);
        const Field f = b.restrict(u);
        Field psi = b.normal(u);
        for (std::size_t p = 0; p < psi.size(); ++p) psi[p] += c * b.H()[p] * f[p];
        const Field gpf = b.dot(psi, f), Aff = b.bilinear(b.A(), f, f), ff = b.dot(f, f), lapH = b.lap(b.H());
        Field s(b.count());
        for (std::size_t p = 0; p < s.size(); ++p) {
            const double H = b.H()[p];
            s[p] = H * psi[p] * psi[p] - 2 * gpf[p] - 2 * c * H * H * f[p] * psi[p] + Aff[p] + 2 * c * H * ff[p] -
                   c * (lapH[p] - c * H * H * H) * f[p] * f[p];
        }
        rhs -= b.integrate(s);
    }
    r.recast = rhs;
    r.residual = std::abs(r.hessian_norm - r.recast);
    return r;
}

std::vector<CheckReport> check_energy(const GridFn& grid, const ConformalDraw& draw, const std::vector<int>& sizes,
                                      const std::string& tag) {
    std::vector<double> q4r, q4s, q2r, q2s;
    for (int N : sizes) {
        const ChartGrid cg = grid(N);
        const Geometry g(cg, draw.metric.sample(cg));
        const Field u = draw.u.sample(cg), v = draw.v.sample(cg);
        const EnergyReport uv = q4_pairing(g, u, v), vu = q4_pairing(g, v, u);
        q4r.push_back(std::max(uv.discrepancy, vu.discrepancy));
        q4s.push_back(std::abs(uv.route_a - vu.route_a));
        const EnergyReport a = q2_pairing(g, u, v), b = q2_pairing(g, v, u);
        q2r.push_back(std::max(a.discrepancy, b.discrepancy));
        q2s.push_back(std::abs(a.route_a - b.route_a));
    }
    return {refinement_check("energy.q4_routes" + tag, "Q4: boundary-operator pairing vs symmetric form", sizes, q4r),
            refinement_check("energy.q4_symmetry" + tag, "Q4(u,v) = Q4(v,u)", sizes, q4s),
            refinement_check("energy.q2_routes" + tag, "Q2: Robin pairing vs symmetric form", sizes, q2r),
            refinement_check("energy.q2_symmetry" + tag, "Q2(u,v) = Q2(v,u)", sizes, q2s)};
}

CheckReport check_energy_covariance(const GridFn& grid, const ConformalDraw& draw, const std::vector<int>& sizes,
                                    const std::string& tag) {
    std::vector<double> res;
    for (int N : sizes) {
        const ChartGrid cg = grid(N);
        const MetricField m = draw.metric.sample(cg);
        const Field s = draw.sigma.sample(cg), u = draw.u.sample(cg);
        const Geometry g(cg, m), gh(cg, rescale(m, s));
        const Field us = exp_scaled(s, (g.n() - 3) / 2.0, u);
        res.push_back(std::abs(q4_pairing(gh, u, u).route_a - q4_pairing(g, us, us).route_a));
    }
    return refinement_check("energy.covariance" + tag, "conformal covariance of the Paneitz energy", sizes, res);
}

CheckReport reilly_check(const GridFn& grid, const ConformalDraw& draw, const std::vector<int>& sizes,
                         const std::string& tag) {
    std::vector<double> res;
    for (int N : sizes) {
        const ChartGrid cg = grid(N);
        const Geometry g(cg, draw.metric.sample(cg));
        res.push_back(reilly(g, draw.u.sample(cg)).residual);
    }
    return refinement_check("energy.reilly" + tag, "Reilly formula through the boundary operators", sizes, res);
}

EulerResiduals euler_residuals(const Geometry& g, const Field& u, double lambda, Constraint con) {
    const double n = g.n();
    if (n < 4) throw std::invalid_argument("euler_residual: needs n >= 4");
    EulerResiduals r;
    r.interior = max_abs(paneitz_operator(g, u));
    const double e = (n + 3) / (n - 3);
    const Field lu = g.laplacian(u);
    for (int face = 0; face < 2; ++face) {
        const Boundary b(g, face);
        const BoundaryCurvatures c = boundary_curvatures(b);
        const BoundaryJet j = boundary_jet(b, u, 3, &lu);
        for (double f : j.f)
            if (!(f > 0.0)) throw std::domain_error("euler_residual: boundary trace must be positive");
        r.constraint = std::max(r.constraint, max_abs(paneitz_boundary(b, c, con == Constraint::Y41 ? 1 : 2, j)));
        Field top = paneitz_boundary(b, c, 3, j);
        for (std::size_t p = 0; p < top.size(); ++p) top[p] -= lambda * std::pow(j.f[p], e);
        r.top = std::max(r.top, max_abs(top));
    }
    return r;
}

CheckReport euler_residual(const Geometry& g, const Field& u, double lambda, Constraint c, double tol) {
    const EulerResiduals e = euler_residuals(g, u, lambda, c);
    CheckReport r = tolerance_check(c == Constraint::Y41 ? "energy.euler_y41" : "energy.euler_y42",
                                    "Euler-Lagrange system of the boundary Yamabe-type quotient",
                                    std::max({e.interior, e.constraint, e.top}), tol);
    r.values = {{"interior", e.interior}, {"constraint", e.constraint}, {"top", e.top}};
    return r;
}

}  // namespace paneitz
