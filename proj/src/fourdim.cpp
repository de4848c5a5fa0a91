#include "paneitz/fourdim.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "paneitz/chebyshev.hpp"
#include "paneitz/operators.hpp"
#include "paneitz/special.hpp"

namespace paneitz {

using std::numbers::pi;

void require_four_dimensional(const Geometry& g) {
    if (g.dim() != 4) throw std::invalid_argument("four-dimensional theory: chart has dimension " + std::to_string(g.dim()));
}

namespace {

Field combine(const Field& a, double ca, const Field& b, double cb) {
    Field out(a.size());
    for (std::size_t p = 0; p < a.size(); ++p) out[p] = ca * a[p] + cb * b[p];
    return out;
}

Field product(const Field& a, const Field& b) {
    Field out(a.size());
    for (std::size_t p = 0; p < a.size(); ++p) out[p] = a[p] * b[p];
    return out;
}

// Everything one face contributes, evaluated once.
struct FaceData {
    BoundaryCurvatures c;
    BoundaryJet jet;
    Field B1, B2, B3;
};

FaceData face_data(const Boundary& b, const Field& u, const Field& lap_u) {
    FaceData d;
    d.c = boundary_curvatures(b);
    d.jet = boundary_jet(b, u, 3, &lap_u);
    d.B1 = paneitz_boundary(b, d.c, 1, d.jet);
    d.B2 = paneitz_boundary(b, d.c, 2, d.jet);
    d.B3 = paneitz_boundary(b, d.c, 3, d.jet);
    return d;
}

}  // namespace

NamedValues t_prescription_residuals(const Geometry& g, const Geometry& gh, const Field& sigma) {
    require_four_dimensional(g);
    double r[3] = {0, 0, 0};
    const Field lap = g.laplacian(sigma);
    for (int face = 0; face < 2; ++face) {
        const Boundary b(g, face), bh(gh, face);
        const FaceData d = face_data(b, sigma, lap);
        const BoundaryCurvatures ch = boundary_curvatures(bh);
        const Field s = b.restrict(sigma);
        const Field* T[3] = {&d.c.T13, &d.c.T23, &d.c.T33};
        const Field* Th[3] = {&ch.T13, &ch.T23, &ch.T33};
        const Field* B[3] = {&d.B1, &d.B2, &d.B3};
        for (int k = 0; k < 3; ++k)
            for (std::size_t p = 0; p < s.size(); ++p)
                r[k] = std::max(r[k], std::abs(std::exp((k + 1) * s[p]) * (*Th[k])[p] - (*T[k])[p] - (*B[k])[p]));
    }
    return {{"T1", r[0]}, {"T2", r[1]}, {"T3", r[2]}};
}

double total_q(const Geometry& g) {
    require_four_dimensional(g);
    double total = g.integrate(g.q4());
    for (int face = 0; face < 2; ++face) {
        const Boundary b(g, face);
        total += b.integrate(boundary_curvatures(b).T33);
    }
    return total;
}

ChangQingBoundary chang_qing_operators(const Boundary& b, const Field& u) {
    require_four_dimensional(b.bulk());
    const BoundaryJet j = boundary_jet(b, u, 3);
    const Field A_hess = b.pair(b.A(), b.hess(j.f));
    const Field ric = b.ric_nn();
    const Field R_A = b.pair(b.riemann_nn(), b.A());
    const Field trA3 = b.trace_cube(b.A());
    const Field lapH = b.lap(b.H());
    const std::size_t M = b.count();
    ChangQingBoundary c{Field(M), Field(M), Field(M)};
    for (std::size_t p = 0; p < M; ++p) {
        const double H = b.H()[p], J = b.J()[p];
        c.P3[p] = -0.5 * j.eta_lap[p] - j.lap_bar_eta[p] + A_hess[p] - 2.0 / 3 * H * j.lap_bar[p] + j.gradH_du[p] / 3 -
                  (ric[p] - 2 * J) * j.eta_u[p];
        c.P32[p] = H * j.lap_bar[p] - H * j.hess_nn[p] - (3 * ric[p] - 6 * J - H * H / 3) * j.eta_u[p];
        c.T[p] = 0.5 * b.etaJ()[p] - lapH[p] / 3 + J * H - R_A[p] - trA3[p] / 3 + H * H * H / 9;
    }
    return c;
}

FunctionalValues functionals(const Geometry& g, const Field& u) {
    require_four_dimensional(g);
    const Field L = paneitz_operator(g, u);
    const Field lap = g.laplacian(u);
    const Field& Q = g.q4();
    FunctionalValues v;
    v.F_terms.emplace_back("int u L4 u", g.integrate(product(u, L)));
    v.F_terms.emplace_back("int 2 Q4 u", 2 * g.integrate(product(Q, u)));
    double fb3 = 0, tf = 0, pb2 = 0, tp = 0, g1 = 0, g2 = 0, g3 = 0;
    for (int face = 0; face < 2; ++face) {
        const Boundary b(g, face);
        const FaceData d = face_data(b, u, lap);
        fb3 += b.integrate(product(d.jet.f, d.B3));
        tf += 2 * b.integrate(product(d.c.T33, d.jet.f));
        pb2 += b.integrate(product(d.B1, d.B2));
        tp += 2 * b.integrate(product(d.c.T23, d.B1));
        g1 += b.integrate(product(d.B1, d.B2));
        g2 += b.integrate(product(d.c.T23, d.B1));
        g3 += b.integrate(product(d.c.T13, d.B2));
    }
    v.F_terms.emplace_back("oint f B3 u", fb3);
    v.F_terms.emplace_back("oint 2 T3 f", tf);
    v.F_terms.emplace_back("oint psi B2 u", pb2);
    v.F_terms.emplace_back("oint 2 T2 psi", tp);
    v.G_terms = {{"oint B1 u B2 u", g1}, {"oint T2 B1 u", g2}, {"oint T1 B2 u", g3}};
    for (const auto& t : v.F_terms) v.F += t.second;
    for (const auto& t : v.G_terms) v.G += t.second;
    return v;
}

ChangQingFunctionals chang_qing_functionals(const Geometry& g, const Field& u) {
    require_four_dimensional(g);
    const Field L = paneitz_operator(g, u);
    ChangQingFunctionals c;
    Field bulk(u.size());
    for (std::size_t p = 0; p < u.size(); ++p) bulk[p] = u[p] * L[p] + 2 * g.q4()[p] * u[p];
    c.b2 = 0.25 * g.integrate(bulk);
    for (int face = 0; face < 2; ++face) {
        const Boundary b(g, face);
        const ChangQingBoundary cq = chang_qing_operators(b, u);
        const Field f = b.restrict(u);
        Field s(f.size());
        for (std::size_t p = 0; p < f.size(); ++p) s[p] = f[p] * cq.P3[p] + 2 * cq.T[p] * f[p];
        c.b2 += 0.5 * b.integrate(s);
        c.D += b.integrate(cq.P32);
    }
    return c;
}

double chang_qing_correction(const Geometry& g, const Field& u) {
    require_four_dimensional(g);
    double total = 0;
    for (int face = 0; face < 2; ++face) {
        const Boundary b(g, face);
        const Field f = b.restrict(u), psi = paneitz_boundary(b, 1, u);
        const Field WA = b.pair(b.weyl_nn(), b.A0());
        const Field tr = b.trace_cube(b.A0());
        Field s(f.size());
        for (std::size_t p = 0; p < f.size(); ++p)
            s[p] = 0.25 * b.A0sq()[p] * psi[p] - 8 * (WA[p] + 2.0 / 3 * tr[p]) * f[p];
        total += b.integrate(s);
    }
    return total;
}

namespace {

// W_abcd W^abcd = |Rm|^2 - 2 |Ric|^2 + R^2 / 3 in dimension four.
Field weyl_norm_sq(const Geometry& g) {
    const int d = 4;
    const Field ric2 = g.norm2_sym(g.ricci());
    Field out(g.grid().count());
    std::vector<double> t1(256), t2(256);
    for (std::size_t node = 0; node < out.size(); ++node) {
        const std::vector<double> R = g.riemann_at(node);
        double gi[4][4];
        for (int a = 0; a < d; ++a)
            for (int b = 0; b < d; ++b) gi[a][b] = g.ginv()[sym(a, b, d)][node];
        // raise one slot at a time: t1 <- R, then each pass contracts one index
        std::copy(R.begin(), R.end(), t1.begin());
        for (int slot = 0; slot < 4; ++slot) {
            const int stride = slot == 0 ? 64 : slot == 1 ? 16 : slot == 2 ? 4 : 1;
            for (int i = 0; i < 256; ++i) {
                const int idx = (i / stride) % 4, base = i - idx * stride;
                double s = 0;
                for (int m = 0; m < d; ++m) s += gi[idx][m] * t1[base + m * stride];
                t2[i] = s;
            }
            std::swap(t1, t2);
        }
        double rm2 = 0;
        for (int i = 0; i < 256; ++i) rm2 += R[i] * t1[i];
        const double Rs = g.scalar()[node];
        out[node] = rm2 - 2 * ric2[node] + Rs * Rs / 3;
    }
    return out;
}

}  // namespace

GaussBonnet gauss_bonnet(const Geometry& g) {
    require_four_dimensional(g);
    GaussBonnet gb;
    gb.weyl = 0.25 * g.integrate(weyl_norm_sq(g));
    gb.q = g.integrate(g.q4());
    for (int face = 0; face < 2; ++face) {
        const Boundary b(g, face);
        gb.t += b.integrate(boundary_curvatures(b).T33);
        gb.a0 += 2.0 / 3 * b.integrate(b.trace_cube(b.A0()));
    }
    return gb;
}

NamedValues fourdim_chart_residuals(const ChartGrid& grid, const MetricField& metric, const Field& sigma,
                                    const Field& v) {
    const Geometry g(grid, metric);
    require_four_dimensional(g);
    NamedValues out;
    {
        const Geometry gh(grid, rescale(metric, sigma));
        for (const auto& r : t_prescription_residuals(g, gh, sigma)) out.push_back(r);
        out.emplace_back("total_q", std::abs(total_q(gh) - total_q(g)));
        const FunctionalValues hat = functionals(gh, v);
        const Field uv = combine(sigma, 1.0, v, 1.0);
        const FunctionalValues both = functionals(g, uv), base = functionals(g, sigma);
        out.emplace_back("cocycle_F", std::abs(hat.F - (both.F - base.F)));
        out.emplace_back("cocycle_G", std::abs(hat.G - (both.G - base.G)));
    }
    double p3 = 0, p32 = 0, t = 0;
    for (int face = 0; face < 2; ++face) {
        const Boundary b(g, face);
        const ChangQingBoundary cq = chang_qing_operators(b, v);
        const FaceData d = face_data(b, v, g.laplacian(v));
        const Field WA = b.pair(b.weyl_nn(), b.A0());
        const Field tr = b.trace_cube(b.A0());
        for (std::size_t p = 0; p < b.count(); ++p) {
            p3 = std::max(p3, std::abs(cq.P3[p] - 0.5 * d.B3[p]));
            const double rhs2 = -3 * d.c.T13[p] * d.B2[p] + 3 * d.c.T23[p] * d.B1[p] + 0.75 * b.A0sq()[p] * d.B1[p];
            p32 = std::max(p32, std::abs(cq.P32[p] - rhs2));
            t = std::max(t, std::abs(cq.T[p] - (0.5 * d.c.T33[p] - 2 * WA[p] - 4.0 / 3 * tr[p])));
        }
    }
    out.emplace_back("changqing_P3", p3);
    out.emplace_back("changqing_P32", p32);
    out.emplace_back("changqing_T", t);
    const ChangQingFunctionals cq = chang_qing_functionals(g, v);
    const FunctionalValues fv = functionals(g, v);
    out.emplace_back("changqing_b2_D", std::abs(4 * cq.b2 + cq.D / 3 - (fv.F - fv.G) - chang_qing_correction(g, v)));
    out.emplace_back("gauss_bonnet", std::abs(gauss_bonnet(g).total() - 0.0));
    return out;
}

std::vector<CheckReport> check_fourdim(const GridFn& grid, const ConformalDraw& draw, const std::vector<int>& sizes,
                                       const std::string& tag) {
    static const std::pair<const char*, const char*> topics[] = {
        {"T1", "prescription law of T_1^3"},
        {"T2", "prescription law of T_2^3"},
        {"T3", "prescription law of T_3^3"},
        {"total_q", "conformal invariance of int Q4 + oint T_3^3"},
        {"cocycle_F", "cocycle identity of the F functional"},
        {"cocycle_G", "cocycle identity of the G functional"},
        {"changqing_P3", "Chang-Qing P3 equals B_3^3 / 2"},
        {"changqing_P32", "Chang-Qing P3^2 through B_1^3, B_2^3"},
        {"changqing_T", "Chang-Qing T through T_3^3 and Weyl"},
        {"changqing_b2_D", "4 b2 + D/3 through F - G"},
        {"gauss_bonnet", "Gauss-Bonnet-Chern total on T^3 x I"}};
    std::vector<NamedValues> levels;
    for (int N : sizes) {
        const ChartGrid cg = grid(N);
        levels.push_back(fourdim_chart_residuals(cg, draw.metric.sample(cg), draw.sigma.sample(cg), draw.u.sample(cg)));
    }
    std::vector<CheckReport> out;
    for (std::size_t i = 0; i < levels.front().size(); ++i) {
        std::vector<double> r;
        for (const auto& l : levels) r.push_back(l[i].second);
        const std::string name = levels.front()[i].first;
        std::string topic = name;
        for (const auto& [k, t] : topics)
            if (name == k) topic = t;
        if (name == "total_q") {
            CheckReport c = tolerance_check("fourdim." + name + tag, topic, r.back(), 1e-4);
            c.sizes = sizes;
            c.residuals = r;
            if (r.size() >= 2) c.order = observed_order(r[r.size() - 2], r.back());
            out.push_back(c);
        } else {
            out.push_back(refinement_check("fourdim." + name + tag, topic, sizes, r));
        }
    }
    return out;
}

// ---------------------------------------------------------------------------
// Separable models.

TCurvatureResult compute_t_curvature(FourModel model) {
    TCurvatureResult r;
    r.model = model;
    if (model == FourModel::FlatSlab) {
        // Q4 = 0 and H = 0: the flat slab already is the normalized metric
        const ExtensionSolution s = solve_extension(SeparableProblem::flat(0.0, 32, 1.0), 0.0, 0.0, 0.0);
        r.v = s.u;
        r.T = 0.5 * s.b3;
        r.total = r.T;
        r.residual_interior = s.residual_interior;
        r.residual_v = s.residual_b0;
        r.residual_b1 = s.residual_b1;
        r.chi = 0;
        r.gauss_bonnet = 2 * r.total;
        return r;
    }
    // unit round S^4: P = g/2, J = 2, Q4 = -Delta J - 2|P|^2 + 2 J^2 = 6; the
    // equator is totally geodesic, so H = 0, A0 = 0 and T_3^3 = eta J = 0
    const double Q4 = -0.0 - 2 * 4 * 0.25 + 2 * 2.0 * 2.0;
    const ExtensionSolution s = solve_extension(SeparableProblem::hemisphere(3, 0), 0.0, 0.0, -Q4);
    r.v = s.u;
    r.T = 0.5 * (0.0 + s.b3);
    r.total = r.T * sphere_volume(3);
    r.residual_interior = s.residual_interior;
    r.residual_v = s.residual_b0;
    r.residual_b1 = s.residual_b1;
    r.chi = 1;
    r.gauss_bonnet = 0.0 + 2 * r.total - 0.0;
    return r;
}

double q3_by_scattering(int nodes) {
    // g+ = r^{-2}(dr^2 + a(r)^2 h), a = 1 - r^2/4, r in (0, 2] with the center
    // at r = 2. With v = log r + w the equation -Delta v = 3 becomes
    // r a w'' - (2a + 3r^2/2) w' = 3r/2, whose row at r = 2 is regularity.
    const Cheb ch(nodes, 2.0);
    const int M = nodes + 1;
    Eigen::MatrixXd A = Eigen::MatrixXd::Zero(M, M);
    Eigen::VectorXd rhs = Eigen::VectorXd::Zero(M);
    A(0, 0) = 1;
    for (int j = 1; j <= nodes; ++j) {
        const double r = ch.s(j), a = 1 - r * r / 4;
        A.row(j) = r * a * ch.D2.row(j) - (2 * a + 1.5 * r * r) * ch.D.row(j);
        rhs(j) = 1.5 * r;
    }
    const Eigen::VectorXd w = A.partialPivLu().solve(rhs);
    // w = A + B r^3 with A even: the r^3 coefficient is w'''(0)/6
    return 3 * ch.D3.row(0).dot(w) / 6;
}

namespace {

// oint_{S^n} of a zonal function
double sphere_integral(int n, const std::function<double(double)>& fn) {
    static thread_local std::vector<std::pair<int, Quadrature>> cache;
    const Quadrature* q = nullptr;
    for (const auto& [m, rule] : cache)
        if (m == n) q = &rule;
    if (!q) {
        cache.emplace_back(n, gauss_jacobi(200, (n - 2) / 2.0, (n - 2) / 2.0));
        q = &cache.back().second;
    }
    double s = 0;
    for (std::size_t i = 0; i < q->nodes.size(); ++i) s += q->weights[i] * fn(q->nodes[i]);
    return sphere_volume(n - 1) * s;
}

// evaluation points on [-1, 1] for max-norms over the sphere
std::vector<double> sphere_samples() {
    std::vector<double> s;
    for (int i = 0; i <= 200; ++i) s.push_back(-std::cos(pi * i / 200));
    return s;
}

double zonal_sum(const std::vector<double>& c, double s, int n) {
    double sum = 0;
    for (std::size_t l = 0; l < c.size(); ++l) sum += c[l] * gegenbauer(static_cast<int>(l), (n - 1) / 2.0, s);
    return sum;
}

void require_three_sphere(const ZonalDatum& z) {
    if (z.n != 3) throw std::invalid_argument("four-dimensional models: zonal data must live on S^3");
}

}  // namespace

double t_curvature_transformation_residual(const ZonalDatum& w) {
    require_three_sphere(w);
    const double T = compute_t_curvature(FourModel::Hemisphere).T;
    std::vector<double> half_b3, p3w;
    for (std::size_t l = 0; l < w.c.size(); ++l) {
        const SeparableProblem p = SeparableProblem::hemisphere(3, static_cast<int>(l));
        const ExtensionSolution s = solve_extension(p, w.c[l], 0.0, l == 0 ? -6.0 : 0.0);
        half_b3.push_back(0.5 * s.b3);
        p3w.push_back(hemisphere_spectrum(3, static_cast<int>(l), 3) * w.c[l]);
    }
    double worst = 0;
    for (double s : sphere_samples())
        worst = std::max(worst, std::abs(zonal_sum(half_b3, s, 3) - T - zonal_sum(p3w, s, 3)));
    return worst;
}

CriticalResiduals critical_residuals_f(const Geometry& g, const Field& u) {
    require_four_dimensional(g);
    const Geometry gh(g.grid(), rescale(g.metric(), u));
    const double total = total_q(g);
    double vol = 0, t2 = 0, t3 = 0;
    for (int face = 0; face < 2; ++face) {
        const Boundary bh(gh, face);
        const BoundaryCurvatures c = boundary_curvatures(bh);
        vol += bh.integrate(Field(bh.count(), 1.0));
        t2 = std::max(t2, max_abs(c.T23));
        for (double x : c.T33) t3 = std::max(t3, std::abs(x - total));
    }
    CriticalResiduals r;
    r.values = {{"volume", std::abs(vol - 1)}, {"Q4", max_abs(gh.q4())}, {"T2", t2}, {"T3", t3}};
    return r;
}

CriticalResiduals critical_residuals_g(const ZonalDatum& f, const ZonalDatum& psi) {
    require_three_sphere(f);
    require_three_sphere(psi);
    const std::size_t L = std::max(f.c.size(), psi.c.size());
    std::vector<double> fc(L, 0.0), pc(L, 0.0), b2(L), p1psi(L);
    for (std::size_t l = 0; l < L; ++l) {
        if (l < f.c.size()) fc[l] = f.c[l];
        if (l < psi.c.size()) pc[l] = psi.c[l];
        const SeparableProblem p = SeparableProblem::hemisphere(3, static_cast<int>(l));
        const CheckReport dec = check_decoupling(p, fc[l], pc[l]);
        if (!dec.pass) throw SolverError("G-critical residuals: decoupling fails in degree " + std::to_string(l));
        b2[l] = solve_extension(p, fc[l], pc[l]).b2;
        p1psi[l] = induced_operator(p, 1) * pc[l];
    }
    // equator of the unit S^4: T_1^3 = H/3 = 0, T_2^3 = J-bar - P(eta,eta) = 3/2 - 1/2
    const double T2 = 1.0;
    double worst = 0, t2hat = 0, bt1 = 0;
    for (double s : sphere_samples()) {
        const double fs = zonal_sum(fc, s, 3), e = std::exp(-2 * fs);
        const double lhs_b = 2 * e * zonal_sum(p1psi, s, 3);  // 2 B-hat_1 (e^{-f} psi)
        const double t2 = e * (T2 + zonal_sum(b2, s, 3));
        worst = std::max(worst, std::abs(lhs_b + t2));
        t2hat = std::max(t2hat, std::abs(t2));
        bt1 = std::max(bt1, std::abs(lhs_b));
    }
    CriticalResiduals r;
    r.values = {{"2 B1 T1 + T2", worst}, {"T2", t2hat}, {"2 B1 T1", bt1}};
    return r;
}

CriticalSharpDeficit critical_sharp_deficit(const std::vector<Profile>& modes) {
    const int n = 3;
    std::vector<double> fc, pc;
    double E = 0, cross = 0, fp3f = 0, pp1p = 0;
    for (std::size_t l = 0; l < modes.size(); ++l) {
        const SeparableProblem& p = modes[l].problem;
        if (p.model != Model::Hemisphere || p.n != n || p.ell != static_cast<int>(l) || !p.lower_order)
            throw std::invalid_argument("critical_sharp_deficit: modes[l] must be a degree-l profile on S^4_+");
        const double N = zonal_norm_sq(n, static_cast<int>(l));
        const double fl = modes[l].f(), pl = modes[l].psi();
        fc.push_back(fl);
        pc.push_back(pl);
        E += energy(modes[l]) * N;
        // 4 oint psi lap_bar f
        cross -= 4.0 * l * (l + 2) * fl * pl * N;
        fp3f += hemisphere_spectrum(n, static_cast<int>(l), 3) * fl * fl * N;
        pp1p += hemisphere_spectrum(n, static_cast<int>(l), 1) * pl * pl * N;
    }
    const double area = sphere_volume(3);  // 2 pi^2
    const double fbar = fc.empty() ? 0.0 : fc[0];
    const double expint = sphere_integral(n, [&](double s) { return std::exp(3 * (zonal_sum(fc, s, n) - fbar)); });
    const double cube = sphere_integral(n, [&](double s) { return std::pow(std::abs(zonal_sum(pc, s, n)), 3); });
    const double logterm = std::log(expint / area);
    CriticalSharpDeficit d;
    d.lhs = E + cross;
    d.rhs = cross + 16 * pi * pi / 3 * logterm + std::pow(4 * pi * cube, 2.0 / 3);
    d.deficit = d.lhs - d.rhs;
    d.beckner_f = fp3f - 8 * pi * pi / 3 * logterm;
    d.beckner_psi = pp1p - std::cbrt(area) * std::pow(cube, 2.0 / 3);
    return d;
}

CriticalSharpDeficit critical_sharp_deficit(const ZonalDatum& f, const ZonalDatum& psi) {
    require_three_sphere(f);
    require_three_sphere(psi);
    const std::size_t L = std::max(f.c.size(), psi.c.size());
    std::vector<Profile> modes;
    for (std::size_t l = 0; l < L; ++l) {
        const double fl = l < f.c.size() ? f.c[l] : 0.0, pl = l < psi.c.size() ? psi.c[l] : 0.0;
        modes.push_back(solve_extension(SeparableProblem::hemisphere(3, static_cast<int>(l)), fl, pl).u);
    }
    return critical_sharp_deficit(modes);
}

}  // namespace paneitz
