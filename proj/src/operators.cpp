#include "paneitz/operators.hpp"

#include <cmath>
#include <string>

namespace paneitz {

namespace {

void require_k(int k, int top) {
    if (k < 0 || k > top) throw std::invalid_argument("boundary operator: order " + std::to_string(k) + " not defined");
}

}  // namespace

Field conformal_laplacian(const Geometry& g, const Field& u) {
    const double n = g.n();
    Field out = g.laplacian(u);
    for (std::size_t k = 0; k < out.size(); ++k) out[k] = -out[k] + 0.5 * (n - 1) * g.J()[k] * u[k];
    return out;
}

Field paneitz_operator(const Geometry& g, const Field& u) {
    const double n = g.n();
    Field out = g.laplacian(g.laplacian(u));
    const Field div = g.divergence(g.paneitz_flux(u));
    const Field& Q = g.q4();
    for (std::size_t k = 0; k < out.size(); ++k) out[k] += div[k] + 0.5 * (n - 3) * Q[k] * u[k];
    return out;
}

BoundaryJet boundary_jet(const Boundary& b, const Field& u, int max_order, const Field* lap_u) {
    BoundaryJet j;
    j.f = b.restrict(u);
    if (max_order >= 1) j.eta_u = b.normal(u);
    if (max_order >= 2) {
        j.hess_nn = b.hess_nn(u);
        j.lap_bar = b.lap(j.f);
    }
    if (max_order >= 3) {
        j.eta_lap = lap_u ? b.normal(*lap_u) : b.normal(b.bulk().laplacian(u));
        j.lap_bar_eta = b.lap(j.eta_u);
        j.a0_hess = b.pair(b.A0(), b.hess(j.f));
        j.gradH_du = b.dot(b.H(), j.f);
    }
    return j;
}

void check_weight(int k, double w, int n) {
    if (k == 3) {
        if (w == 1.0) throw WeightError("weight w = 1 is singular for the third-order family");
        if (n + 2.0 * w - 4.0 == 0.0) throw WeightError("weight with n + 2w - 4 = 0 is singular for the third-order family");
    }
}

namespace {

struct PaneitzWeightAdmissible {
    PaneitzWeightAdmissible() {
        for (int n = 2; n <= 16; ++n) check_weight(3, paneitz_weight(n), n);
    }
} const kStartupAssertion;

}  // namespace

BoundaryCurvatures boundary_curvatures(const Boundary& b) {
    const double n = b.n();
    if (n < 2) throw std::invalid_argument("boundary curvatures need n >= 2");
    const std::size_t M = b.count();
    BoundaryCurvatures c;
    c.S23.resize(M);
    c.T13.resize(M);
    c.T23.resize(M);
    c.T23_tilde.resize(M);
    c.T33.resize(M);
    const Field lapH = b.lap(b.H());
    const Field a0p = b.pair(b.A0(), b.Pbar());
    for (std::size_t p = 0; p < M; ++p) {
        const double H = b.H()[p], Pnn = b.Pnn()[p], Jb = b.Jbar()[p], a2 = b.A0sq()[p];
        c.S23[p] = -(3 * n * n - 7 * n + 6) / (4 * n * n) * H * H + (n - 7) / 2 * Pnn + (3 * n - 5) / 2 * Jb + 0.5 * a2;
        c.T13[p] = H / n;
        c.T23[p] = Jb - Pnn + (n - 2) / (2 * n * n) * H * H;
        c.T23_tilde[p] = c.T23[p] + 2.0 / (n * n) * H * H;
        c.T33[p] = b.etaJ()[p] - 2.0 / n * lapH[p] - 4.0 / (n - 1) * a0p[p] + (n - 3) / (2 * n) * H * Pnn +
                   (3 * n - 1) / (2 * n) * H * Jb + (n + 1) / (2 * n * (n - 1)) * H * a2 -
                   (n * n - n + 2) / (4 * n * n * n) * H * H * H;
    }
    return c;
}

BoundaryCurvatures boundary_curvatures(const Boundary& b, double w) {
    const double n = b.n();
    check_weight(3, w, b.n());
    BoundaryCurvatures c = boundary_curvatures(b);
    c.w = w;
    c.has_generic = true;
    const std::size_t M = b.count();
    c.S2w.resize(M);
    c.T3w.resize(M);
    const Field lapH = b.lap(b.H());
    const Field a0p = b.pair(b.A0(), b.Pbar());
    const double q = n + 2 * w - 4;
    for (std::size_t p = 0; p < M; ++p) {
        const double H = b.H()[p], Pnn = b.Pnn()[p], Jb = b.Jbar()[p], a2 = b.A0sq()[p];
        c.S2w[p] = ((w - 1) / n - (n + 3 * w - 3) * (2 * w - 1) / (2 * n * n)) * H * H - (n + 3 * w - 1) * Pnn -
                   (n - w - 1) / q * Jb;
        c.T3w[p] = b.etaJ()[p] + (n + 2 * w - 1) / (n * q) * lapH[p] + (n + 2 * w - 1) / (w - 1) * a0p[p] -
                   (n + 3 * w - 3) / n * H * Pnn + (n + 5 * w - 7) / (n * q) * H * Jb + 1.0 / (n * (n - 1)) * H * a2 +
                   ((w - 2) / (3 * n * n) - (n + 3 * w - 3) * (2 * w - 1) / (6 * n * n * n)) * H * H * H;
    }
    return c;
}

Field robin(const Boundary& b, int k, const BoundaryJet& jet) {
    require_k(k, 1);
    if (k == 0) return jet.f;
    const double n = b.n();
    Field out(b.count());
    for (std::size_t p = 0; p < out.size(); ++p) out[p] = jet.eta_u[p] + (n - 1) / (2 * n) * b.H()[p] * jet.f[p];
    return out;
}

Field robin(const Boundary& b, int k, const Field& u) { return robin(b, k, boundary_jet(b, u, k)); }

Field boundary_family(const Boundary& b, const BoundaryCurvatures& c, int k, double w, const BoundaryJet& jet) {
    require_k(k, 3);
    check_weight(k, w, b.n());
    const double n = b.n();
    const std::size_t M = b.count();
    Field out(M);
    if (k == 0) return jet.f;
    if (k == 1) {
        for (std::size_t p = 0; p < M; ++p) out[p] = jet.eta_u[p] - w / n * b.H()[p] * jet.f[p];
        return out;
    }
    if (k == 2) {
        const double a = n + 2 * w - 2, e = 2 * w - 1;
        for (std::size_t p = 0; p < M; ++p) {
            const double H = b.H()[p];
            out[p] = -jet.lap_bar[p] + a * jet.hess_nn[p] - a * e / n * H * jet.eta_u[p] -
                     w * (b.Jbar()[p] - a * b.Pnn()[p] - a * e / (2 * n * n) * H * H) * jet.f[p];
        }
        return out;
    }
    if (!c.has_generic || c.w != w) throw std::invalid_argument("boundary family: curvatures computed for another weight");
    const double q = n + 2 * w - 4;
    for (std::size_t p = 0; p < M; ++p) {
        const double H = b.H()[p];
        out[p] = -jet.eta_lap[p] + (n + 2 * w - 1) / q * jet.lap_bar_eta[p] + (n + 3 * w - 3) / n * H * jet.hess_nn[p] -
                 (n + 2 * w - 1) / (w - 1) * jet.a0_hess[p] - (2 * n + 7 * w - 8) / (n * q) * H * jet.lap_bar[p] +
                 (n - 4) * (n + 2 * w - 1) / (n * q) * jet.gradH_du[p] + c.S2w[p] * jet.eta_u[p] - w * c.T3w[p] * jet.f[p];
    }
    return out;
}

Field boundary_family(const Boundary& b, int k, double w, const Field& u) {
    check_weight(k, w, b.n());
    const BoundaryCurvatures c = k == 3 ? boundary_curvatures(b, w) : BoundaryCurvatures{};
    return boundary_family(b, c, k, w, boundary_jet(b, u, k));
}

Field paneitz_boundary(const Boundary& b, const BoundaryCurvatures& c, int k, const BoundaryJet& jet) {
    require_k(k, 3);
    const double n = b.n();
    const std::size_t M = b.count();
    Field out(M);
    switch (k) {
        case 0:
            return jet.f;
        case 1:
            for (std::size_t p = 0; p < M; ++p) out[p] = jet.eta_u[p] + (n - 3) / (2 * n) * b.H()[p] * jet.f[p];
            return out;
        case 2:
            for (std::size_t p = 0; p < M; ++p)
                out[p] = -jet.lap_bar[p] + jet.hess_nn[p] + (n - 2) / n * b.H()[p] * jet.eta_u[p] +
                         (n - 3) / 2 * c.T23[p] * jet.f[p];
            return out;
        default:
            for (std::size_t p = 0; p < M; ++p) {
                const double H = b.H()[p];
                out[p] = -jet.eta_lap[p] - 2 * jet.lap_bar_eta[p] - (n - 3) / (2 * n) * H * jet.hess_nn[p] +
                         4 / (n - 1) * jet.a0_hess[p] - (3 * n - 5) / (2 * n) * H * jet.lap_bar[p] -
                         2 * (n - 4) / n * jet.gradH_du[p] + c.S23[p] * jet.eta_u[p] + (n - 3) / 2 * c.T33[p] * jet.f[p];
            }
            return out;
    }
}

Field paneitz_boundary(const Boundary& b, int k, const Field& u) {
    require_k(k, 3);
    const BoundaryCurvatures c = k >= 2 ? boundary_curvatures(b) : BoundaryCurvatures{};
    return paneitz_boundary(b, c, k, boundary_jet(b, u, k));
}

}  // namespace paneitz
