#include "paneitz/solver.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "paneitz/chebyshev.hpp"
#include "paneitz/special.hpp"

namespace paneitz {

using Eigen::MatrixXd;
using Eigen::VectorXd;

SeparableProblem SeparableProblem::flat(double xi, int nodes, double length) {
    SeparableProblem p;
    p.model = Model::Flat;
    p.xi = xi;
    p.nodes = nodes;
    p.length = length;
    return p;
}

SeparableProblem SeparableProblem::hemisphere(int n, int ell, int nodes) {
    SeparableProblem p;
    p.model = Model::Hemisphere;
    p.n = n;
    p.ell = ell;
    // the f-only image is a third derivative at the boundary, whose roundoff
    // grows like N^6; this is the smallest count resolving degree ell
    p.nodes = nodes > 0 ? nodes : 24 + 4 * ((ell + 4) / 5);
    return p;
}

namespace {

void validate(const SeparableProblem& p) {
    if (p.nodes < 6) throw std::invalid_argument("separable problem: need at least 6 Chebyshev intervals");
    if (p.model == Model::Flat) {
        if (p.xi < 0) throw std::invalid_argument("flat mode: |xi| must be non-negative");
        if (p.xi == 0 && p.length <= 0) throw std::invalid_argument("flat mode: xi = 0 needs a slab length");
        if (p.length < 0) throw std::invalid_argument("flat mode: negative length");
    } else {
        if (p.n < 2) throw std::invalid_argument("hemisphere: n must be at least 2");
        if (p.ell < 0) throw std::invalid_argument("hemisphere: negative degree");
    }
}

double interval_length(const SeparableProblem& p) {
    if (p.model == Model::Hemisphere) return 1.0;
    return p.length > 0 ? p.length : 20.0 / p.xi;
}

struct Coefficients {
    double c_grad = 0, c_zero = 0, sum = 0, prod = 0;
};

Coefficients hemisphere_coefficients(const SeparableProblem& p) {
    Coefficients c;
    if (!p.lower_order) return c;
    const double n = p.n, N = n + 1;
    c.c_grad = (n * n - 5) / 2;
    c.c_zero = (n * n - 1) * (n * n - 9) / 16;
    c.sum = (N * N - 2 * N - 4) / 2;  // equals c_grad
    c.prod = c.c_zero;
    return c;
}

// G p with Delta(s p Y_l) = s (G p) Y_l, s = (1 - t^2)^{l/2}
MatrixXd zonal_laplacian(const Cheb& ch, const SeparableProblem& p) {
    const double l = p.ell, n = p.n;
    MatrixXd G(ch.N + 1, ch.N + 1);
    for (int i = 0; i <= ch.N; ++i) {
        const double t = ch.s(i);
        G.row(i) = (1 - t * t) * ch.D2.row(i) - (2 * l + n + 1) * t * ch.D.row(i);
        G(i, i) -= l * (l + n);
    }
    return G;
}

MatrixXd paneitz_matrix(const Cheb& ch, const SeparableProblem& p) {
    const int M = ch.N + 1;
    if (p.model == Model::Flat) {
        const double k2 = p.xi * p.xi;
        return ch.D4 - 2 * k2 * ch.D2 + k2 * k2 * MatrixXd::Identity(M, M);
    }
    const MatrixXd G = zonal_laplacian(ch, p);
    const Coefficients c = hemisphere_coefficients(p);
    // (-G + c1)(-G + c2) = G^2 - (c1 + c2) G + c1 c2
    return G * G - c.sum * G + c.prod * MatrixXd::Identity(M, M);
}

// Rows of B0^3 .. B3^3 at the boundary node.
struct BoundaryRows {
    VectorXd b0, b1, b2, b3;
};

BoundaryRows boundary_rows(const Cheb& ch, const SeparableProblem& p) {
    BoundaryRows r;
    const int M = ch.N + 1;
    r.b0 = VectorXd::Zero(M);
    r.b0(0) = 1;
    r.b1 = -ch.D.row(0).transpose();
    if (p.model == Model::Flat) {
        const double k2 = p.xi * p.xi;
        r.b2 = ch.D2.row(0).transpose() + k2 * r.b0;
        r.b3 = ch.D3.row(0).transpose() - 3 * k2 * ch.D.row(0).transpose();
        return r;
    }
    const double l = p.ell, n = p.n;
    const double T2 = p.lower_order ? (n - 1) / 2 : 0.0;
    const double S2 = p.lower_order ? (n - 7) / 4 + (3 * n - 5) * n / 4 : 0.0;
    // totally geodesic equator: -lap_bar u + Hess u(eta,eta) + (n-3)/2 T2 u
    r.b2 = ch.D2.row(0).transpose() + (l * (l + n - 1) - l + (n - 3) / 2 * T2) * r.b0;
    // -eta(lap u) - 2 lap_bar(eta u) + S2 eta u
    r.b3 = ch.D3.row(0).transpose() - ((l + 1) * (l + n + 1) + 2 * l * (l + n - 1) + S2) * ch.D.row(0).transpose();
    return r;
}

// Quadrature of the energy integrands at the Gauss points, with the profile
// and its first two derivatives interpolated from the nodes.
struct EnergyQuadrature {
    VectorXd t;
    VectorXd w_main;  // weight of the terms carrying the full measure
    VectorXd w_sing;  // hemisphere l >= 1: weight of the 1/(1 - t^2) term
    MatrixXd I0, I1, I2;
    MatrixXd G;  // hemisphere: interpolated G
};

EnergyQuadrature energy_quadrature(const Cheb& ch, const SeparableProblem& p) {
    EnergyQuadrature q;
    const int m = 2 * ch.N + 8;
    double alpha = 0;
    int e = 0;
    if (p.model == Model::Hemisphere) {
        alpha = (p.n - 1) / 2.0 + p.ell;
        if (p.ell >= 1) {
            alpha -= 1;
            e = 1;
        }
    }
    const Quadrature gj = gauss_jacobi(m, alpha, 0.0);
    q.t.resize(m);
    q.w_main.resize(m);
    q.w_sing.resize(m);
    q.I0.resize(m, ch.N + 1);
    for (int i = 0; i < m; ++i) {
        const double t = 0.5 * ch.L * (1 + gj.nodes[i]);
        q.t(i) = t;
        if (p.model == Model::Flat) {
            q.w_main(i) = 0.5 * ch.L * gj.weights[i];
            q.w_sing(i) = 0;
        } else {
            // (1-t^2)^alpha = ((1-x)/2)^alpha (1+t)^alpha, dt = dx/2
            const double base = gj.weights[i] * std::pow(0.5, alpha + 1) * std::pow(1 + t, alpha);
            q.w_sing(i) = e ? base : 0.0;
            q.w_main(i) = e ? base * (1 - t * t) : base;
        }
        q.I0.row(i) = ch.interp_row(t).transpose();
    }
    q.I1 = q.I0 * ch.D;
    q.I2 = q.I0 * ch.D2;
    if (p.model == Model::Hemisphere) q.G = q.I0 * zonal_laplacian(ch, p);
    return q;
}

double boundary_pairing_coefficient(const SeparableProblem& p) {
    if (p.model == Model::Flat) return 4 * p.xi * p.xi;
    const double l = p.ell, n = p.n;
    return 4 * l * (l + n - 1) + (p.lower_order ? (n - 1) * (n - 3) / 2 : 0.0);
}

double form(const SeparableProblem& p, const EnergyQuadrature& q, const VectorXd& a, const VectorXd& b,
            const VectorXd& b0row, const VectorXd& b1row) {
    double interior = 0;
    if (p.model == Model::Flat) {
        const double k2 = p.xi * p.xi;
        const VectorXd la = q.I2 * a - k2 * (q.I0 * a), lb = q.I2 * b - k2 * (q.I0 * b);
        interior = (q.w_main.array() * la.array() * lb.array()).sum();
    } else {
        const Coefficients c = hemisphere_coefficients(p);
        const double l = p.ell, n = p.n;
        const VectorXd a0 = q.I0 * a, a1 = q.I1 * a, b0 = q.I0 * b, b1 = q.I1 * b;
        const VectorXd ga = q.G * a, gb = q.G * b;
        for (int i = 0; i < q.t.size(); ++i) {
            const double t = q.t(i);
            const double grad_main = (1 - t * t) * a1(i) * b1(i) - l * t * (a0(i) * b1(i) + a1(i) * b0(i));
            const double grad_sing = (l * l * t * t + l * (l + n - 1)) * a0(i) * b0(i);
            interior += q.w_main(i) * (ga(i) * gb(i) + c.c_grad * grad_main + c.c_zero * a0(i) * b0(i));
            interior += q.w_sing(i) * c.c_grad * grad_sing;
        }
    }
    const double fa = b0row.dot(a), fb = b0row.dot(b), pa = b1row.dot(a), pb = b1row.dot(b);
    return interior + 0.5 * boundary_pairing_coefficient(p) * (fa * pb + fb * pa);
}

double mass_form(const SeparableProblem&, const EnergyQuadrature& q, const VectorXd& a, const VectorXd& b) {
    return (q.w_main.array() * (q.I0 * a).array() * (q.I0 * b).array()).sum();
}

void require_same(const Profile& u, const Profile& v) {
    const SeparableProblem &a = u.problem, &b = v.problem;
    if (a.model != b.model || a.nodes != b.nodes || a.xi != b.xi || a.ell != b.ell || a.n != b.n ||
        interval_length(a) != interval_length(b) || a.lower_order != b.lower_order)
        throw std::invalid_argument("profiles belong to different separable problems");
}

struct Solved {
    VectorXd values;
    double b2, b3;
};

// Second-order factors with L4 = S1 S2 on the reduced unknown.
struct Factors {
    MatrixXd S1, S2;
};

Factors factors(const Cheb& ch, const SeparableProblem& p) {
    const int M = ch.N + 1;
    const MatrixXd I = MatrixXd::Identity(M, M);
    if (p.model == Model::Flat) {
        const MatrixXd S = ch.D2 - p.xi * p.xi * I;
        return {S, S};
    }
    const MatrixXd G = zonal_laplacian(ch, p);
    double c1 = 0, c2 = 0;
    if (p.lower_order) {
        const double N = p.n + 1;
        c1 = N * (N - 2) / 4;
        c2 = (N + 2) * (N - 4) / 4;
    }
    return {c1 * I - G, c2 * I - G};
}

// Collocation of the factored system S2 p = q, S1 q = 0: two second-order
// problems keep the differentiation roundoff at the level of D^2.
Solved collocation_solve(const SeparableProblem& p, double f, double psi, double source) {
    const Cheb ch(p.nodes, interval_length(p));
    const int N = ch.N, M = N + 1;
    const Factors F = factors(ch, p);
    const BoundaryRows br = boundary_rows(ch, p);
    MatrixXd A = MatrixXd::Zero(2 * M, 2 * M);
    VectorXd rhs = VectorXd::Zero(2 * M);
    int row = 0;
    A.block(row, 0, 1, M) = br.b0.transpose();
    rhs(row++) = f;
    A.block(row, 0, 1, M) = br.b1.transpose();
    rhs(row++) = psi;
    const bool flat = p.model == Model::Flat;
    if (flat) {
        // clamped far end
        A(row++, N) = 1;
        A.block(row++, 0, 1, M) = ch.D.row(N);
    }
    // pole regularity is built into the polynomial space, so the hemisphere
    // collocates through t = 1
    const int last = flat ? N - 1 : N;
    for (int j = 1; j <= last; ++j) {
        A.block(row, 0, 1, M) = F.S2.row(j);
        A(row++, M + j) = -1;
        A.block(row, M, 1, M) = F.S1.row(j);
        rhs(row++) = source;
    }
    for (int j = 0; j < 2 * M; ++j) {
        const double s = A.row(j).cwiseAbs().maxCoeff();
        if (s > 0) {
            A.row(j) /= s;
            rhs(j) /= s;
        }
    }
    Eigen::PartialPivLU<MatrixXd> lu(A);
    if (!(lu.rcond() > 1e-15)) throw SolverError("extension problem: singular collocation system");
    const VectorXd x = lu.solve(rhs);
    Solved out;
    out.values = x.head(M);
    const VectorXd q = x.tail(M);
    const double u0 = out.values(0), u1 = ch.D.row(0).dot(out.values), q0 = q(0), q1 = ch.D.row(0).dot(q);
    if (flat) {
        const double k2 = p.xi * p.xi;
        out.b2 = q0 + 2 * k2 * u0;
        out.b3 = q1 - 2 * k2 * u1;
    } else {
        // rebuild p'' and the third-order combination from q = (c2 - G) p
        const double l = p.ell, n = p.n;
        const double c2 = p.lower_order ? (n + 3) * (n - 3) / 4 : 0.0;
        const double T2 = p.lower_order ? (n - 1) / 2 : 0.0;
        const double S2 = p.lower_order ? (n - 7) / 4 + (3 * n - 5) * n / 4 : 0.0;
        const double pdd = c2 * u0 - q0 + l * (l + n) * u0;
        out.b2 = pdd + (l * (l + n - 1) - l + (n - 3) / 2 * T2) * u0;
        out.b3 = c2 * u1 - q1 - (2 * l * (l + n - 1) + S2) * u1;
    }
    return out;
}

double data_scale(double f, double psi) { return std::max({std::abs(f), std::abs(psi), 1.0}); }

}  // namespace

double Profile::node(int j) const {
    return 0.5 * interval_length(problem) * (1 - std::cos(std::numbers::pi * j / problem.nodes));
}

double Profile::reduced(double s) const {
    const Cheb ch(problem.nodes, interval_length(problem));
    return ch.interp_row(s).dot(values);
}

double Profile::operator()(double r) const {
    if (problem.model == Model::Flat) return reduced(r);
    const double t = std::cos(r);
    return std::pow(std::sin(r), problem.ell) * reduced(t);
}

double Profile::f() const { return values(0); }

double Profile::psi() const {
    const Cheb ch(problem.nodes, interval_length(problem));
    return -ch.D.row(0).dot(values);
}

Profile sample_profile(const SeparableProblem& p, const std::function<double(double)>& fn) {
    validate(p);
    Profile u{p, VectorXd(p.nodes + 1)};
    for (int j = 0; j <= p.nodes; ++j) u.values(j) = fn(u.node(j));
    return u;
}

double apply_b2(const Profile& u) {
    const Cheb ch(u.problem.nodes, interval_length(u.problem));
    return boundary_rows(ch, u.problem).b2.dot(u.values);
}

double apply_b3(const Profile& u) {
    const Cheb ch(u.problem.nodes, interval_length(u.problem));
    return boundary_rows(ch, u.problem).b3.dot(u.values);
}

double interior_residual(const Profile& u, double source) {
    const Cheb ch(u.problem.nodes, interval_length(u.problem));
    const MatrixXd L = paneitz_matrix(ch, u.problem);
    const VectorXd r = (L * u.values).array() - source;
    const VectorXd scale = (L.cwiseAbs() * u.values.cwiseAbs()).array() + std::abs(source);
    double worst = 0;
    for (int j = 0; j < r.size(); ++j)
        if (scale(j) > 0) worst = std::max(worst, std::abs(r(j)) / scale(j));
    return worst;
}

double energy_form(const Profile& u, const Profile& v) {
    require_same(u, v);
    const Cheb ch(u.problem.nodes, interval_length(u.problem));
    const EnergyQuadrature q = energy_quadrature(ch, u.problem);
    const BoundaryRows br = boundary_rows(ch, u.problem);
    return form(u.problem, q, u.values, v.values, br.b0, br.b1);
}

double energy(const Profile& u) { return energy_form(u, u); }

double mass(const Profile& u) {
    const Cheb ch(u.problem.nodes, interval_length(u.problem));
    return mass_form(u.problem, energy_quadrature(ch, u.problem), u.values, u.values);
}

ExtensionSolution solve_extension(const SeparableProblem& p, double f, double psi, double source) {
    validate(p);
    const Solved coarse = collocation_solve(p, f, psi, source);
    SeparableProblem finer = p;
    finer.nodes = p.nodes + 4;
    const Solved fine = collocation_solve(finer, f, psi, source);
    const double scale =
        std::max({std::abs(coarse.b2), std::abs(coarse.b3), data_scale(f, psi), std::abs(source)});
    const double gap = std::max(std::abs(coarse.b2 - fine.b2), std::abs(coarse.b3 - fine.b3)) / scale;
    if (!(gap < 1e-7))
        throw SolverError("extension problem: refinement did not converge (boundary images moved by " +
                          std::to_string(gap) + ")");

    ExtensionSolution s;
    s.u = Profile{p, coarse.values};
    s.f = f;
    s.psi = psi;
    s.residual_interior = interior_residual(s.u, source);
    s.residual_b0 = std::abs(s.u.f() - f) / data_scale(f, psi);
    s.residual_b1 = std::abs(s.u.psi() - psi) / data_scale(f, psi);
    s.b2 = apply_b2(s.u);
    s.b3 = apply_b3(s.u);
    s.energy = energy(s.u);
    return s;
}

Profile admissible_profile(const SeparableProblem& p, double f, double psi) {
    validate(p);
    if (p.model == Model::Hemisphere) return sample_profile(p, [=](double t) { return f - psi * t; });
    if (p.xi > 0 && p.length == 0) {
        const double k = p.xi;
        return sample_profile(p, [=](double y) { return (f + (1.5 * k * f - psi) * y) * std::exp(-1.5 * k * y); });
    }
    const double L = interval_length(p);
    return sample_profile(p, [=](double y) {
        const double r = 1 - y / L;
        return (f + (2 * f / L - psi) * y) * r * r;
    });
}

Minimization minimize_energy(const Profile& u0, const std::vector<Profile>& basis) {
    const SeparableProblem& p = u0.problem;
    validate(p);
    for (const Profile& b : basis) {
        require_same(u0, b);
        const double scale = std::max(b.values.cwiseAbs().maxCoeff(), 1e-300);
        if (std::abs(b.f()) > 1e-10 * scale || std::abs(b.psi()) > 1e-8 * scale / interval_length(p))
            throw std::invalid_argument("minimize_energy: basis element has non-zero B0^3 or B1^3 trace");
    }
    const Cheb ch(p.nodes, interval_length(p));
    const EnergyQuadrature q = energy_quadrature(ch, p);
    const BoundaryRows br = boundary_rows(ch, p);
    Minimization m;
    Profile best = u0;
    const int K = static_cast<int>(basis.size());
    if (K > 0) {
        MatrixXd A(K, K);
        VectorXd b(K);
        for (int i = 0; i < K; ++i) {
            b(i) = form(p, q, u0.values, basis[i].values, br.b0, br.b1);
            for (int j = 0; j <= i; ++j) A(i, j) = A(j, i) = form(p, q, basis[i].values, basis[j].values, br.b0, br.b1);
        }
        Eigen::SelfAdjointEigenSolver<MatrixXd> es(A);
        const double top = es.eigenvalues().cwiseAbs().maxCoeff();
        if (!(es.eigenvalues()(0) > 1e-14 * top))
            throw IndefiniteError("minimize_energy: energy form is not positive on the perturbation span");
        const VectorXd c = es.eigenvectors() * (es.eigenvalues().cwiseInverse().asDiagonal() *
                                                (es.eigenvectors().transpose() * (-b)));
        for (int i = 0; i < K; ++i) best.values += c(i) * basis[i].values;
    }
    const double f = u0.f(), psi = u0.psi();
    m.solution.u = best;
    m.solution.f = f;
    m.solution.psi = psi;
    m.solution.residual_interior = interior_residual(best);
    m.solution.residual_b0 = std::abs(best.f() - f) / data_scale(f, psi);
    m.solution.residual_b1 = std::abs(best.psi() - psi) / data_scale(f, psi);
    m.solution.b2 = br.b2.dot(best.values);
    m.solution.b3 = br.b3.dot(best.values);
    m.solution.energy = form(p, q, best.values, best.values, br.b0, br.b1);
    const ExtensionSolution direct = solve_extension(p, f, psi);
    m.direct_energy = direct.energy;
    m.energy_gap = m.solution.energy - direct.energy;
    m.profile_gap = (best.values - direct.u.values).cwiseAbs().maxCoeff();
    return m;
}

Minimization minimize_energy(const SeparableProblem& p, double f, double psi, const std::vector<Profile>& basis) {
    return minimize_energy(admissible_profile(p, f, psi), basis);
}

double induced_operator(const SeparableProblem& p, int k) {
    if (k == 1) return 0.5 * solve_extension(p, 0.0, 1.0).b2;
    if (k == 3) return 0.5 * solve_extension(p, 1.0, 0.0).b3;
    throw std::invalid_argument("induced_operator: k must be 1 or 3");
}

CheckReport check_decoupling(const SeparableProblem& p, double f, double psi, double tol) {
    const ExtensionSolution uf = solve_extension(p, f, 0.0), up = solve_extension(p, 0.0, psi),
                            both = solve_extension(p, f, psi);
    const double P1 = induced_operator(p, 1), P3 = induced_operator(p, 3);
    const double scale = std::max({std::abs(P3 * f), std::abs(P1 * psi), 1e-300});
    const double r1 = std::abs(uf.b2), r2 = std::abs(up.b3);
    const double r3 = std::abs(both.b2 - 2 * P1 * psi), r4 = std::abs(both.b3 - 2 * P3 * f);
    const double worst = (f == 0 && psi == 0) ? std::max({r1, r2, r3, r4}) : std::max({r1, r2, r3, r4}) / scale;
    std::string mode = p.model == Model::Flat ? "flat |xi|=" + std::to_string(p.xi)
                                              : "hemisphere n=" + std::to_string(p.n) + " l=" + std::to_string(p.ell);
    CheckReport r = tolerance_check("solver.decoupling", "decoupling of the boundary data, " + mode, worst, tol);
    r.values = {{"B2_u_f0", uf.b2}, {"B3_u_0psi", up.b3}, {"B2_minus_2P1psi", both.b2 - 2 * P1 * psi},
                {"B3_minus_2P3f", both.b3 - 2 * P3 * f}};
    return r;
}

double estimate_lambda1(const SeparableProblem& p) {
    if (p.nodes < 1) throw std::invalid_argument("estimate_lambda1: empty profile space");
    const int K = p.model == Model::Flat ? p.nodes - 4 : p.nodes - 2;
    if (K < 1 || p.nodes < 6) throw std::invalid_argument("estimate_lambda1: profile grid too coarse, empty trial space");
    validate(p);
    const double L = interval_length(p);
    std::vector<Profile> basis;
    for (int j = 0; j < K; ++j) {
        basis.push_back(sample_profile(p, [=](double s) {
            const double x = 2 * s / L - 1;
            const double T = std::cos(j * std::acos(std::clamp(x, -1.0, 1.0)));
            const double r = s / L;
            return p.model == Model::Flat ? r * r * (1 - r) * (1 - r) * T : r * r * T;
        }));
    }
    const Cheb ch(p.nodes, interval_length(p));
    const EnergyQuadrature q = energy_quadrature(ch, p);
    const BoundaryRows br = boundary_rows(ch, p);
    MatrixXd A(K, K), B(K, K);
    for (int i = 0; i < K; ++i)
        for (int j = 0; j <= i; ++j) {
            A(i, j) = A(j, i) = form(p, q, basis[i].values, basis[j].values, br.b0, br.b1);
            B(i, j) = B(j, i) = mass_form(p, q, basis[i].values, basis[j].values);
        }
    Eigen::GeneralizedSelfAdjointEigenSolver<MatrixXd> es(A, B);
    if (es.info() != Eigen::Success) throw SolverError("estimate_lambda1: eigenvalue solve failed");
    return es.eigenvalues()(0);
}

}  // namespace paneitz
