#include "paneitz/models.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "paneitz/chebyshev.hpp"
#include "paneitz/operators.hpp"
#include "paneitz/special.hpp"

namespace paneitz {

using std::numbers::pi;

namespace {

// Both models have h_r with vanishing first and third derivatives of
// log det(h_0^{-1} h_r) at r = 0: flat h_r = h, hemisphere h_r = cos^2(r) h.
// An even function has odd centered differences that vanish exactly.
const bool kOddTermsVanish = [] {
    for (int n = 2; n <= 8; ++n) {
        auto logdet = [n](double r) { return 2.0 * n * std::log(std::cos(r)); };
        const double h = 1e-3;
        const double d1 = logdet(h) - logdet(-h);
        const double d3 = logdet(2 * h) - 2 * logdet(h) + 2 * logdet(-h) - logdet(-2 * h);
        if (d1 != 0.0 || d3 != 0.0) throw std::logic_error("hemisphere metric expansion has odd terms");
    }
    return true;
}();

}  // namespace

double FourierProfile::operator()(double y) const { return (a + b * y) * std::exp(-xi * y); }

FourierProfile flat_fourier_extension(double xi, double f, double psi) {
    if (!(xi > 0)) throw std::invalid_argument("flat_fourier_extension: xi = 0 has no decaying extension");
    FourierProfile p;
    p.xi = xi;
    p.a = f;
    p.b = xi * f - psi;
    p.b2 = 2 * xi * psi;
    p.b3 = 2 * xi * xi * xi * f;
    return p;
}

double ScatteringExpansion::multiplier() const {
    if (leading == 0) return 0.0;
    return gamma == 0.5 ? -G / leading : 3 * G / leading;
}

double ScatteringExpansion::operator()(double y) const {
    const double a = n / 2.0 - gamma;
    const double k = xi;
    const double h = gamma == 0.5 ? std::exp(-k * y) : (1 + k * y) * std::exp(-k * y);
    return std::pow(y, a) * leading * h;
}

namespace {

void check_gamma(double gamma) {
    if (gamma != 0.5 && gamma != 1.5) throw std::invalid_argument("scattering: gamma must be 1/2 or 3/2");
}

}  // namespace

ScatteringExpansion hyperbolic_scattering(double gamma, int n, double xi, double datum) {
    check_gamma(gamma);
    if (n < 2) throw std::invalid_argument("scattering: n must be at least 2");
    if (xi < 0) throw std::invalid_argument("scattering: |xi| must be non-negative");
    ScatteringExpansion s;
    s.gamma = gamma;
    s.n = n;
    s.xi = xi;
    s.leading = datum;
    if (gamma == 0.5) {
        // e^{-k y} = 1 - k y + ...
        s.G = -xi * datum;
    } else {
        // (1 + k y) e^{-k y} = 1 - k^2 y^2/2 + k^3 y^3/3 + ...
        s.second = -0.5 * xi * xi * datum;
        s.G = xi * xi * xi / 3 * datum;
    }
    return s;
}

ScatteringExpansion scattering_by_ode(double gamma, int n, double xi, double datum, int nodes) {
    check_gamma(gamma);
    if (n < 2) throw std::invalid_argument("scattering: n must be at least 2");
    if (xi < 0) throw std::invalid_argument("scattering: |xi| must be non-negative");
    const double Y = xi > 0 ? 20.0 / xi : 1.0;
    // with xi = 0 the solution is constant and a short grid keeps D3 quiet
    if (xi == 0) nodes = std::min(nodes, 8);
    const Cheb ch(nodes, Y);
    const int M = nodes + 1;
    Eigen::MatrixXd A = Eigen::MatrixXd::Zero(M, M);
    Eigen::VectorXd rhs = Eigen::VectorXd::Zero(M);
    A(0, 0) = 1;
    rhs(0) = datum;
    for (int j = 1; j < nodes; ++j) {
        const double y = ch.s(j);
        A.row(j) = -y * ch.D2.row(j) + (2 * gamma - 1) * ch.D.row(j);
        A(j, j) += xi * xi * y;
    }
    A.row(nodes) = ch.D.row(nodes);
    Eigen::VectorXd h = A.partialPivLu().solve(rhs);
    ScatteringExpansion s;
    // differentiate h - h(0) so a constant solution has exactly zero slope
    s.leading = h(0);
    h.array() -= s.leading;
    s.gamma = gamma;
    s.n = n;
    s.xi = xi;
    if (gamma == 0.5) {
        s.G = ch.D.row(0).dot(h);
    } else {
        s.second = 0.5 * ch.D2.row(0).dot(h);
        s.G = ch.D3.row(0).dot(h) / 6;
    }
    return s;
}

FactorizationResidual factorization_residual(const ScatteringExpansion& v, int nodes) {
    const int n = v.n;
    std::vector<int> count{nodes};
    std::vector<double> lo{1.0}, hi{2.0};
    std::vector<bool> periodic{false};
    for (int a = 1; a <= n; ++a) {
        count.push_back(a == 1 ? nodes : 10);
        lo.push_back(0.0);
        hi.push_back(a == 1 && v.xi > 0 ? 2 * pi / v.xi : 1.0);
        periodic.push_back(true);
    }
    const ChartGrid grid(count, lo, hi, periodic);
    const Geometry geo(grid, conformal_metric(grid, sample(grid, [](const double* x) { return -std::log(x[0]); })));
    const Field u = sample(grid, [&](const double* x) { return std::cos(v.xi * x[1]) * v(x[0]); });

    FactorizationResidual r;
    r.constant = v.gamma == 1.5 ? (n * n - 9) / 4.0 : (n * n - 1) / 4.0;
    const Field L4 = paneitz_operator(geo, u);
    const Field lap = geo.laplacian(u);
    constexpr int kMargin = 8;
    for (std::size_t p = 0; p < u.size(); ++p) {
        const int i = grid.index(p, 0);
        r.scale = std::max(r.scale, std::abs(u[p]));
        r.full_chart = std::max(r.full_chart, std::abs(L4[p]));
        if (i >= kMargin && i < nodes - kMargin) {
            r.paneitz = std::max(r.paneitz, std::abs(L4[p]));
            r.factor = std::max(r.factor, std::abs(-lap[p] - r.constant * u[p]));
        }
    }
    return r;
}

double hemisphere_spectrum(int n, int ell, int k) {
    if (ell < 0) throw std::invalid_argument("hemisphere_spectrum: negative degree");
    if (k != 1 && k != 3) throw std::invalid_argument("hemisphere_spectrum: k must be 1 or 3");
    return gamma_ratio(ell + n / 2.0 + k / 2.0, ell + n / 2.0 - k / 2.0);
}

double transported_flat_symbol(int n, int ell, int k) { return std::pow(ell + (n - 1) / 2.0, k); }

double beckner_constant(int n, double gamma) {
    if (!(gamma > 0 && gamma < n / 2.0)) throw std::invalid_argument("beckner_constant: gamma outside (0, n/2)");
    return std::pow(2.0, 2 * gamma) * std::pow(pi, gamma) * gamma_ratio((n + 2 * gamma) / 2, (n - 2 * gamma) / 2) *
           std::pow(gamma_ratio(n / 2.0, n), 2 * gamma / n);
}

SharpConstant sharp_constant(int n, int k) {
    if (k != 1 && k != 3) throw std::invalid_argument("sharp_constant: k must be 1 or 3");
    if (n <= k) throw std::invalid_argument("sharp_constant: requires n > k");
    SharpConstant c{n, k, 0.0};
    c.value = std::pow(2.0, k + 1) * std::pow(pi, k / 2.0) * gamma_ratio((n + k) / 2.0, (n - k) / 2.0) *
              std::pow(gamma_ratio(n / 2.0, n), static_cast<double>(k) / n);
    // the energy carries twice the fractional pairings
    const double b = 2 * beckner_constant(n, k / 2.0);
    if (std::abs(c.value - b) > 1e-12 * std::abs(b)) throw std::logic_error("sharp_constant: inconsistent with C_{2 gamma}");
    return c;
}

double sphere_volume(int m) { return 2 * std::pow(pi, (m + 1) / 2.0) * rgamma((m + 1) / 2.0); }

double gegenbauer(int l, double lambda, double s) {
    if (l == 0) return 1.0;
    double a = 1, b = 2 * lambda * s;
    for (int m = 1; m < l; ++m) {
        const double c = (2 * (m + lambda) * s * b - (m + 2 * lambda - 1) * a) / (m + 1);
        a = b;
        b = c;
    }
    return b;
}

double zonal_norm_sq(int n, int l) {
    if (n < 2) throw std::invalid_argument("zonal_norm_sq: n must be at least 2");
    const double lambda = (n - 1) / 2.0;
    // int_{-1}^{1} (C_l^lambda)^2 (1-s^2)^{lambda-1/2} ds
    const double line = pi * std::pow(2.0, 1 - 2 * lambda) * std::exp(lgamma_fn(l + 2 * lambda) - lgamma_fn(l + 1)) /
                        ((l + lambda) * std::pow(gamma_fn(lambda), 2));
    return sphere_volume(n - 1) * line;
}

double ZonalDatum::operator()(double s) const {
    const double lambda = (n - 1) / 2.0;
    double sum = 0;
    for (std::size_t l = 0; l < c.size(); ++l)
        if (c[l] != 0) sum += c[l] * gegenbauer(static_cast<int>(l), lambda, s);
    return sum;
}

namespace {

Quadrature sphere_rule(int n) { return gauss_jacobi(200, (n - 2) / 2.0, (n - 2) / 2.0); }

}  // namespace

double lp_norm(const ZonalDatum& f, double p) {
    const Quadrature q = sphere_rule(f.n);
    double sum = 0;
    for (std::size_t i = 0; i < q.nodes.size(); ++i) sum += q.weights[i] * std::pow(std::abs(f(q.nodes[i])), p);
    return std::pow(sphere_volume(f.n - 1) * sum, 1 / p);
}

ZonalDatum project_zonal(int n, int lmax, const std::function<double(double)>& fn) {
    if (n < 2) throw std::invalid_argument("project_zonal: n must be at least 2");
    const Quadrature q = sphere_rule(n);
    const double lambda = (n - 1) / 2.0;
    ZonalDatum z{n, std::vector<double>(lmax + 1, 0.0)};
    std::vector<double> vals(q.nodes.size());
    for (std::size_t i = 0; i < q.nodes.size(); ++i) vals[i] = fn(q.nodes[i]);
    for (int l = 0; l <= lmax; ++l) {
        double sum = 0;
        for (std::size_t i = 0; i < q.nodes.size(); ++i) sum += q.weights[i] * vals[i] * gegenbauer(l, lambda, q.nodes[i]);
        z.c[l] = sphere_volume(n - 1) * sum / zonal_norm_sq(n, l);
    }
    return z;
}

ZonalDatum extremal_family(int n, BubbleKind kind, double a, double xi, int lmax) {
    if (!(std::abs(xi) < 1)) throw std::invalid_argument("extremal_family: the point must lie in the open unit ball");
    const double e = kind == BubbleKind::F ? (n - 3) / 2.0 : (n - 1) / 2.0;
    if (a == 0) return ZonalDatum{n, std::vector<double>(lmax + 1, 0.0)};
    return project_zonal(n, lmax, [=](double s) { return a * std::pow(1 + xi * s, -e); });
}

SobolevDeficit sobolev_deficit(int n, const std::vector<Profile>& modes) {
    if (n < 4) throw std::invalid_argument("sobolev_deficit: requires n >= 4");
    ZonalDatum f{n, {}}, psi{n, {}};
    double E = 0, cross = 0;
    for (std::size_t l = 0; l < modes.size(); ++l) {
        const SeparableProblem& p = modes[l].problem;
        if (p.model != Model::Hemisphere || p.n != n || p.ell != static_cast<int>(l) || !p.lower_order)
            throw std::invalid_argument("sobolev_deficit: modes[l] must be a degree-l hemisphere profile");
        const double N = zonal_norm_sq(n, static_cast<int>(l));
        const double fl = modes[l].f(), pl = modes[l].psi();
        f.c.push_back(fl);
        psi.c.push_back(pl);
        E += energy(modes[l]) * N;
        // 4 oint (psi lap_bar f - (n-1)(n-3)/8 f psi)
        cross -= (4.0 * l * (l + n - 1) + (n - 1) * (n - 3) / 2.0) * fl * pl * N;
    }
    const double nf = lp_norm(f, 2.0 * n / (n - 3)), np = lp_norm(psi, 2.0 * n / (n - 1));
    SobolevDeficit d;
    d.energy = E;
    d.lhs = E + cross;
    d.rhs = cross + sharp_constant(n, 3).value * nf * nf + sharp_constant(n, 1).value * np * np;
    d.deficit = d.lhs - d.rhs;
    d.quotient = nf > 0 ? E / (nf * nf) : 0.0;
    return d;
}

SobolevDeficit sobolev_deficit(const ZonalDatum& f, const ZonalDatum& psi) {
    if (f.n != psi.n) throw std::invalid_argument("sobolev_deficit: data on different spheres");
    const std::size_t L = std::max(f.c.size(), psi.c.size());
    std::vector<Profile> modes;
    for (std::size_t l = 0; l < L; ++l) {
        const double fl = l < f.c.size() ? f.c[l] : 0.0, pl = l < psi.c.size() ? psi.c[l] : 0.0;
        modes.push_back(solve_extension(SeparableProblem::hemisphere(f.n, static_cast<int>(l)), fl, pl).u);
    }
    return sobolev_deficit(f.n, modes);
}

double extension_deficit(const Profile& u) {
    const SeparableProblem& p = u.problem;
    double P1, P3;
    if (p.model == Model::Flat) {
        P1 = p.xi;
        P3 = p.xi * p.xi * p.xi;
    } else {
        if (!p.lower_order) throw std::invalid_argument("extension_deficit: needs the full Paneitz operator");
        P1 = hemisphere_spectrum(p.n, p.ell, 1);
        P3 = hemisphere_spectrum(p.n, p.ell, 3);
    }
    const double f = u.f(), psi = u.psi();
    return 0.5 * energy(u) - (P3 * f * f + P1 * psi * psi);
}

double flat_biharmonic_deficit(const Profile& u) {
    const SeparableProblem& p = u.problem;
    if (p.model != Model::Flat) throw std::invalid_argument("flat_biharmonic_deficit: flat modes only");
    const double k = p.xi, f = u.f(), psi = u.psi();
    const double lap2 = energy(u) - 4 * k * k * f * psi;
    return lap2 - (2 * k * k * k * f * f - 4 * k * k * f * psi + 2 * k * psi * psi);
}

}  // namespace paneitz
