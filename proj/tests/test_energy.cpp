#include <doctest.h>

#include <cmath>
#include <numbers>

#include "paneitz/energy.hpp"

using namespace paneitz;
using std::numbers::pi;

namespace {

// Vanishes with its first five derivatives on both faces, so every boundary
// term of the pairings is zero.
double bump(double t) { return std::pow(std::sin(pi * t), 6); }

GridFn slab(int dim) {
    return [dim](int N) { return ChartGrid::slab(dim, N); };
}

}  // namespace

TEST_CASE("flat compactly supported pairings") {
    ChartGrid g = ChartGrid::slab(3, 65);
    Geometry geo(g, flat_metric(g));
    const Field u = sample(g, [](const double* x) { return bump(x[0]) * std::cos(2 * pi * x[1]); });
    const Field v = sample(g, [](const double* x) { return bump(x[0]) * (1 + std::cos(2 * pi * x[1]) + std::sin(2 * pi * x[2])); });
    const EnergyReport q4 = q4_pairing(geo, u, v);
    const double lapl = geo.integrate([&] {
        const Field a = geo.laplacian(u), b = geo.laplacian(v);
        Field p(a.size());
        for (std::size_t k = 0; k < a.size(); ++k) p[k] = a[k] * b[k];
        return p;
    }());
    CHECK(q4.route_b == doctest::Approx(lapl).epsilon(1e-12));
    CHECK(std::abs(lapl) > 1.0);
    CHECK(q4.discrepancy < 1e-6 * std::abs(lapl));
    const EnergyReport q2 = q2_pairing(geo, u, v);
    CHECK(q2.route_b == doctest::Approx(geo.integrate(geo.inner(geo.gradient(u), geo.gradient(v)))).epsilon(1e-12));
    CHECK(q2.discrepancy < 1e-6 * std::abs(q2.route_b));
    const ReillyResult r = reilly(geo, u);
    CHECK(r.residual < 1e-6 * r.hessian_norm);
}

TEST_CASE("constants have zero energy on the flat slab") {
    for (int dim : {3, 4}) {
        ChartGrid g = ChartGrid::slab(dim, 11);
        Geometry geo(g, flat_metric(g));
        const Field one(g.count(), 1.0);
        const EnergyReport q4 = q4_pairing(geo, one, one), q2 = q2_pairing(geo, one, one);
        CHECK(std::abs(q4.route_a) < 1e-9);
        CHECK(std::abs(q4.route_b) < 1e-9);
        CHECK(std::abs(q2.route_a) < 1e-9);
        CHECK(std::abs(q2.route_b) < 1e-9);
    }
}

TEST_CASE("term breakdowns sum to the routes") {
    ChartGrid g = ChartGrid::slab(3, 17);
    const ConformalDraw d = draw_case(3, 3, false);
    Geometry geo(g, d.metric.sample(g));
    const EnergyReport r = q4_pairing(geo, d.u.sample(g), d.v.sample(g));
    double a = 0, b = 0;
    for (const auto& t : r.terms_a) a += t.second;
    for (const auto& t : r.terms_b) b += t.second;
    CHECK(a == r.route_a);
    CHECK(b == r.route_b);
    CHECK(r.discrepancy == std::abs(r.route_a - r.route_b));
    CHECK(r.terms_a.size() == 3);
    CHECK(r.terms_b.size() == 8);
}

TEST_CASE("Reilly formula for a quadratic in the normal variable") {
    ChartGrid g = ChartGrid::slab(3, 11);
    Geometry geo(g, flat_metric(g));
    const ReillyResult r = reilly(geo, sample(g, [](const double* x) { return x[0] * x[0]; }));
    CHECK(r.hessian_norm == doctest::Approx(4.0).epsilon(1e-12));
    CHECK(r.recast == doctest::Approx(4.0).epsilon(1e-12));
}

TEST_CASE("pairings converge on random curved backgrounds") {
    for (bool flat : {true, false}) {
        const ConformalDraw d = draw_case(flat ? 501 : 502, 3, flat);
        auto reports = check_energy(slab(3), d, {17, 33});
        reports.push_back(check_energy_covariance(slab(3), d, {17, 33}));
        reports.push_back(reilly_check(slab(3), d, {17, 33}));
        for (const auto& r : reports) {
            INFO(r.id, " ", r.residuals[0], " -> ", r.residuals[1], " order ", r.order);
            CHECK(r.pass);
        }
    }
}

TEST_CASE("Euler-Lagrange residuals") {
    ChartGrid g = ChartGrid::slab(5, 11);
    Geometry geo(g, flat_metric(g));
    const Field one(g.count(), 1.0);
    for (Constraint c : {Constraint::Y41, Constraint::Y42}) {
        const CheckReport r = euler_residual(geo, one, 0.0, c);
        CHECK(r.pass);
        CHECK(r.residuals.size() == 1);
    }
    const Field wave = sample(g, [](const double* x) { return 2 + std::cos(2 * pi * x[1]); });
    const EulerResiduals e = euler_residuals(geo, wave, 1.0, Constraint::Y42);
    CHECK(e.interior > 1.0);
    CHECK(e.top > 0.1);
    CHECK_FALSE(euler_residual(geo, wave, 1.0, Constraint::Y42).pass);
    const Field neg = sample(g, [](const double* x) { return x[0] - 0.5; });
    CHECK_THROWS_AS(euler_residuals(geo, neg, 1.0, Constraint::Y41), std::domain_error);
    ChartGrid g4 = ChartGrid::slab(4, 11);
    Geometry geo4(g4, flat_metric(g4));
    CHECK_THROWS_AS(euler_residuals(geo4, Field(g4.count(), 1.0), 0.0, Constraint::Y41), std::invalid_argument);
}
