#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "paneitz/fourdim.hpp"
#include "paneitz/operators.hpp"
#include "paneitz/special.hpp"

using namespace paneitz;
using std::numbers::pi;

namespace {

GridFn slab(int dim) {
    return [dim](int N) { return ChartGrid::slab(dim, N); };
}

double value(const NamedValues& v, const std::string& name) {
    for (const auto& [k, x] : v)
        if (k == name) return x;
    FAIL("missing value ", name);
    return 0;
}

}  // namespace

TEST_CASE("four-dimensional guard") {
    const ChartGrid g3 = ChartGrid::slab(3, 11);
    const Geometry g(g3, flat_metric(g3));
    CHECK_THROWS_AS(total_q(g), std::invalid_argument);
    CHECK_THROWS_AS(gauss_bonnet(g), std::invalid_argument);
    CHECK_THROWS_AS(functionals(g, Field(g3.count(), 0.0)), std::invalid_argument);
}

TEST_CASE("trivial rescalings and data") {
    const ChartGrid grid = ChartGrid::slab(4, 11);
    const ConformalDraw draw = draw_case(5, 4, false, 0.1, 0.3, 0.3);
    const MetricField m = draw.metric.sample(grid);
    const Geometry g(grid, m);
    const Field zero(grid.count(), 0.0), u = draw.u.sample(grid);

    for (const auto& [k, r] : t_prescription_residuals(g, g, zero)) CHECK_MESSAGE(r == 0.0, k);
    const Field c(grid.count(), 0.4);
    const Geometry gc(grid, rescale(m, c));
    for (const auto& [k, r] : t_prescription_residuals(g, gc, c)) CHECK_MESSAGE(r < 1e-9, k);
    CHECK(std::abs(total_q(gc) - total_q(g)) < 1e-9);

    const FunctionalValues f0 = functionals(g, zero);
    CHECK(f0.F == 0.0);
    CHECK(f0.G == 0.0);
    // v = 0: F-hat(0) = F(u) - F(u) on the nose
    const Geometry gu(grid, rescale(m, u));
    const FunctionalValues hat0 = functionals(gu, zero);
    CHECK(hat0.F == 0.0);
    CHECK(hat0.G == 0.0);

    const FunctionalValues fu = functionals(g, u);
    double sF = 0, sG = 0;
    for (const auto& t : fu.F_terms) sF += t.second;
    for (const auto& t : fu.G_terms) sG += t.second;
    CHECK(sF == doctest::Approx(fu.F));
    CHECK(sG == doctest::Approx(fu.G));
}

TEST_CASE("flat slab identities reduce to zero") {
    const ChartGrid grid = ChartGrid::slab(4, 11);
    const Geometry g(grid, flat_metric(grid));
    const Field u = draw_case(3, 4, true).u.sample(grid);
    for (int face = 0; face < 2; ++face) {
        const Boundary b(g, face);
        const ChangQingBoundary cq = chang_qing_operators(b, u);
        const Field B3 = paneitz_boundary(b, 3, u);
        for (std::size_t p = 0; p < b.count(); ++p) {
            CHECK(std::abs(cq.P3[p] - 0.5 * B3[p]) < 1e-9);
            CHECK(std::abs(cq.P32[p]) < 1e-9);
            CHECK(std::abs(cq.T[p]) < 1e-10);
        }
    }
    const GaussBonnet gb = gauss_bonnet(g);
    CHECK(std::abs(gb.total()) < 1e-12);
    CHECK(std::abs(chang_qing_correction(g, u)) < 1e-12);
}

TEST_CASE("chart identities under refinement") {
    for (bool cf : {false, true}) {
        const ConformalDraw draw = draw_case(1, 4, cf, 0.1, 0.3, 0.3);
        for (const CheckReport& c : check_fourdim(slab(4), draw, {13, 25})) {
            INFO(c.id, " residuals ", c.residuals.front(), " -> ", c.residuals.back(), " order ", c.order);
            CHECK(c.pass);
        }
    }
}

TEST_CASE("Gauss-Bonnet total is a conformal invariant") {
    const ChartGrid grid = ChartGrid::slab(4, 17);
    const ConformalDraw draw = draw_case(11, 4, false, 0.1, 0.3, 0.3);
    const MetricField m = draw.metric.sample(grid);
    const Geometry g(grid, m), gh(grid, rescale(m, draw.sigma.sample(grid)));
    const GaussBonnet a = gauss_bonnet(g), b = gauss_bonnet(gh);
    INFO("weyl ", a.weyl, " q ", a.q, " t ", a.t, " a0 ", a.a0);
    // chi(T^3 x I) = 0
    CHECK(std::abs(a.total()) < 5e-3 * (std::abs(a.weyl) + std::abs(a.q) + std::abs(a.t)));
    CHECK(std::abs(b.total()) < 5e-3 * (std::abs(b.weyl) + std::abs(b.q) + std::abs(b.t)));
    CHECK(a.weyl > 0);
    CHECK(b.weyl == doctest::Approx(a.weyl).epsilon(1e-2));
}

TEST_CASE("T-curvature of the models") {
    const TCurvatureResult h = compute_t_curvature(FourModel::Hemisphere);
    CHECK(h.T == doctest::Approx(2.0).epsilon(1e-8));
    CHECK(std::abs(h.total - 4 * pi * pi) < 1e-4 * 4 * pi * pi);
    CHECK(h.gauss_bonnet == doctest::Approx(8 * pi * pi * h.chi).epsilon(1e-8));
    CHECK(h.residual_interior < 1e-10);
    CHECK(h.residual_v < 1e-12);
    CHECK(h.residual_b1 < 1e-10);

    const TCurvatureResult f = compute_t_curvature(FourModel::FlatSlab);
    CHECK(f.T == 0.0);
    CHECK(f.gauss_bonnet == 0.0);
    CHECK(f.v.values.cwiseAbs().maxCoeff() == 0.0);

    const double q3 = q3_by_scattering();
    CHECK(std::abs(q3 - h.T) < 1e-4);
    CHECK(std::abs(q3 - 2.0) < 1e-8);
}

TEST_CASE("T-curvature transformation law on the hemisphere") {
    CHECK(t_curvature_transformation_residual(ZonalDatum{3, {0.0}}) < 1e-8);
    std::mt19937_64 rng(8);
    std::normal_distribution<double> N;
    for (int t = 0; t < 5; ++t) {
        ZonalDatum w{3, {}};
        for (int l = 0; l <= 4; ++l) w.c.push_back(0.3 * N(rng) / (1 + l));
        CHECK(t_curvature_transformation_residual(w) < 1e-7);
    }
    CHECK_THROWS_AS(t_curvature_transformation_residual(ZonalDatum{4, {0.0}}), std::invalid_argument);
}

TEST_CASE("critical points of F and G") {
    // u = 0 on the hemisphere: the left side is the model's T_2^3 = 1
    const CriticalResiduals g0 = critical_residuals_g(ZonalDatum{3, {0.0}}, ZonalDatum{3, {0.0}});
    CHECK(value(g0.values, "2 B1 T1 + T2") == doctest::Approx(1.0).epsilon(1e-10));
    // the constant psi = -1/4 extension is critical for every constant f
    for (double a : {0.0, 0.7}) {
        const CriticalResiduals g = critical_residuals_g(ZonalDatum{3, {a}}, ZonalDatum{3, {-0.25}});
        CHECK(value(g.values, "2 B1 T1 + T2") < 1e-10);
    }
    const CriticalResiduals gn = critical_residuals_g(ZonalDatum{3, {0.0, 0.2}}, ZonalDatum{3, {-0.25, 0.1}});
    CHECK(value(gn.values, "2 B1 T1 + T2") > 1e-2);

    // slab: u = c + b x0 is biharmonic with vanishing second normal and
    // tangential derivatives, so Q-hat = 0 and T-hat_2 = 0; c fixes the volume
    const double slope = 0.5, c = -std::log(1 + std::exp(3 * slope)) / 3;
    std::vector<double> q, t2, vol;
    for (int N : {11, 21}) {
        const ChartGrid grid = ChartGrid::slab(4, N);
        Field u(grid.count());
        for (std::size_t p = 0; p < u.size(); ++p) u[p] = c + slope * grid.coord(0, grid.index(p, 0));
        const CriticalResiduals r = critical_residuals_f(Geometry(grid, flat_metric(grid)), u);
        q.push_back(value(r.values, "Q4"));
        t2.push_back(value(r.values, "T2"));
        vol.push_back(value(r.values, "volume"));
    }
    INFO("Q4 ", q[0], " -> ", q[1], "  T2 ", t2[0], " -> ", t2[1], "  vol ", vol[0], " -> ", vol[1]);
    CHECK((q[1] < q[0] / 4 || q[1] < 1e-9));
    CHECK((t2[1] < t2[0] / 4 || t2[1] < 1e-9));
    CHECK(vol[1] < 1e-6);

    // u = 0 on the unit slab is not critical: the boundary has area 2
    const ChartGrid grid = ChartGrid::slab(4, 11);
    const CriticalResiduals z = critical_residuals_f(Geometry(grid, flat_metric(grid)), Field(grid.count(), 0.0));
    CHECK(value(z.values, "volume") == doctest::Approx(1.0));
    CHECK(value(z.values, "Q4") < 1e-8);
}

TEST_CASE("critical sharp inequality on the four-hemisphere") {
    // constants and the log-bubbles are the equality cases
    for (double a : {0.0, 1.3}) {
        const CriticalSharpDeficit d = critical_sharp_deficit(ZonalDatum{3, {a}}, ZonalDatum{3, {0.0}});
        CHECK(std::abs(d.deficit) <= 1e-6);
    }
    for (double xi : {0.3, 0.6}) {
        const ZonalDatum f = project_zonal(3, 40, [xi](double s) { return 0.5 - std::log(1 + xi * s); });
        const CriticalSharpDeficit d = critical_sharp_deficit(f, ZonalDatum{3, {0.0}});
        INFO("xi ", xi, " deficit ", d.deficit);
        CHECK(std::abs(d.deficit) <= 1e-4);
        CHECK(std::abs(d.beckner_f) <= 1e-4);
        // the opposite logarithm is not an equality case
        const ZonalDatum g = project_zonal(3, 40, [xi](double s) { return 0.5 + std::log(1 + xi * s); });
        CHECK(critical_sharp_deficit(g, ZonalDatum{3, {0.0}}).deficit > 1e-2);
    }
    for (double xi : {0.3, 0.6}) {
        const ZonalDatum psi = project_zonal(3, 60, [xi](double s) { return 0.8 / (1 + xi * s); });
        const CriticalSharpDeficit d = critical_sharp_deficit(ZonalDatum{3, {0.0}}, psi);
        INFO("xi ", xi, " beckner_psi ", d.beckner_psi);
        CHECK(std::abs(d.beckner_psi) <= 1e-6);
    }

    // u = 1 itself: f = 1, psi = 0 and no interior energy, so both sides vanish
    const Profile one = sample_profile(SeparableProblem::hemisphere(3, 0), [](double) { return 1.0; });
    const CriticalSharpDeficit d1 = critical_sharp_deficit(std::vector<Profile>{one});
    CHECK(std::abs(d1.lhs) < 1e-12);
    CHECK(std::abs(d1.rhs) < 1e-12);
    CHECK(std::abs(d1.deficit) < 1e-12);

    std::mt19937_64 rng(606);
    std::normal_distribution<double> N;
    for (int t = 0; t < 50; ++t) {
        ZonalDatum f{3, {}}, psi{3, {}};
        for (int l = 0; l <= 5; ++l) {
            f.c.push_back(N(rng) / (1 + l));
            psi.c.push_back(N(rng) / (1 + l));
        }
        const CriticalSharpDeficit d = critical_sharp_deficit(f, psi);
        CHECK(d.deficit >= -1e-8);
        CHECK(d.beckner_f >= -1e-8);
        CHECK(d.beckner_psi >= -1e-8);
    }
    CHECK_THROWS_AS(critical_sharp_deficit(ZonalDatum{4, {1.0}}, ZonalDatum{4, {0.0}}), std::invalid_argument);
}
