#include <doctest.h>

#include <cmath>
#include <numbers>

#include "paneitz/geometry.hpp"
#include "paneitz/random.hpp"

using namespace paneitz;
using std::numbers::pi;

namespace {

// Chart of the round sphere, sigma = log(2/(1+|x|^2)); the face x0 = 0 is an equator.
ChartGrid round_chart(int dim, int N) {
    std::vector<double> lo(dim, -0.5), hi(dim, 0.5);
    lo[0] = 0.0;
    return ChartGrid(std::vector<int>(dim, N), lo, hi, std::vector<bool>(dim, false));
}

Field round_factor(const ChartGrid& g) {
    return sample(g, [&](const double* x) {
        double r2 = 0;
        for (int a = 0; a < g.dim(); ++a) r2 += x[a] * x[a];
        return std::log(2.0 / (1.0 + r2));
    });
}

}  // namespace

TEST_CASE("flat metric has no curvature") {
    ChartGrid g = ChartGrid::slab(3, 11);
    Geometry geo(g, flat_metric(g));
    for (const auto& r : geo.ricci()) CHECK(max_abs(r) < 1e-11);
    CHECK(max_abs(geo.J()) < 1e-11);
    CHECK(max_abs(geo.q4()) < 1e-9);
    CHECK(geo.volume() == doctest::Approx(1.0));
}

TEST_CASE("round chart curvature") {
    for (int dim : {3, 4}) {
        std::vector<double> errs;
        for (int N : dim == 3 ? std::vector<int>{17, 33} : std::vector<int>{17}) {
            ChartGrid g = round_chart(dim, N);
            Geometry geo(g, conformal_metric(g, round_factor(g)));
            double err = 0;
            for (std::size_t k = 0; k < g.count(); ++k) err = std::max(err, std::abs(geo.J()[k] - dim / 2.0));
            for (int s = 0; s < sym_count(dim); ++s)
                for (std::size_t k = 0; k < g.count(); ++k)
                    err = std::max(err, std::abs(geo.schouten()[s][k] - 0.5 * geo.metric().c[s][k]));
            errs.push_back(err);
            CHECK(err < 3e-3);
            const double n = dim - 1;
            const double q = (n + 1) * (n - 1) * (n + 3) / 8.0;
            CHECK(geo.q4()[g.count() / 2] == doctest::Approx(q).epsilon(1e-2));
            // constant curvature one: R_abcd = g_ac g_bd - g_ad g_bc
            const std::size_t node = g.count() / 2 + 3;
            const auto R = geo.riemann_at(node);
            double rerr = 0;
            auto G = [&](int a, int b) { return geo.metric().c[sym(a, b, dim)][node]; };
            for (int a = 0; a < dim; ++a)
                for (int b = 0; b < dim; ++b)
                    for (int c = 0; c < dim; ++c)
                        for (int e = 0; e < dim; ++e)
                            rerr = std::max(rerr, std::abs(R[((a * dim + b) * dim + c) * dim + e] - (G(a, c) * G(b, e) - G(a, e) * G(b, c))));
            CHECK(rerr < 1e-2);
        }
        if (errs.size() == 2) CHECK(std::log2(errs[0] / errs[1]) >= 2.0);
    }
}

TEST_CASE("conformally flat J matches the closed-form transformation") {
    const double eps = 0.1;
    auto phi = [&](const double* x) { return eps * std::sin(2 * pi * x[1]); };
    std::vector<double> errs;
    for (int N : {17, 33}) {
    ChartGrid g = ChartGrid::slab(3, N);
    Geometry geo(g, conformal_metric(g, sample(g, phi)));
    // J = e^{-2 phi}(-Lap phi - (d-2)/2 |grad phi|^2) for a flat background
    Field ex = sample(g, [&](const double* x) {
        const double w = 2 * pi;
        const double lap = -eps * w * w * std::sin(w * x[1]);
        const double grad = eps * w * std::cos(w * x[1]);
        return std::exp(-2 * phi(x)) * (-lap - 0.5 * grad * grad);
    });
    double err = 0;
    for (std::size_t k = 0; k < ex.size(); ++k) err = std::max(err, std::abs(geo.J()[k] - ex[k]));
    CHECK(err < 1e-2 * max_abs(ex));
    errs.push_back(err);
    }
    CHECK(std::log2(errs[0] / errs[1]) >= 3.5);
}

TEST_CASE("curvature symmetries converge") {
    Rng rng(11);
    const int d = 3;
    const MetricDraw md = MetricDraw::draw_general(rng, d, 0.05);
    double worst[2];
    int level = 0;
    for (int N : {17, 33}) {
        ChartGrid g = ChartGrid::slab(d, N);
        Geometry geo(g, md.sample(g));
        double e = 0;
        for (std::size_t node : {g.count() / 2 + 5, g.face_offset(1) + 7, std::size_t(3)}) {
            const auto R = geo.riemann_at(node);
            auto at = [&](int a, int b, int c, int f) { return R[((a * d + b) * d + c) * d + f]; };
            for (int a = 0; a < d; ++a)
                for (int b = 0; b < d; ++b)
                    for (int c = 0; c < d; ++c)
                        for (int f = 0; f < d; ++f)
                            e = std::max({e, std::abs(at(a, b, c, f) + at(b, a, c, f)), std::abs(at(a, b, c, f) + at(a, b, f, c)),
                                          std::abs(at(a, b, c, f) - at(c, f, a, b)),
                                          std::abs(at(a, b, c, f) + at(a, c, f, b) + at(a, f, b, c))});
            for (int b = 0; b < d; ++b)
                for (int f = 0; f < d; ++f) {
                    double s = 0;
                    for (int a = 0; a < d; ++a)
                        for (int c = 0; c < d; ++c) s += geo.ginv()[sym(a, c, d)][node] * at(a, b, c, f);
                    e = std::max(e, std::abs(s - geo.ricci()[sym(b, f, d)][node]));
                }
            for (int s = 0; s < sym_count(d); ++s)
                CHECK(geo.ricci()[s][node] == doctest::Approx(geo.schouten()[s][node] + geo.J()[node] * geo.metric().c[s][node]));
        }
        worst[level++] = e;
    }
    CHECK(worst[1] < 1e-3);
    CHECK(std::log2(worst[0] / worst[1]) >= 3.0);
}

TEST_CASE("boundary data of model metrics") {
    SUBCASE("flat slab") {
        ChartGrid g = ChartGrid::slab(3, 11);
        Geometry geo(g, flat_metric(g));
        for (int face : {0, 1}) {
            Boundary b(geo, face);
            CHECK(max_abs(b.H()) < 1e-13);
            CHECK(b.eta()[0][0] == doctest::Approx(face == 0 ? -1.0 : 1.0));
            CHECK(max_abs(b.eta()[1]) == 0.0);
        }
    }
    SUBCASE("exponential factor in the normal variable") {
        ChartGrid g = ChartGrid::slab(3, 17);
        Geometry geo(g, conformal_metric(g, sample(g, [](const double* x) { return x[0]; })));
        Boundary b0(geo, 0), b1(geo, 1);
        for (std::size_t p = 0; p < b0.count(); ++p) {
            CHECK(b0.H()[p] == doctest::Approx(-2.0).epsilon(1e-4));
            CHECK(b1.H()[p] == doctest::Approx(2.0 / std::exp(1.0)).epsilon(1e-4));
            CHECK(std::abs(b0.A0sq()[p]) < 1e-12);
        }
    }
    SUBCASE("equator of the round sphere is totally geodesic") {
        ChartGrid g = round_chart(3, 17);
        Geometry geo(g, conformal_metric(g, round_factor(g)));
        Boundary b(geo, 0);
        CHECK(max_abs(b.H()) < 1e-4);
        CHECK(max_abs(b.A0sq()) < 1e-8);
        // intrinsic: round S^2, Jbar = 1 (n/2), P(eta,eta) = 1/2
        for (std::size_t p = 0; p < b.count(); ++p) {
            CHECK(b.Jbar()[p] == doctest::Approx(1.0).epsilon(2e-2));
            CHECK(b.Pnn()[p] == doctest::Approx(0.5).epsilon(2e-3));
        }
    }
    SUBCASE("face integral of a conformal factor") {
        ChartGrid g = ChartGrid::slab(3, 17);
        Geometry geo(g, conformal_metric(g, sample(g, [](const double* x) { return 0.3 * std::sin(2 * pi * x[1]); })));
        Boundary b(geo, 0);
        // 1-D oracle: int_0^1 e^{0.6 sin 2 pi t} dt by a fine midpoint rule
        double ref = 0;
        const int M = 20000;
        for (int i = 0; i < M; ++i) ref += std::exp(0.6 * std::sin(2 * pi * (i + 0.5) / M)) / M;
        CHECK(b.integrate(Field(b.count(), 1.0)) == doctest::Approx(ref).epsilon(1e-10));
    }
}

TEST_CASE("Gauss identity for the induced Schouten tensor on a surface") {
    // n = 2: the Gauss trace identity still holds with the chosen Pbar.
    Rng rng(5);
    ChartGrid g = ChartGrid::slab(3, 17);
    Geometry geo(g, MetricDraw::draw_general(rng, 3, 0.05).sample(g));
    Boundary b(geo, 1);
    Field tr(b.count(), 0.0);
    for (int a = 0; a < 2; ++a)
        for (int c = 0; c < 2; ++c)
            for (std::size_t p = 0; p < b.count(); ++p) tr[p] += b.hinv()[sym(a, c, 2)][p] * b.Pbar()[sym(a, c, 2)][p];
    for (std::size_t p = 0; p < b.count(); ++p) CHECK(tr[p] == doctest::Approx(b.Jbar()[p]).epsilon(1e-10));
}

TEST_CASE("boundary identities converge under refinement") {
    for (int dim : {3, 4}) {
        Rng rng(100 + dim);
        const MetricDraw md = MetricDraw::draw_general(rng, dim, 0.05);
        const TrigSeries u = TrigSeries::draw(rng, dim, 4, 1.0), v = TrigSeries::draw(rng, dim, 4, 1.0);
        const std::vector<int> sizes = dim == 3 ? std::vector<int>{17, 33} : std::vector<int>{11, 21};
        const auto reports = verify_boundary_identities(
            [dim](int N) { return ChartGrid::slab(dim, N); }, [&](const ChartGrid& g) { return md.sample(g); },
            [&](const ChartGrid& g) { return u.sample(g); }, [&](const ChartGrid& g) { return v.sample(g); }, sizes);
        CHECK(reports.size() == 4);
        for (const auto& r : reports) {
            INFO(r.id, " dim ", dim, " residuals ", r.residuals[0], " ", r.residuals[1], " order ", r.order);
            CHECK(r.pass);
        }
    }
}

TEST_CASE("constant function makes the derivative identities trivial") {
    Rng rng(3);
    ChartGrid g = ChartGrid::slab(3, 17);
    Geometry geo(g, MetricDraw::draw_general(rng, 3, 0.05).sample(g));
    Boundary b(geo, 0);
    const Field one(g.count(), 1.0);
    const auto r = boundary_identity_residuals(b, one, one);
    CHECK(r.laplacian_split < 1e-9);
    CHECK(r.hessian_normal < 1e-9);
    CHECK(r.normal_laplacian < 1e-9);
}

TEST_CASE("non positive definite metric is rejected") {
    ChartGrid g = ChartGrid::slab(3, 11);
    MetricField m = flat_metric(g);
    m.c[sym(0, 1, 3)][4] = 2.0;
    CHECK_THROWS_AS(check_spd(g, m), GeometryError);
    CHECK_THROWS_AS(Geometry(g, m), GeometryError);
}
