#include <doctest.h>

#include <cmath>

#include "paneitz/conformal.hpp"
#include "paneitz/operators.hpp"

using namespace paneitz;

namespace {

GridFn slab(int dim) {
    return [dim](int N) { return ChartGrid::slab(dim, N); };
}

}  // namespace

TEST_CASE("rescaling composes additively") {
    Rng rng(1);
    ChartGrid g = ChartGrid::slab(3, 11);
    const MetricField m = MetricDraw::draw_general(rng, 3, 0.05).sample(g);
    const Field s1 = TrigSeries::draw(rng, 3, 3, 0.3).sample(g), s2 = TrigSeries::draw(rng, 3, 3, 0.3).sample(g);
    Field s12(s1.size());
    for (std::size_t k = 0; k < s1.size(); ++k) s12[k] = s1[k] + s2[k];
    const MetricField a = rescale(rescale(m, s1), s2), b = rescale(m, s12);
    for (std::size_t c = 0; c < a.c.size(); ++c)
        for (std::size_t k = 0; k < s1.size(); ++k) CHECK(a.c[c][k] == doctest::Approx(b.c[c][k]).epsilon(1e-14));
}

TEST_CASE("covariance of every operator, conformally flat and general backgrounds") {
    for (bool flat : {true, false}) {
        const ConformalDraw draw = draw_case(flat ? 77 : 78, 3, flat);
        const auto reports = check_covariance(slab(3), draw, {17, 33}, {0.0, 1.7, paneitz_weight(2)});
        CHECK(reports.size() == 8 + 3 * 4);
        for (const auto& r : reports) {
            INFO(r.id, " ", r.residuals[0], " -> ", r.residuals[1], " order ", r.order);
            CHECK(r.pass);
        }
    }
}

TEST_CASE("single-operator covariance and duplicate weights") {
    const ConformalDraw draw = draw_case(5, 3, true);
    const CheckReport r = check_covariance("B3w", 0.25, slab(3), draw, {17, 33});
    CHECK(r.id == "covariance.B3,w=0.25");
    CHECK(r.pass);
    CHECK(check_covariance("L4", 0.0, slab(3), draw, {17, 33}).pass);
    CHECK(check_covariance("B23", 0.0, slab(3), draw, {17, 33}).id == "covariance.B2^3");
    CHECK_THROWS_AS(check_covariance("Q9", 0.0, slab(3), draw, {17, 33}), std::invalid_argument);
    // n = 3: the Paneitz weight coincides with w = 0
    CHECK(check_covariance(slab(4), draw_case(5, 4, true), {11, 21}, {0.0, 0.0}).size() == 8 + 4);
}

TEST_CASE("weight singularities propagate from the covariance suite") {
    const ConformalDraw draw = draw_case(9, 3, true);
    CHECK_THROWS_AS(check_covariance(slab(3), draw, {17}, {1.0}), WeightError);
}

TEST_CASE("linearizations match their closed forms") {
    for (int dim : {3, 4}) {
        const ConformalDraw draw = draw_case(300 + dim, dim, false);
        const std::vector<int> sizes = dim == 3 ? std::vector<int>{17, 33} : std::vector<int>{11, 21};
        const auto reports = check_linearization(slab(dim), draw, sizes, dim == 3 ? 0.3 : -0.8);
        CHECK(reports.size() == linearization_blocks().size());
        for (const auto& r : reports) {
            INFO(r.id, " dim ", dim, " ", r.residuals[0], " -> ", r.residuals[1], " order ", r.order);
            CHECK(r.pass);
        }
    }
}

TEST_CASE("single-block linearization and degrees") {
    ChartGrid g = ChartGrid::slab(3, 17);
    const ConformalDraw draw = draw_case(12, 3, true);
    const Linearization L = linearize("u_H3", 0.5, g, draw.metric.sample(g), draw.sigma.sample(g), draw.u.sample(g), 1);
    REQUIRE(L.numeric.size() == g.face_count());
    double err = 0, scale = 0;
    for (std::size_t p = 0; p < L.numeric.size(); ++p) {
        err = std::max(err, std::abs(L.numeric[p] - L.closed[p]));
        scale = std::max(scale, std::abs(L.closed[p]));
    }
    CHECK(err < 1e-4 * std::max(scale, 1.0));
    CHECK(block_degree("lap_bar_u") == 2);
    CHECK(block_degree("u_eta_J") == 3);
    CHECK_THROWS_AS(block_degree("nope"), std::invalid_argument);
}

TEST_CASE("draws are reproducible") {
    const ConformalDraw a = draw_case(42, 4, true), b = draw_case(42, 4, true);
    const double x[4] = {0.3, 0.1, 0.7, 0.2};
    CHECK(a.sigma(x) == b.sigma(x));
    CHECK(a.u(x) == b.u(x));
    CHECK(a.metric.phi(x) == b.metric.phi(x));
    CHECK(draw_case(43, 4, true).u(x) != a.u(x));
}
