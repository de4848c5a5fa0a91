#include "paneitz/random.hpp"

#include <cmath>
#include <numbers>

namespace paneitz {

std::uint64_t substream(std::uint64_t seed, std::uint64_t index) {
    std::uint64_t z = seed * 0x9E3779B97F4A7C15ull + index + 0x632BE59BD9B4E019ull;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

TrigSeries TrigSeries::draw(Rng& rng, int dim, int terms, double amp) {
    TrigSeries s;
    s.dim = dim;
    for (int j = 0; j < terms; ++j) {
        Term t;
        t.k.resize(dim - 1);
        for (int& v : t.k) v = rng.integer(-1, 1);
        t.m = rng.integer(0, 2);
        t.a = amp * rng.uniform(-1.0, 1.0) / terms;
        t.phase = rng.uniform(0.0, 2.0 * std::numbers::pi);
        s.terms.push_back(std::move(t));
    }
    return s;
}

TrigSeries TrigSeries::constant(int dim, double c) {
    TrigSeries s;
    s.dim = dim;
    s.c0 = c;
    return s;
}

double TrigSeries::operator()(const double* x) const {
    using std::numbers::pi;
    double v = c0;
    for (const Term& t : terms) {
        double arg = pi * t.m * x[0] + t.phase;
        for (int a = 1; a < dim; ++a) arg += 2.0 * pi * t.k[a - 1] * x[a];
        v += t.a * std::cos(arg);
    }
    return v;
}

Field TrigSeries::sample(const ChartGrid& grid) const {
    if (grid.dim() != dim) throw GridError("trig series: dimension mismatch");
    return paneitz::sample(grid, [this](const double* x) { return (*this)(x); });
}

TrigSeries TrigSeries::scaled(double s) const {
    TrigSeries r = *this;
    r.c0 *= s;
    for (Term& t : r.terms) t.a *= s;
    return r;
}

MetricDraw MetricDraw::draw_conformal(Rng& rng, int dim, double eps) {
    MetricDraw m;
    m.conformal = true;
    m.eps = eps;
    m.phi = TrigSeries::draw(rng, dim, 4, 1.0).scaled(eps);
    return m;
}

MetricDraw MetricDraw::draw_general(Rng& rng, int dim, double eps) {
    MetricDraw m;
    m.conformal = false;
    m.eps = eps;
    m.phi = TrigSeries::draw(rng, dim, 3, 1.0).scaled(eps);
    for (int s = 0; s < sym_count(dim); ++s) m.pert.push_back(TrigSeries::draw(rng, dim, 3, 1.0));
    return m;
}

MetricDraw MetricDraw::flat(int dim) {
    MetricDraw m;
    m.phi = TrigSeries::constant(dim, 0.0);
    return m;
}

MetricField MetricDraw::sample(const ChartGrid& grid) const {
    const int d = grid.dim();
    MetricField g = conformal_metric(grid, phi.sample(grid));
    if (!conformal) {
        for (int s = 0; s < sym_count(d); ++s) {
            const Field p = pert[s].sample(grid);
            for (std::size_t k = 0; k < p.size(); ++k) g.c[s][k] += eps * p[k];
        }
    }
    return g;
}

}  // namespace paneitz
