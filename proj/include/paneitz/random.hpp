#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "paneitz/geometry.hpp"

namespace paneitz {

// Portable uniform draws: the standard distributions are not specified
// bit-for-bit, so reports would differ across standard libraries.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : eng_(seed) {}
    double uniform() { return static_cast<double>(eng_() >> 11) * 0x1.0p-53; }
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
    int integer(int lo, int hi) { return lo + static_cast<int>(eng_() % static_cast<std::uint64_t>(hi - lo + 1)); }

private:
    std::mt19937_64 eng_;
};

std::uint64_t substream(std::uint64_t seed, std::uint64_t index);

// sum_j a_j cos(2 pi k_j . x_t + pi m_j x0 + theta_j) + c0
class TrigSeries {
public:
    struct Term {
        std::vector<int> k;
        int m = 0;
        double a = 0.0, phase = 0.0;
    };

    TrigSeries() = default;
    static TrigSeries draw(Rng& rng, int dim, int terms, double amp);
    static TrigSeries constant(int dim, double c);

    double operator()(const double* x) const;
    Field sample(const ChartGrid& grid) const;
    TrigSeries scaled(double s) const;

    int dim = 0;
    double c0 = 0.0;
    std::vector<Term> terms;
};

// Metric draw: e^{2 phi} delta when conformal, otherwise delta + eps * S with
// a symmetric matrix of trigonometric series.
struct MetricDraw {
    bool conformal = true;
    TrigSeries phi;
    std::vector<TrigSeries> pert;  // packed symmetric
    double eps = 0.05;

    static MetricDraw draw_conformal(Rng& rng, int dim, double eps);
    static MetricDraw draw_general(Rng& rng, int dim, double eps);
    static MetricDraw flat(int dim);
    MetricField sample(const ChartGrid& grid) const;
};

}  // namespace paneitz
