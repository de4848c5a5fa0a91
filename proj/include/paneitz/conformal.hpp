#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "paneitz/check.hpp"
#include "paneitz/geometry.hpp"
#include "paneitz/random.hpp"

namespace paneitz {

// One seeded test case: background metric, conformal factor and test functions.
struct ConformalDraw {
    MetricDraw metric;
    TrigSeries sigma, u, v;
};
ConformalDraw draw_case(std::uint64_t seed, int dim, bool conformally_flat, double eps = 0.05,
                        double sigma_amp = 0.25, double u_amp = 1.0);

using NamedValues = std::vector<std::pair<std::string, double>>;

// Transformation-law residuals of every covariant operator on one grid:
// L2, B0^1, B1^1, L4, B0^3..B3^3 and B_{k,w} for each weight. Interior
// residuals are max-norms over the chart, boundary ones over both faces.
NamedValues covariance_residuals(const ChartGrid& grid, const MetricField& g, const Field& sigma,
                                 const Field& u, const std::vector<double>& weights);
// Same, reusing an existing background geometry.
NamedValues covariance_residuals(const Geometry& G, const Field& sigma, const Field& u,
                                 const std::vector<double>& weights);

std::vector<CheckReport> check_covariance(const GridFn& grid, const ConformalDraw& draw,
                                          const std::vector<int>& sizes, const std::vector<double>& weights,
                                          const std::string& tag = "");

// Single-operator variant; op_id is one of L2, L4, Bk1, Bk3, Bkw (k a digit).
CheckReport check_covariance(const std::string& op_id, double w, const GridFn& grid, const ConformalDraw& draw,
                             const std::vector<int>& sizes);

// Building blocks whose linearizations are tabulated in closed form.
const std::vector<std::string>& linearization_blocks();
int block_degree(const std::string& block);

struct Linearization {
    Field numeric, closed;
};

// numeric: centered difference in t with step tau plus one Richardson level.
Linearization linearize(const std::string& block, double w, const ChartGrid& grid, const MetricField& g,
                        const Field& sigma, const Field& u, int face = 0, double tau = 1e-4);

// max |numeric - closed| of every block (both faces) on one grid.
NamedValues linearization_residuals(const ChartGrid& grid, const MetricField& g, const Field& sigma,
                                    const Field& u, double w, double tau = 1e-4);

std::vector<CheckReport> check_linearization(const GridFn& grid, const ConformalDraw& draw,
                                             const std::vector<int>& sizes, double w, double tau = 1e-4,
                                             const std::string& tag = "");

Field exp_scaled(const Field& sigma, double c, const Field& u);  // e^{c sigma} u

}  // namespace paneitz
