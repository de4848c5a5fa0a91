#include "paneitz/conformal.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <map>
#include <sstream>
#include <stdexcept>

#include "paneitz/operators.hpp"

namespace paneitz {

ConformalDraw draw_case(std::uint64_t seed, int dim, bool conformally_flat, double eps, double sigma_amp,
                        double u_amp) {
    Rng rng(seed);
    ConformalDraw c;
    c.metric = conformally_flat ? MetricDraw::draw_conformal(rng, dim, eps) : MetricDraw::draw_general(rng, dim, eps);
    c.sigma = TrigSeries::draw(rng, dim, 4, sigma_amp);
    c.u = TrigSeries::draw(rng, dim, 4, u_amp);
    c.v = TrigSeries::draw(rng, dim, 4, u_amp);
    return c;
}

Field exp_scaled(const Field& sigma, double c, const Field& u) {
    Field out(u.size());
    for (std::size_t k = 0; k < u.size(); ++k) out[k] = std::exp(c * sigma[k]) * u[k];
    return out;
}

namespace {

double max_diff(const Field& a, const Field& b) {
    double m = 0.0;
    for (std::size_t k = 0; k < a.size(); ++k) m = std::max(m, std::abs(a[k] - b[k]));
    return m;
}

std::string weight_label(double w) {
    std::ostringstream s;
    s << w;
    return s.str();
}

std::string family_name(int k, double w) { return "B" + std::to_string(k) + ",w=" + weight_label(w); }

}  // namespace

NamedValues covariance_residuals(const ChartGrid& grid, const MetricField& g, const Field& sigma, const Field& u,
                                 const std::vector<double>& weights) {
    const Geometry G(grid, g);
    return covariance_residuals(G, sigma, u, weights);
}

NamedValues covariance_residuals(const Geometry& G, const Field& sigma, const Field& u,
                                 const std::vector<double>& weights) {
    const Geometry Gh(G.grid(), rescale(G.metric(), sigma));
    const double n = G.n();
    std::map<std::string, double> res;

    const Field u2 = exp_scaled(sigma, (n - 1) / 2, u);
    const Field u4 = exp_scaled(sigma, (n - 3) / 2, u);
    res["L2"] = max_diff(conformal_laplacian(Gh, u), exp_scaled(sigma, -(n + 3) / 2, conformal_laplacian(G, u2)));
    res["L4"] = max_diff(paneitz_operator(Gh, u), exp_scaled(sigma, -(n + 5) / 2, paneitz_operator(G, u4)));

    const Field lap_h = Gh.laplacian(u), lap4 = G.laplacian(u4);
    std::vector<Field> uw, lapw;
    for (double w : weights) {
        uw.push_back(exp_scaled(sigma, -w, u));
        lapw.push_back(G.laplacian(uw.back()));
    }
    for (int face = 0; face < 2; ++face) {
        const Boundary b(G, face), bh(Gh, face);
        const Field s = b.restrict(sigma);
        auto upd = [&](const std::string& key, double r) { res[key] = std::max(res[key], r); };

        const BoundaryJet jh = boundary_jet(bh, u, 3, &lap_h);
        const BoundaryJet j2 = boundary_jet(b, u2, 1);
        for (int k = 0; k <= 1; ++k)
            upd("B" + std::to_string(k) + "^1",
                max_diff(robin(bh, k, jh), exp_scaled(s, -(n + 2 * k - 1) / 2, robin(b, k, j2))));

        const BoundaryCurvatures ch = boundary_curvatures(bh), c = boundary_curvatures(b);
        const BoundaryJet j4 = boundary_jet(b, u4, 3, &lap4);
        for (int k = 0; k <= 3; ++k)
            upd("B" + std::to_string(k) + "^3", max_diff(paneitz_boundary(bh, ch, k, jh),
                                                         exp_scaled(s, -(n + 2 * k - 3) / 2, paneitz_boundary(b, c, k, j4))));

        for (std::size_t i = 0; i < weights.size(); ++i) {
            const double w = weights[i];
            const BoundaryCurvatures cw = boundary_curvatures(b, w), chw = boundary_curvatures(bh, w);
            const BoundaryJet jw = boundary_jet(b, uw[i], 3, &lapw[i]);
            for (int k = 0; k <= 3; ++k)
                upd(family_name(k, w), max_diff(boundary_family(bh, chw, k, w, jh),
                                                exp_scaled(s, w - k, boundary_family(b, cw, k, w, jw))));
        }
    }

    NamedValues out;
    for (const char* key : {"L2", "B0^1", "B1^1", "L4", "B0^3", "B1^3", "B2^3", "B3^3"}) out.emplace_back(key, res[key]);
    for (double w : weights)
        for (int k = 0; k <= 3; ++k) out.emplace_back(family_name(k, w), res[family_name(k, w)]);
    return out;
}

std::vector<CheckReport> check_covariance(const GridFn& grid, const ConformalDraw& draw, const std::vector<int>& sizes,
                                          const std::vector<double>& weight_list, const std::string& tag) {
    std::vector<double> weights;
    for (double w : weight_list)
        if (std::find(weights.begin(), weights.end(), w) == weights.end()) weights.push_back(w);
    std::vector<NamedValues> levels;
    for (int N : sizes) {
        const ChartGrid cg = grid(N);
        levels.push_back(covariance_residuals(cg, draw.metric.sample(cg), draw.sigma.sample(cg), draw.u.sample(cg), weights));
    }
    std::vector<CheckReport> out;
    for (std::size_t i = 0; i < levels.front().size(); ++i) {
        std::vector<double> r;
        for (const auto& l : levels) r.push_back(l[i].second);
        const std::string& name = levels.front()[i].first;
        out.push_back(refinement_check("covariance." + name + tag, "conformal transformation law of " + name, sizes, r));
    }
    return out;
}

CheckReport check_covariance(const std::string& op_id, double w, const GridFn& grid, const ConformalDraw& draw,
                             const std::vector<int>& sizes) {
    std::string key = op_id;
    if (op_id.size() == 3 && op_id[0] == 'B' && op_id[2] == 'w') key = family_name(op_id[1] - '0', w);
    else if (op_id.size() == 3 && op_id[0] == 'B') key = std::string("B") + op_id[1] + "^" + op_id[2];
    for (auto& r : check_covariance(grid, draw, sizes, {w}))
        if (r.id == "covariance." + key) return r;
    throw std::invalid_argument("check_covariance: unknown operator " + op_id);
}

// ---------------------------------------------------------------------------
// Linearizations of the boundary building blocks.

const std::vector<std::string>& linearization_blocks() {
    static const std::vector<std::string> names = {
        "lap_bar_u", "hess_nn_u", "H_eta_u", "H2_u", "u_Pnn", "u_Jbar",
        "eta_lap_u", "lap_bar_eta_u", "A0_hess_u", "H_lap_bar_u", "H_hess_nn_u",
        "gradH_grad_u", "Jbar_eta_u", "Pnn_eta_u", "H2_eta_u",
        "u_eta_J", "u_lap_bar_H", "u_H_Jbar", "u_H_Pnn", "u_A0_Pbar", "u_H3", "u_H_A0sq"};
    return names;
}

int block_degree(const std::string& block) {
    const auto& names = linearization_blocks();
    const auto it = std::find(names.begin(), names.end(), block);
    if (it == names.end()) throw std::invalid_argument("unknown linearization block " + block);
    return it - names.begin() < 6 ? 2 : 3;
}

namespace {

using BlockFields = std::vector<Field>;  // ordered as linearization_blocks()

BlockFields evaluate_blocks(const Boundary& b, const Field& u) {
    const BoundaryJet j = boundary_jet(b, u, 3);
    const Field lapH = b.lap(b.H());
    const Field a0p = b.pair(b.A0(), b.Pbar());
    const std::size_t M = b.count();
    BlockFields out(linearization_blocks().size(), Field(M));
    for (std::size_t p = 0; p < M; ++p) {
        const double H = b.H()[p], f = j.f[p], eu = j.eta_u[p];
        const double v[] = {j.lap_bar[p], j.hess_nn[p], H * eu, H * H * f, f * b.Pnn()[p], f * b.Jbar()[p],
                            j.eta_lap[p], j.lap_bar_eta[p], j.a0_hess[p], H * j.lap_bar[p], H * j.hess_nn[p],
                            j.gradH_du[p], b.Jbar()[p] * eu, b.Pnn()[p] * eu, H * H * eu,
                            f * b.etaJ()[p], f * lapH[p], f * H * b.Jbar()[p], f * H * b.Pnn()[p], f * a0p[p],
                            f * H * H * H, f * H * b.A0sq()[p]};
        for (std::size_t i = 0; i < out.size(); ++i) out[i][p] = v[i];
    }
    return out;
}

BlockFields closed_forms(const Boundary& b, const Field& u, const Field& sigma, double w) {
    const double n = b.n();
    const BoundaryJet j = boundary_jet(b, u, 3);
    const Field s = b.restrict(sigma);
    const Field es = b.normal(sigma);
    const Field lbs = b.lap(s);
    const Field hns = b.hess_nn(sigma);
    const Field els = b.normal(b.bulk().laplacian(sigma));
    const Field lbes = b.lap(es);
    const Field du_ds = b.dot(j.f, s);
    const Field deu_ds = b.dot(j.eta_u, s);
    const Field du_des = b.dot(j.f, es);
    const Field A_du_ds = b.bilinear(b.A(), j.f, s);
    const Field A0_du_ds = b.bilinear(b.A0(), j.f, s);
    const Field A0_hs = b.pair(b.A0(), b.hess(s));
    const Field dH_ds = b.dot(b.H(), s);
    const std::size_t M = b.count();
    BlockFields out(linearization_blocks().size(), Field(M));
    for (std::size_t p = 0; p < M; ++p) {
        const double H = b.H()[p], f = j.f[p], eu = j.eta_u[p], Jb = b.Jbar()[p], Pnn = b.Pnn()[p], a2 = b.A0sq()[p];
        const double e = es[p];
        const double v[] = {
            (n + 2 * w - 2) * du_ds[p] + w * f * lbs[p],
            du_ds[p] + (2 * w - 1) * eu * e + w * f * hns[p],
            n * eu * e + w * H * f * e,
            2 * n * H * f * e,
            -f * hns[p],
            -f * lbs[p],
            (w - 2) * e * j.lap_bar[p] + (n + 3 * w - 3) * e * j.hess_nn[p] + (n + 2 * w - 1) * deu_ds[p] +
                2 * (w - 1) * H * eu * e + (n + 2 * w - 1) * du_des[p] - 2 * (n + 2 * w - 1) * A_du_ds[p] +
                (n + 3 * w - 1) * eu * hns[p] + w * eu * lbs[p] + w * f * els[p],
            w * e * j.lap_bar[p] + (n + 2 * w - 4) * deu_ds[p] + 2 * w * du_des[p] + (w - 1) * eu * lbs[p] + w * f * lbes[p],
            2 * (w - 1) * A0_du_ds[p] + w * f * A0_hs[p],
            n * e * j.lap_bar[p] + (n + 2 * w - 2) * H * du_ds[p] + w * H * f * lbs[p],
            n * e * j.hess_nn[p] + H * du_ds[p] + (2 * w - 1) * H * eu * e + w * H * f * hns[p],
            n * du_des[p] - H * du_ds[p] + w * f * dH_ds[p],
            -eu * lbs[p] + w * Jb * f * e,
            -eu * hns[p] + w * f * Pnn * e,
            2 * n * H * eu * e + w * H * H * f * e,
            -f * els[p] - 2 * (Jb + Pnn + a2 / (2 * (n - 1)) - H * H / (2 * n)) * f * e,
            n * f * lbes[p] - H * f * lbs[p] + (n - 4) * f * dH_ds[p],
            n * Jb * f * e - H * f * lbs[p],
            n * f * Pnn * e - H * f * hns[p],
            -f * A0_hs[p],
            3 * n * H * H * f * e,
            n * a2 * f * e};
        for (std::size_t i = 0; i < out.size(); ++i) out[i][p] = v[i];
    }
    return out;
}

// F(t) = e^{-(w-k) t sigma} D_{e^{2t sigma} g}(e^{w t sigma} u) for every block, both faces.
std::array<BlockFields, 2> rescaled_blocks(const ChartGrid& grid, const MetricField& g, const Field& sigma,
                                           const Field& u, double w, double t) {
    Field ts(sigma.size());
    for (std::size_t k = 0; k < ts.size(); ++k) ts[k] = t * sigma[k];
    const Geometry G(grid, rescale(g, ts));
    const Field ut = exp_scaled(ts, w, u);
    std::array<BlockFields, 2> out;
    for (int face = 0; face < 2; ++face) {
        const Boundary b(G, face);
        out[face] = evaluate_blocks(b, ut);
        const Field s = b.restrict(ts);
        const auto& names = linearization_blocks();
        for (std::size_t i = 0; i < names.size(); ++i) {
            const int k = block_degree(names[i]);
            for (std::size_t p = 0; p < s.size(); ++p) out[face][i][p] *= std::exp(-(w - k) * s[p]);
        }
    }
    return out;
}

std::array<BlockFields, 2> numeric_linearization(const ChartGrid& grid, const MetricField& g, const Field& sigma,
                                                 const Field& u, double w, double tau) {
    const auto p1 = rescaled_blocks(grid, g, sigma, u, w, tau), m1 = rescaled_blocks(grid, g, sigma, u, w, -tau);
    const auto p2 = rescaled_blocks(grid, g, sigma, u, w, tau / 2), m2 = rescaled_blocks(grid, g, sigma, u, w, -tau / 2);
    std::array<BlockFields, 2> out = p1;
    for (int face = 0; face < 2; ++face)
        for (std::size_t i = 0; i < out[face].size(); ++i)
            for (std::size_t p = 0; p < out[face][i].size(); ++p) {
                const double d1 = (p1[face][i][p] - m1[face][i][p]) / (2 * tau);
                const double d2 = (p2[face][i][p] - m2[face][i][p]) / tau;
                out[face][i][p] = (4 * d2 - d1) / 3;
            }
    return out;
}

}  // namespace

Linearization linearize(const std::string& block, double w, const ChartGrid& grid, const MetricField& g,
                        const Field& sigma, const Field& u, int face, double tau) {
    const auto& names = linearization_blocks();
    block_degree(block);
    const std::size_t i = std::find(names.begin(), names.end(), block) - names.begin();
    const auto num = numeric_linearization(grid, g, sigma, u, w, tau);
    const Geometry G(grid, g);
    const Boundary b(G, face);
    return {num[face][i], closed_forms(b, u, sigma, w)[i]};
}

NamedValues linearization_residuals(const ChartGrid& grid, const MetricField& g, const Field& sigma, const Field& u,
                                    double w, double tau) {
    const auto num = numeric_linearization(grid, g, sigma, u, w, tau);
    const Geometry G(grid, g);
    const auto& names = linearization_blocks();
    std::vector<double> worst(names.size(), 0.0);
    for (int face = 0; face < 2; ++face) {
        const Boundary b(G, face);
        const auto cf = closed_forms(b, u, sigma, w);
        for (std::size_t i = 0; i < names.size(); ++i) worst[i] = std::max(worst[i], max_diff(num[face][i], cf[i]));
    }
    NamedValues out;
    for (std::size_t i = 0; i < names.size(); ++i) out.emplace_back(names[i], worst[i]);
    return out;
}

std::vector<CheckReport> check_linearization(const GridFn& grid, const ConformalDraw& draw, const std::vector<int>& sizes,
                                             double w, double tau, const std::string& tag) {
    std::vector<NamedValues> levels;
    for (int N : sizes) {
        const ChartGrid cg = grid(N);
        levels.push_back(linearization_residuals(cg, draw.metric.sample(cg), draw.sigma.sample(cg), draw.u.sample(cg), w, tau));
    }
    std::vector<CheckReport> out;
    for (std::size_t i = 0; i < levels.front().size(); ++i) {
        std::vector<double> r;
        for (const auto& l : levels) r.push_back(l[i].second);
        const std::string& name = levels.front()[i].first;
        out.push_back(refinement_check("linearization." + name + tag, "conformal linearization of " + name, sizes, r));
    }
    return out;
}

}  // namespace paneitz
