#include "paneitz/suites.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <functional>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <thread>

#include "paneitz/conformal.hpp"
#include "paneitz/energy.hpp"
#include "paneitz/fourdim.hpp"
#include "paneitz/geometry.hpp"
#include "paneitz/models.hpp"
#include "paneitz/operators.hpp"
#include "paneitz/random.hpp"
#include "paneitz/solver.hpp"

namespace paneitz {

using std::numbers::pi;

namespace {

using Task = std::function<std::vector<CheckReport>()>;

GridFn slab(int dim) {
    return [dim](int N) { return ChartGrid::slab(dim, N); };
}

std::string tag(int n, int draw) { return ".n" + std::to_string(n) + ".draw" + std::to_string(draw); }

std::vector<int> dims_or(const SuiteConfig& cfg, std::vector<int> fallback) { return cfg.n.empty() ? fallback : cfg.n; }

std::uint64_t draw_seed(const SuiteConfig& cfg, int n, int draw) { return suite_draw_seed(cfg.seed, n, draw); }

CheckReport value_check(std::string id, std::string topic, double value, double expected, double tol) {
    CheckReport r = tolerance_check(std::move(id), std::move(topic), relative_error(value, expected), tol);
    r.values = {{"value", value}, {"expected", expected}};
    return r;
}

// at least `bound` (deficits, Beckner gaps): the residual is the violation
CheckReport lower_bound_check(std::string id, std::string topic, double smallest, double slack) {
    CheckReport r = tolerance_check(std::move(id), std::move(topic), std::max(0.0, -smallest), slack);
    r.values = {{"minimum", smallest}};
    return r;
}

// --------------------------------------------------------------------------
// suites as task lists

std::vector<Task> section2_tasks(const SuiteConfig& cfg) {
    std::vector<Task> tasks;
    for (int n : dims_or(cfg, {2, 3}))
        for (int d = 0; d < cfg.draws; ++d)
            tasks.push_back([=] {
                const int dim = n + 1;
                Rng rng(draw_seed(cfg, n, d));
                const MetricDraw md = MetricDraw::draw_general(rng, dim, 0.05);
                const TrigSeries u = TrigSeries::draw(rng, dim, 4, 1.0), v = TrigSeries::draw(rng, dim, 4, 1.0);
                auto reports = verify_boundary_identities(
                    slab(dim), [&](const ChartGrid& g) { return md.sample(g); },
                    [&](const ChartGrid& g) { return u.sample(g); }, [&](const ChartGrid& g) { return v.sample(g); },
                    cfg.sizes);
                for (auto& r : reports) r.id += tag(n, d);
                return reports;
            });
    return tasks;
}

std::vector<Task> covariance_tasks(const SuiteConfig& cfg) {
    std::vector<Task> tasks;
    for (int n : dims_or(cfg, {2, 3}))
        for (int d = 0; d < cfg.draws; ++d)
            tasks.push_back([=] {
                const ConformalDraw draw = draw_case(draw_seed(cfg, n, d), n + 1, true);
                std::vector<double> weights = {0.0, 1.7};
                if (paneitz_weight(n) != 0.0) weights.push_back(paneitz_weight(n));
                return check_covariance(slab(n + 1), draw, cfg.sizes, weights, tag(n, d));
            });
    return tasks;
}

std::vector<Task> linearization_tasks(const SuiteConfig& cfg) {
    std::vector<Task> tasks;
    for (int n : dims_or(cfg, {2, 3}))
        for (int d = 0; d < cfg.draws; ++d)
            tasks.push_back([=] {
                const ConformalDraw draw = draw_case(draw_seed(cfg, n, d), n + 1, false);
                return check_linearization(slab(n + 1), draw, cfg.sizes, 0.3, 1e-4, tag(n, d));
            });
    return tasks;
}

std::vector<Task> energy_tasks(const SuiteConfig& cfg) {
    std::vector<Task> tasks;
    for (int n : dims_or(cfg, {2, 3}))
        for (int d = 0; d < cfg.draws; ++d)
            tasks.push_back([=] {
                const ConformalDraw draw = draw_case(draw_seed(cfg, n, d), n + 1, true);
                auto reports = check_energy(slab(n + 1), draw, cfg.sizes, tag(n, d));
                reports.push_back(check_energy_covariance(slab(n + 1), draw, cfg.sizes, tag(n, d)));
                reports.push_back(reilly_check(slab(n + 1), draw, cfg.sizes, tag(n, d)));
                return reports;
            });
    return tasks;
}

double clamped_beta() {
    // first positive root of cos(b) cosh(b) = 1
    double lo = 4.5, hi = 5.0;
    for (int i = 0; i < 200; ++i) {
        const double mid = 0.5 * (lo + hi);
        (std::cos(mid) * std::cosh(mid) - 1 < 0 ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

std::vector<Task> solver_tasks(const SuiteConfig& cfg) {
    std::vector<Task> tasks;
    tasks.push_back([] {
        std::vector<CheckReport> out;
        for (double xi : {1.0, 2.0, 5.0}) {
            const SeparableProblem p = SeparableProblem::flat(xi);
            const std::string s = ".xi" + std::to_string(static_cast<int>(xi));
            out.push_back(value_check("solver.flat_symbol_B1" + s, "flat multiplier of B_1 is |xi|", induced_operator(p, 1), xi, 1e-6));
            out.push_back(value_check("solver.flat_symbol_B3" + s, "flat multiplier of B_3 is |xi|^3", induced_operator(p, 3), xi * xi * xi, 1e-6));
            CheckReport a = check_decoupling(p, 1.0, 0.0), b = check_decoupling(p, 0.0, 1.0);
            a.id = "solver.decoupling_f" + s;
            b.id = "solver.decoupling_psi" + s;
            out.push_back(a);
            out.push_back(b);
        }
        return out;
    });
    const std::vector<int> ns = dims_or(cfg, {3, 4, 5});
    for (int n : ns) {
        if (n < 3) continue;
        tasks.push_back([n] {
            std::vector<CheckReport> out;
            for (int k : {1, 3}) {
                double worst = 0;
                for (int l = 0; l <= 8; ++l) {
                    const double exact = hemisphere_spectrum(n, l, k);
                    const double got = induced_operator(SeparableProblem::hemisphere(n, l), k);
                    worst = std::max(worst, std::abs(got - exact) / std::max(1.0, std::abs(exact)));
                }
                out.push_back(tolerance_check("solver.hemisphere_spectrum_P" + std::to_string(k) + ".n" + std::to_string(n),
                                              "zonal solves reproduce the Gamma-ratio eigenvalues, l <= 8", worst, 1e-6));
            }
            return out;
        });
    }
    tasks.push_back([] {
        const double beta = clamped_beta();
        return std::vector<CheckReport>{value_check("solver.clamped_lambda1", "flat clamped mode: lambda1 = beta^4",
                                                    estimate_lambda1(SeparableProblem::flat(0.0, 32, 1.0)),
                                                    std::pow(beta, 4), 1e-3)};
    });
    return tasks;
}

// C_k on S^n from Gamma directly: 2 Gamma((n+k)/2)/Gamma((n-k)/2) |S^n|^{k/n}
double independent_constant(int n, int k) {
    const double area = 2 * std::pow(pi, (n + 1) / 2.0) / std::tgamma((n + 1) / 2.0);
    return 2 * std::tgamma((n + k) / 2.0) / std::tgamma((n - k) / 2.0) * std::pow(area, static_cast<double>(k) / n);
}

ZonalDatum random_zonal(Rng& rng, int n, int lmax) {
    ZonalDatum z{n, {}};
    for (int l = 0; l <= lmax; ++l) z.c.push_back(rng.uniform(-1, 1) / (1 + l));
    return z;
}

std::vector<Task> models_tasks(const SuiteConfig& cfg) {
    std::vector<Task> tasks;
    tasks.push_back([] {
        std::vector<CheckReport> out;
        for (int n : {2, 3})
            for (double xi : {1.0, 2.0, 5.0}) {
                const std::string s = ".n" + std::to_string(n) + ".xi" + std::to_string(static_cast<int>(xi));
                const ScatteringExpansion vp = hyperbolic_scattering(0.5, n, xi, 1.0), vf = hyperbolic_scattering(1.5, n, xi, 1.0);
                out.push_back(value_check("models.scattering_psi_analytic" + s, "G_psi = -|xi| psi", vp.G, -xi, 1e-8));
                out.push_back(value_check("models.scattering_f_analytic" + s, "3 G_f = |xi|^3 f", 3 * vf.G, xi * xi * xi, 1e-8));
                out.push_back(value_check("models.scattering_psi_ode" + s, "G_psi = -|xi| psi by ODE",
                                          scattering_by_ode(0.5, n, xi, 1.0).G, -xi, 1e-6));
                out.push_back(value_check("models.scattering_f_ode" + s, "3 G_f = |xi|^3 f by ODE",
                                          3 * scattering_by_ode(1.5, n, xi, 1.0).G, xi * xi * xi, 1e-6));
            }
        return out;
    });
    tasks.push_back([] {
        std::vector<CheckReport> out;
        for (double gamma : {0.5, 1.5}) {
            const ScatteringExpansion v = hyperbolic_scattering(gamma, 3, 1.0, 1.0);
            const std::string s = gamma == 0.5 ? "psi" : "f";
            const FactorizationResidual coarse = factorization_residual(v, 17), mid = factorization_residual(v, 33);
            out.push_back(refinement_check("models.factorization_order_" + s, "L4 v converges to 0 on hyperbolic space",
                                           {17, 33}, {coarse.paneitz, mid.paneitz}));
            const FactorizationResidual fine = factorization_residual(v, 65);
            CheckReport r = tolerance_check("models.factorization_" + s,
                                            "L4 v = 0 through the second-order factor, absolute", fine.paneitz, 1e-8);
            r.values = {{"factor", fine.factor}, {"scale", fine.scale}, {"relative", fine.paneitz / fine.scale}};
            r.note = "finite-difference roundoff floor eps*sum|w|/h^4";
            out.push_back(r);
        }
        return out;
    });
    const std::vector<int> ns = dims_or(cfg, {4});
    for (int n : ns) {
        if (n < 4) continue;
        tasks.push_back([=] {
            std::vector<CheckReport> out;
            const std::string s = ".n" + std::to_string(n);
            for (int k : {1, 3}) {
                CheckReport r = value_check("models.sharp_constant_C" + std::to_string(k) + s,
                                            "sharp trace constant against Gamma evaluation", sharp_constant(n, k).value,
                                            independent_constant(n, k), 1e-12);
                out.push_back(r);
            }
            double worst_bubble = 0;
            for (double xi : {0.0, 0.3, 0.6}) {
                const SobolevDeficit d = sobolev_deficit(extremal_family(n, BubbleKind::F, 1.0, xi),
                                                         extremal_family(n, BubbleKind::Psi, -0.7, xi));
                worst_bubble = std::max(worst_bubble, std::abs(d.deficit) / std::abs(d.lhs));
            }
            out.push_back(tolerance_check("models.sobolev_bubbles" + s, "bubbles attain the sharp trace inequality",
                                          worst_bubble, 1e-6));
            Rng rng(draw_seed(cfg, n, 0));
            double smallest = std::numeric_limits<double>::infinity();
            for (int t = 0; t < 50; ++t) {
                const ZonalDatum f = random_zonal(rng, n, 5), psi = random_zonal(rng, n, 5);
                smallest = std::min(smallest, sobolev_deficit(f, psi).deficit);
            }
            out.push_back(lower_bound_check("models.sobolev_random" + s, "sharp trace inequality on 50 random draws", smallest, 1e-8));
            return out;
        });
    }
    tasks.push_back([] {
        std::vector<CheckReport> out;
        double ext = 0, adm = std::numeric_limits<double>::infinity(), flat_ext = 0, flat_adm = adm;
        for (const SeparableProblem& p : {SeparableProblem::flat(1.7), SeparableProblem::hemisphere(5, 2), SeparableProblem::hemisphere(4, 0)}) {
            ext = std::max(ext, std::abs(extension_deficit(solve_extension(p, 0.9, -0.4).u)));
            adm = std::min(adm, extension_deficit(admissible_profile(p, 0.9, -0.4)));
        }
        for (double xi : {0.5, 1.7, 4.0}) {
            const SeparableProblem p = SeparableProblem::flat(xi);
            flat_ext = std::max(flat_ext, std::abs(flat_biharmonic_deficit(solve_extension(p, 0.5, 1.0).u)));
            flat_adm = std::min(flat_adm, flat_biharmonic_deficit(admissible_profile(p, 0.5, 1.0)));
        }
        out.push_back(tolerance_check("models.extension_equality", "energy equals the boundary form on extensions", ext, 1e-8));
        out.push_back(lower_bound_check("models.extension_strict", "energy exceeds the boundary form off extensions", adm, 0.0));
        out.back().pass = out.back().pass && adm > 0;
        out.push_back(tolerance_check("models.flat_biharmonic_equality", "flat Dirichlet bound is attained by biharmonic modes", flat_ext, 1e-8));
        out.push_back(lower_bound_check("models.flat_biharmonic_strict", "flat Dirichlet bound is strict off biharmonic modes", flat_adm, 0.0));
        out.back().pass = out.back().pass && flat_adm > 0;
        return out;
    });
    return tasks;
}

std::vector<Task> fourdim_tasks(const SuiteConfig& cfg) {
    std::vector<Task> tasks;
    for (int d = 0; d < cfg.draws; ++d)
        tasks.push_back([=] {
            const ConformalDraw draw = draw_case(draw_seed(cfg, 3, d), 4, false, 0.1, 0.3, 0.3);
            return check_fourdim(slab(4), draw, cfg.sizes, tag(3, d));
        });
    tasks.push_back([=] {
        std::vector<CheckReport> out;
        const TCurvatureResult h = compute_t_curvature(FourModel::Hemisphere);
        out.push_back(value_check("fourdim.hemisphere_total_T", "oint T over the equator is 4 pi^2", h.total, 4 * pi * pi, 1e-4));
        out.push_back(value_check("fourdim.hemisphere_gauss_bonnet", "Gauss-Bonnet-Chern on the hemisphere", h.gauss_bonnet,
                                  8 * pi * pi * h.chi, 1e-4));
        out.push_back(value_check("fourdim.T_equals_Q3", "T-curvature against Q3 from the scattering log solution",
                                  q3_by_scattering(), h.T, 1e-4));
        const TCurvatureResult f = compute_t_curvature(FourModel::FlatSlab);
        out.push_back(tolerance_check("fourdim.flat_slab_T", "flat slab needs no rescaling: T = T_3^3 / 2 = 0", std::abs(f.T), 1e-12));

        Rng rng(draw_seed(cfg, 3, 999));
        double transf = 0;
        for (int t = 0; t < 3; ++t) {
            ZonalDatum w = random_zonal(rng, 3, 4);
            for (double& c : w.c) c *= 0.3;
            transf = std::max(transf, t_curvature_transformation_residual(w));
        }
        out.push_back(tolerance_check("fourdim.T_transformation", "e^{3w} T-hat = T + P3 w on the hemisphere", transf, 1e-7));

        out.push_back(tolerance_check("fourdim.G_critical", "constant psi = -1/4 solves 2 B1 T1 + T2 = 0",
                                      critical_residuals_g(ZonalDatum{3, {0.7}}, ZonalDatum{3, {-0.25}}).values[0].second, 1e-10));

        double constant = 0;
        for (double a : {0.0, 1.3})
            constant = std::max(constant, std::abs(critical_sharp_deficit(ZonalDatum{3, {a}}, ZonalDatum{3, {0.0}}).deficit));
        out.push_back(tolerance_check("fourdim.critical_sharp_constant", "constants attain the critical inequality", constant, 1e-6));
        double bubble = 0;
        for (double xi : {0.3, 0.6}) {
            const ZonalDatum f = project_zonal(3, 40, [xi](double s) { return 0.5 - std::log(1 + xi * s); });
            const ZonalDatum psi = project_zonal(3, 60, [xi](double s) { return 0.8 / (1 - xi * s); });
            bubble = std::max(bubble, std::abs(critical_sharp_deficit(f, psi).deficit));
        }
        out.push_back(tolerance_check("fourdim.critical_sharp_bubbles", "log-bubbles attain the critical inequality", bubble, 1e-4));
        double smallest = std::numeric_limits<double>::infinity(), beck = smallest;
        for (int t = 0; t < 50; ++t) {
            const CriticalSharpDeficit d = critical_sharp_deficit(random_zonal(rng, 3, 5), random_zonal(rng, 3, 5));
            smallest = std::min(smallest, d.deficit);
            beck = std::min({beck, d.beckner_f, d.beckner_psi});
        }
        out.push_back(lower_bound_check("fourdim.critical_sharp_random", "critical inequality on 50 random draws", smallest, 1e-8));
        out.push_back(lower_bound_check("fourdim.beckner_random", "Beckner inequalities on the same draws", beck, 1e-8));
        return out;
    });
    return tasks;
}

std::vector<Task> tasks_for(const std::string& name, const SuiteConfig& cfg) {
    if (name == "section2") return section2_tasks(cfg);
    if (name == "covariance") return covariance_tasks(cfg);
    if (name == "linearization") return linearization_tasks(cfg);
    if (name == "energy") return energy_tasks(cfg);
    if (name == "solver") return solver_tasks(cfg);
    if (name == "models") return models_tasks(cfg);
    if (name == "fourdim") return fourdim_tasks(cfg);
    throw std::invalid_argument("unknown suite: " + name);
}

void apply_floor(std::vector<CheckReport>& reports, const SuiteConfig& cfg) {
    if (!cfg.tol) return;
    for (CheckReport& r : reports) {
        if (r.min_order <= 0.0 || r.residuals.empty()) continue;
        r.tolerance = *cfg.tol;
        const double last = r.residuals.back();
        r.pass = std::isfinite(last) && (last < *cfg.tol || (r.residuals.size() >= 2 && r.order >= r.min_order));
    }
}

std::vector<CheckReport> run_tasks(const std::vector<Task>& tasks, int jobs) {
    std::vector<std::vector<CheckReport>> results(tasks.size());
    auto run_one = [&](std::size_t i) {
        const auto t0 = std::chrono::steady_clock::now();
        results[i] = tasks[i]();
        const double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
        // a task's wall time is shared evenly by its reports unless they timed themselves
        for (CheckReport& r : results[i])
            if (r.wall_ms == 0.0) r.wall_ms = ms / static_cast<double>(results[i].size());
    };
    const std::size_t workers = std::min<std::size_t>(std::max(jobs, 1), tasks.size());
    if (workers <= 1) {
        for (std::size_t i = 0; i < tasks.size(); ++i) run_one(i);
    } else {
        std::atomic<std::size_t> next{0};
        std::vector<std::exception_ptr> errors(tasks.size());
        std::vector<std::thread> pool;
        for (std::size_t w = 0; w < workers; ++w)
            pool.emplace_back([&] {
                for (std::size_t i; (i = next++) < tasks.size();) {
                    try {
                        run_one(i);
                    } catch (...) {
                        errors[i] = std::current_exception();
                    }
                }
            });
        for (auto& t : pool) t.join();
        for (auto& e : errors)
            if (e) std::rethrow_exception(e);
    }
    std::vector<CheckReport> out;
    for (auto& r : results) out.insert(out.end(), r.begin(), r.end());
    return out;
}

}  // namespace

std::uint64_t suite_draw_seed(std::uint64_t seed, int n, int draw) {
    return substream(seed, static_cast<std::uint64_t>(n) * 1000 + static_cast<std::uint64_t>(draw));
}

double relative_error(double a, double b) {
    return std::abs(a - b) / std::max(std::abs(b), std::numeric_limits<double>::min());
}

const std::vector<std::string>& suite_names() {
    static const std::vector<std::string> names = {"section2", "covariance", "linearization", "energy",
                                                   "solver",   "models",     "fourdim"};
    return names;
}

std::vector<std::string> resolve_suites(const std::vector<std::string>& names) {
    if (names.empty()) throw std::invalid_argument("no suite given");
    std::vector<std::string> out;
    for (const std::string& s : names) {
        if (s == "all") {
            for (const std::string& t : suite_names())
                if (std::find(out.begin(), out.end(), t) == out.end()) out.push_back(t);
            continue;
        }
        if (std::find(suite_names().begin(), suite_names().end(), s) == suite_names().end())
            throw std::invalid_argument("unknown suite: " + s);
        if (std::find(out.begin(), out.end(), s) == out.end()) out.push_back(s);
    }
    return out;
}

std::vector<CheckReport> run_suite(const std::string& name, const SuiteConfig& cfg) {
    SuiteConfig one = cfg;
    one.suites = {name};
    return run_suites(one);
}

std::vector<CheckReport> run_suites(const SuiteConfig& cfg) {
    if (cfg.draws < 1) throw std::invalid_argument("draws must be at least 1");
    if (cfg.sizes.empty()) throw std::invalid_argument("no grid sizes given");
    std::vector<Task> tasks;
    for (const std::string& s : resolve_suites(cfg.suites)) {
        auto t = tasks_for(s, cfg);
        tasks.insert(tasks.end(), t.begin(), t.end());
    }
    std::vector<CheckReport> out = run_tasks(tasks, cfg.jobs);
    apply_floor(out, cfg);
    return out;
}

}  // namespace paneitz
