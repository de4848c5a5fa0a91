import math

import pytest

import paneitz


def test_flat_symbols():
    for xi in (0.5, 1.0, 3.0):
        p = paneitz.SeparableProblem.flat(xi)
        assert paneitz.induced_operator(p, 1) == pytest.approx(xi, rel=1e-9)
        assert paneitz.induced_operator(p, 3) == pytest.approx(xi**3, rel=1e-9)


def test_flat_extension_closed_form():
    s = paneitz.solve_extension(paneitz.SeparableProblem.flat(1.0), 1.0, 0.0)
    for y in (0.0, 0.5, 2.0):
        assert s.u(y) == pytest.approx((1 + y) * math.exp(-y), rel=1e-10)
    assert s.b3 == pytest.approx(2.0)


def test_hemisphere_spectrum_matches_solver():
    for ell in range(5):
        p = paneitz.SeparableProblem.hemisphere(4, ell)
        assert paneitz.induced_operator(p, 3) == pytest.approx(paneitz.hemisphere_spectrum(4, ell, 3), rel=1e-6)


def test_scattering_routes_agree():
    a = paneitz.hyperbolic_scattering(1.5, 3, 2.0, 1.0)
    b = paneitz.scattering_by_ode(1.5, 3, 2.0, 1.0)
    assert 3 * a.G == pytest.approx(8.0, rel=1e-12)
    assert b.G == pytest.approx(a.G, rel=1e-6)


def test_t_curvature_and_q3():
    assert paneitz.hemisphere_t_curvature() == pytest.approx(2.0, rel=1e-8)
    assert paneitz.q3_by_scattering() == pytest.approx(2.0, rel=1e-8)


def test_sharp_deficits():
    d = paneitz.sobolev_deficit(paneitz.ZonalDatum(4, [1.0, 0.2]), paneitz.ZonalDatum(4, [0.3]))
    assert d.deficit > 0
    f = paneitz.project_zonal(3, 40, lambda s: 0.2 - math.log(1 + 0.4 * s))
    c = paneitz.critical_sharp_deficit(f, paneitz.ZonalDatum(3, [0.0]))
    assert abs(c.deficit) < 1e-4


def test_suite_report_is_deterministic():
    cfg = paneitz.SuiteConfig()
    cfg.suites = ["solver"]
    a = paneitz.report_json(cfg, paneitz.run_suites(cfg), False)
    b = paneitz.report_json(cfg, paneitz.run_suites(cfg), False)
    assert a == b
    checks = paneitz.run("solver")
    assert checks and all(c.passed for c in checks)


def test_unknown_suite_rejected():
    with pytest.raises(ValueError):
        paneitz.run("nonsense")


def test_solver_error_is_raised():
    with pytest.raises((paneitz.SolverError, ValueError)):
        paneitz.solve_extension(paneitz.SeparableProblem.flat(0.0), 1.0, 0.0)
