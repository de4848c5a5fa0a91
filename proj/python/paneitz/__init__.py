"""Paneitz operator on manifolds with boundary: model solvers and verification suites."""

from ._paneitz import *  # noqa: F401,F403
from ._paneitz import run_suites, SuiteConfig


def run(suites, **options):
    """Run named suites; keyword options mirror SuiteConfig fields."""
    cfg = SuiteConfig()
    cfg.suites = [suites] if isinstance(suites, str) else list(suites)
    for key, value in options.items():
        if not hasattr(cfg, key):
            raise TypeError(f"unknown option {key!r}")
        setattr(cfg, key, value)
    return run_suites(cfg)
