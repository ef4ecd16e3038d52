from functools import lru_cache

import pytest
from hypothesis import settings

from cremona_lab.pipeline import ConstructionConfig, run_construction

settings.register_profile("default", deadline=None, max_examples=60)
settings.load_profile("default")

ACCEPTANCE_LINES: dict[int, str] = {}


@lru_cache(maxsize=None)
def cached_result(n=2, lam=2, mu=1, a=None, psi_poly=False, modular=False):
    return run_construction(ConstructionConfig(n=n, lam=lam, mu=mu, a=a, psi_poly=psi_poly, modular=modular))


@pytest.fixture(scope="session")
def construction():
    return cached_result


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for k in sorted(ACCEPTANCE_LINES):
            terminalreporter.write_line(ACCEPTANCE_LINES[k])
