import numpy as np
import pytest
from hypothesis import settings

from reflectionless import PotentialParams, QuadratureSpec

settings.register_profile("default", max_examples=40, deadline=None)
settings.load_profile("default")

# criterion number -> (title, passed, detail); filled by test_acceptance.py
ACCEPTANCE = {}


@pytest.fixture
def p1():
    return PotentialParams(kappa=1.0)


@pytest.fixture
def spec():
    return QuadratureSpec(abs_tol=1e-10, rel_tol=1e-10)


@pytest.fixture
def rng():
    return np.random.default_rng(1234)


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    tr = terminalreporter
    tr.section("acceptance criteria")
    for num in sorted(ACCEPTANCE):
        title, ok, detail = ACCEPTANCE[num]
        tr.write_line(f"[{'PASS' if ok else 'FAIL'}] {num:2d} {title}: {detail}")
