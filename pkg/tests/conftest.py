import numpy as np
import pytest
from hypothesis import HealthCheck, settings

from lebesgue_quadrature.basis import BasisKind, BasisSpec
from lebesgue_quadrature.formats import runge_table, two_stage_curve
from lebesgue_quadrature.moments import SampleTable
from lebesgue_quadrature.pipeline import derivative_samples

settings.register_profile("default", deadline=None, suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")


def random_measure(rng, M=None, smooth=False):
    """Discrete measure on [-1, 1] with a bounded observable f."""
    M = M or int(rng.integers(40, 200))
    x = rng.uniform(-1, 1, M)
    w = rng.uniform(0.1, 2.0, M)
    if smooth:
        f = np.sin(3 * x) + 0.5 * x * x
    else:
        f = rng.normal(size=M)
    return SampleTable(x, f, w)


def chebyshev_on(table):
    return BasisSpec(BasisKind.CHEBYSHEV).fitted(table.x.min(), table.x.max())


@pytest.fixture
def rng():
    return np.random.default_rng(20240607)


@pytest.fixture(scope="session")
def runge():
    t = runge_table()
    return SampleTable(t[:, 1], t[:, 1], t[:, 8])


@pytest.fixture(scope="session")
def two_stage():
    N, C = two_stage_curve(10000, 1000.0, 800.0, 1e-4, 5e-4)
    return derivative_samples(SampleTable(N, C, np.ones_like(N)))


def pytest_terminal_summary(terminalreporter):
    """One pass/fail line per acceptance criterion."""
    lines = []
    for outcome in ("passed", "failed"):
        for rep in terminalreporter.stats.get(outcome, []):
            if rep.when != "call":
                continue
            props = dict(rep.user_properties)
            if "criterion" in props:
                lines.append((props["criterion"], "PASS" if outcome == "passed" else "FAIL", props["title"]))
    if lines:
        terminalreporter.section("acceptance criteria")
        for number, status, title in sorted(lines):
            terminalreporter.write_line(f"criterion {number}: {status}  {title}")
