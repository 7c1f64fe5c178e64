import numpy as np
import pytest
from hypothesis import HealthCheck, settings

from pinchkit.curvature import PointData

settings.register_profile("pinchkit", deadline=None, max_examples=40,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("pinchkit")

ACCEPTANCE_LINES = []


def random_point(rng, n, m, c=1.0, scale=1.0):
    raw = rng.standard_normal((m, n, n)) * scale
    return PointData(n, m, c, 0.5 * (raw + raw.transpose(0, 2, 1)))


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
