import numpy as np
import pytest
from hypothesis import HealthCheck, settings

from fracbouss.spectral import Grid, SpectralField, dealias, hermitian_part

settings.register_profile(
    "default", max_examples=40, deadline=None, suppress_health_check=[HealthCheck.too_slow]
)
settings.load_profile("default")

# acceptance verdicts, printed at the end of the session
ACCEPTANCE: list = []


@pytest.fixture
def grid64():
    return Grid(64)


@pytest.fixture
def grid16():
    return Grid(16)


def random_field(grid, rng, kmax=None, mean_zero=True):
    """Real, dealiased random field, optionally band-limited to |ξ_i| ≤ kmax."""
    c = rng.standard_normal((grid.n, grid.n)) + 1j * rng.standard_normal((grid.n, grid.n))
    c = np.where(grid.nyquist_free, c, 0)
    if kmax is not None:
        c = np.where((np.abs(grid.k1) <= kmax) & (np.abs(grid.k2) <= kmax), c, 0)
    c = hermitian_part(c)
    if mean_zero:
        c[0, 0] = 0
    return dealias(SpectralField(grid, c))


@pytest.fixture
def report():
    def _report(number: int, passed: bool, detail: str):
        line = f"criterion {number:>2}: {'PASS' if passed else 'FAIL'}  {detail}"
        ACCEPTANCE.append((number, line))
        print(line)

    return _report


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for _, line in sorted(ACCEPTANCE):
        terminalreporter.write_line(line)
