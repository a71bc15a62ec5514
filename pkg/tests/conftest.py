import pytest
from hypothesis import HealthCheck, settings

from sdiv.construct import compute_constants
from sdiv.sring import ring_from_spec

settings.register_profile("default", max_examples=60, deadline=None,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")

CONFIGS = ["d=-1;S=2r", "d=-5;S=2r"]


@pytest.fixture(scope="session")
def rings():
    return {spec: ring_from_spec(spec) for spec in CONFIGS + ["d=-3;S=2i", "d=-1;S=5s1,5s2",
                                                              "d=-23;S=2s1", "d=-14;S=3s1"]}


@pytest.fixture(scope="session")
def constants(rings):
    cache = {}

    def get(spec):
        if spec not in cache:
            cache[spec] = compute_constants(rings[spec])
        return cache[spec]
    return get


@pytest.fixture(scope="session")
def gauss(rings):
    return rings["d=-1;S=2r"]


@pytest.fixture(scope="session")
def r5(rings):
    return rings["d=-5;S=2r"]


ACCEPTANCE: dict[int, tuple[bool, str]] = {}


@pytest.fixture
def criterion():
    """Record one acceptance criterion; the result line is printed in the summary."""
    def record(n: int, ok: bool, detail: str = "") -> None:
        ACCEPTANCE[n] = (ok, detail)
        assert ok, f"criterion {n} failed: {detail}"
    return record


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(ACCEPTANCE):
        ok, detail = ACCEPTANCE[n]
        terminalreporter.write_line(f"criterion {n}: {'PASS' if ok else 'FAIL'}  {detail}")
