import functools

import pytest
from hypothesis import HealthCheck, settings

from pentagon.enumeration import enumerate_semigroups

settings.register_profile(
    "default", max_examples=60, deadline=None, suppress_health_check=[HealthCheck.too_slow]
)
settings.load_profile("default")

VERDICTS = []


@functools.lru_cache(maxsize=None)
def semigroups(n, up_to_iso=True):
    return tuple(enumerate_semigroups(n, up_to_iso=up_to_iso))


def semigroups_up_to(n, up_to_iso=True):
    return [S for k in range(1, n + 1) for S in semigroups(k, up_to_iso)]


@pytest.fixture
def record_verdict():
    def record(label, ok, detail):
        VERDICTS.append((label, ok, detail))
    return record


def pytest_terminal_summary(terminalreporter):
    if not VERDICTS:
        return
    terminalreporter.section("acceptance criteria")
    for label, ok, detail in VERDICTS:
        terminalreporter.write_line(f"{'PASS' if ok else 'FAIL'}  {label}: {detail}")
