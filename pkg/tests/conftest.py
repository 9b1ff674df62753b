import os

import pytest
from hypothesis import HealthCheck, settings

settings.register_profile(
    "default", max_examples=60, deadline=None, suppress_health_check=[HealthCheck.too_slow]
)
settings.register_profile("thorough", max_examples=400, deadline=None)
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))

_ACCEPTANCE: list[str] = []


@pytest.fixture
def acceptance():
    """Record one PASS/FAIL line per acceptance criterion."""

    def record(number: int, ok: bool, detail: str) -> bool:
        line = f"criterion {number}: {'PASS' if ok else 'FAIL'} {detail}"
        print(line)
        _ACCEPTANCE.append(line)
        return ok

    return record


def pytest_terminal_summary(terminalreporter):
    if _ACCEPTANCE:
        terminalreporter.section("acceptance criteria")
        for line in sorted(_ACCEPTANCE, key=lambda s: int(s.split()[1].rstrip(":"))):
            terminalreporter.write_line(line)
