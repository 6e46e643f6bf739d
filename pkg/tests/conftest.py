import numpy as np
import pytest
from hypothesis import settings

# jit compilation and cache warm-up make first calls slow; timing is not under test here
settings.register_profile("default", deadline=None)
settings.load_profile("default")

ACCEPTANCE_LINES: list[str] = []


@pytest.fixture
def rng():
    return np.random.default_rng(20240917)


@pytest.fixture
def criterion(request):
    """Record one PASS/FAIL verdict line for an acceptance criterion."""
    recorded = []

    def record(number: int, title: str, ok: bool, detail: str = "") -> bool:
        line = f"{'PASS' if ok else 'FAIL'} criterion {number:>2}: {title}"
        if detail:
            line += f" [{detail}]"
        recorded.append(line)
        ACCEPTANCE_LINES.append(line)
        print(line)
        return ok

    yield record
    if not recorded:
        ACCEPTANCE_LINES.append(f"FAIL {request.node.name}: raised before reaching a verdict")


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
