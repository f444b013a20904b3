import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from natpoly.hull import grow  # noqa: E402
from natpoly.metrics import record_from_polytope  # noqa: E402

RANGE = 120


@pytest.fixture(scope="session")
def records():
    """Metrics for P(1) .. P(120), indexed by N; h* where the dimension allows."""
    out = {}
    for N, p in grow("naturals", RANGE):
        out[N] = record_from_polytope(p, N, with_h_star=N <= 28, with_vertices=True)
    return out


@pytest.fixture(scope="session")
def polytopes():
    """Independent copies of P(1) .. P(60)."""
    return {N: p.copy() for N, p in grow("naturals", 60)}


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    lines = getattr(mod, "RESULTS", None)
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in lines:
            terminalreporter.write_line(line)
