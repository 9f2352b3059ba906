"""Shared fixtures: the oracle import path and a session-wide graph cache
so the acceptance sweep and the unit tests build each prime's graph once."""

import sys
from pathlib import Path

import pytest

TESTS_DIR = Path(__file__).resolve().parent
if str(TESTS_DIR) not in sys.path:
    sys.path.insert(0, str(TESTS_DIR))

from g2cgl.graph import build_graph  # noqa: E402

_GRAPHS = {}


@pytest.fixture(scope="session")
def graph_cache():
    """Callable p -> GraphSnapshot, built once per session."""

    def get(p: int):
        if p not in _GRAPHS:
            _GRAPHS[p] = build_graph(p)
        return _GRAPHS[p]

    return get


# The acceptance tests record one verdict line each; the terminal-summary
# hook prints them uncaptured so the final run log always shows them.
ACCEPTANCE_LINES = []


def record_acceptance(number: int, label: str, ok: bool, details: str) -> None:
    ACCEPTANCE_LINES.append(
        f"ACCEPTANCE {number:2d} {label}: "
        f"{'PASS' if ok else 'FAIL'} -- {details}"
    )


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_LINES:
        return
    terminalreporter.section("acceptance criteria")
    for line in sorted(ACCEPTANCE_LINES):
        terminalreporter.write_line(line)
