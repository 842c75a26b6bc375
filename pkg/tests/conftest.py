from __future__ import annotations

import json
import time
from pathlib import Path

import pytest

ORACLE_PATH = Path(__file__).parent / "oracles" / "values.json"

# acceptance verdict lines, printed in the terminal summary
ACCEPTANCE_LINES: list[str] = []
_START = time.perf_counter()


def cx(pair) -> complex:
    return complex(float(pair[0]), float(pair[1]))


def rel(a, b) -> float:
    return abs(complex(a) - complex(b)) / abs(complex(b))


@pytest.fixture(scope="session")
def oracle() -> dict:
    return json.loads(ORACLE_PATH.read_text())


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_LINES:
        return
    terminalreporter.section("acceptance criteria")
    for line in ACCEPTANCE_LINES:
        terminalreporter.write_line(line)
    terminalreporter.write_line(f"session wall time: {time.perf_counter() - _START:.1f} s")
