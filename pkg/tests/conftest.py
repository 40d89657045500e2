import os
import sys
from pathlib import Path

import numpy as np
import pytest

sys.path.insert(0, str(Path(__file__).parent))


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


def alon_path():
    """Location of the public 62 x 2000 Alon colon matrix, if present."""
    env = os.environ.get("KDEVALIDITY_ALON")
    candidates = [Path(env)] if env else []
    candidates.append(Path(__file__).parent / "data" / "alon.csv")
    for p in candidates:
        if p.is_file():
            return p
    return None


_VERDICTS: list[str] = []


@pytest.fixture
def verdict():
    """Record a one-line PASS/FAIL/SKIPPED verdict for an acceptance criterion."""

    def record(number, status, detail):
        line = f"criterion {number}: {status} - {detail}"
        print(line)
        _VERDICTS.append(line)

    return record


def pytest_terminal_summary(terminalreporter):
    if _VERDICTS:
        terminalreporter.section("acceptance criteria")
        for line in sorted(_VERDICTS, key=lambda s: int(s.split()[1].rstrip(":"))):
            terminalreporter.write_line(line)
