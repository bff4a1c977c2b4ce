import os
import pathlib

import numpy as np
import pytest

ROOT = pathlib.Path(__file__).resolve().parents[1]
DANISH_COUNT = 2156
DANISH_SUM = 7324.486380366355  # math.fsum of the 2156 losses, in millions of DKK


def danish_path():
    """Location of the Danish fire-loss file, or None if not installed."""
    env = os.environ.get("EVTAIL_DANISH")
    candidates = [pathlib.Path(env)] if env else []
    candidates.append(ROOT / "data" / "danish.txt")
    for c in candidates:
        if c.is_file():
            return c
    return None


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


ACCEPTANCE_LINES: list[str] = []


@pytest.fixture
def criterion():
    """``check(label, ok, detail)``: record a PASS/FAIL line, then assert."""

    def check(label, ok, detail=""):
        line = f"{'PASS' if ok else 'FAIL'}  {label}  {detail}".rstrip()
        ACCEPTANCE_LINES.append(line)
        print(line)
        assert ok, line

    return check


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
