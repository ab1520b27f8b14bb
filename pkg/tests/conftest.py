import sys
import time
from contextlib import contextmanager
from pathlib import Path

import numpy as np
import pytest

sys.path.insert(0, str(Path(__file__).parent))

_ACCEPTANCE: dict[int, str] = {}


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


class _Criterion:
    def __init__(self, number, title, limit):
        self.number, self.title, self.limit = number, title, limit
        self.note = ""


@pytest.fixture
def criterion():
    """Time a block, check its limit and log one PASS/FAIL line."""

    @contextmanager
    def run(number, title, limit):
        c = _Criterion(number, title, limit)
        start = time.perf_counter()
        ok = False
        try:
            yield c
            ok = True
        finally:
            elapsed = time.perf_counter() - start
            in_time = elapsed < limit
            verdict = "PASS" if ok and in_time else "FAIL"
            detail = c.note if ok or c.note else "assertion failed"
            if ok and not in_time:
                detail = f"over the {limit:g} s limit"
            line = f"criterion {number:2d} {verdict}  {title}  ({elapsed:.2f} s / {limit:g} s)"
            if detail:
                line += f"  {detail}"
            _ACCEPTANCE[number] = line
            print(line)
        assert elapsed < limit, f"criterion {number} took {elapsed:.1f} s, limit {limit} s"

    return run


def pytest_terminal_summary(terminalreporter):
    if _ACCEPTANCE:
        terminalreporter.section("acceptance criteria")
        for number in sorted(_ACCEPTANCE):
            terminalreporter.write_line(_ACCEPTANCE[number])
