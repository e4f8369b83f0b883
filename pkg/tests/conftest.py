import time
from contextlib import contextmanager

import pytest

_RESULTS: dict = {}


class Criterion:
    def __init__(self, number: int, title: str, limit_s: float | None):
        self.number = number
        self.title = title
        self.limit_s = limit_s
        self.elapsed = None
        self.passed = False
        self.notes: list[str] = []

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        timing = f"{self.elapsed:.2f}s" if self.elapsed is not None else "not run"
        if self.limit_s is not None:
            timing += f" (limit {self.limit_s:g}s)"
        extra = f"  [{'; '.join(self.notes)}]" if self.notes else ""
        return f"criterion {self.number:2d} {status}  {self.title}  {timing}{extra}"


@pytest.fixture
def criterion():
    @contextmanager
    def run(number, title, limit_s=None):
        c = Criterion(number, title, limit_s)
        _RESULTS[number] = c
        start = time.perf_counter()
        yield c
        c.elapsed = time.perf_counter() - start
        if limit_s is not None:
            assert c.elapsed < limit_s, f"criterion {number} took {c.elapsed:.1f}s, limit {limit_s}s"
        c.passed = True
        print(c.line())

    return run


def pytest_terminal_summary(terminalreporter):
    if not _RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_RESULTS):
        terminalreporter.write_line(_RESULTS[number].line())
