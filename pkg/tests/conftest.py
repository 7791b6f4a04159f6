from fractions import Fraction

import pytest
from hypothesis import strategies as st

ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


@pytest.fixture
def report():
    def _report(label: str, ok: bool, detail: str = ""):
        line = f"[{'PASS' if ok else 'FAIL'}] {label}" + (f" -- {detail}" if detail else "")
        ACCEPTANCE_LINES.append(line)
        print(line)
        return ok
    return _report


small_rationals = st.builds(Fraction, st.integers(-6, 6), st.integers(1, 4))


@st.composite
def evectors(draw, max_d=3):
    d = draw(st.integers(1, max_d))
    first = draw(small_rationals.filter(lambda q: q != 0))
    rest = draw(st.lists(small_rationals, min_size=d - 1, max_size=d - 1))
    return (first, *rest)


def sequences(max_len=4):
    return st.lists(small_rationals, max_size=max_len).map(tuple)
