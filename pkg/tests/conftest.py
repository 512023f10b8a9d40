from __future__ import annotations

import pytest

from defw.algebra import AlgebraContext
from defw.textio import parse_element

ACCEPTANCE_LINES: list[str] = []


@pytest.fixture
def ctx1():
    return AlgebraContext(1)


@pytest.fixture
def P(ctx1):
    return lambda text, ctx=None: parse_element(text, ctx or ctx1)


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s.split()[2].rstrip(":"))):
            terminalreporter.write_line(line)
