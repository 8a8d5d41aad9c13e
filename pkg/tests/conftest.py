"""Shared fixtures.

Every LexStructure built while the suite runs is recorded so the last test
module can check monotonicity on all of them.
"""

from __future__ import annotations

import pytest

from lexforge.core import LexStructure

PRODUCED: set[LexStructure] = set()
ACCEPTANCE: dict[int, tuple[bool, str]] = {}

_orig_post_init = LexStructure.__post_init__


def _recording_post_init(self):
    _orig_post_init(self)
    PRODUCED.add(self)


LexStructure.__post_init__ = _recording_post_init


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    tr = terminalreporter
    tr.section("acceptance criteria")
    for n in sorted(ACCEPTANCE):
        ok, detail = ACCEPTANCE[n]
        tr.write_line(f"criterion {n:2d}: {'PASS' if ok else 'FAIL'}  {detail}")


@pytest.fixture
def lex22():
    from lexforge.core import lex_model
    return lex_model(2, 2, (0, 1))
