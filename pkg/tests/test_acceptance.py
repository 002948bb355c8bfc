"""The twelve acceptance criteria at full size.

Each test records one PASS/FAIL line; the lines are printed together in
an "acceptance criteria" section at the end of the pytest run.  The same
checks run from the command line via ``waringsac reproduce``.
"""

import pytest

from conftest import ACCEPTANCE_LINES
from waringsac.acceptance import CRITERIA, run_criterion


@pytest.mark.parametrize("number", sorted(CRITERIA), ids=lambda n: f"criterion_{n:02d}")
def test_criterion(number):
    result = run_criterion(number, scale=1.0)
    ACCEPTANCE_LINES.append(result.line())
    assert result.passed, result.line()
