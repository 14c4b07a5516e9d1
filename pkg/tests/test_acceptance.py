"""One test per acceptance criterion; the summary prints a PASS/FAIL line for each."""
import pytest

from wahlkit.acceptance import CHECKS, run_check


@pytest.mark.parametrize("number", sorted(CHECKS), ids=lambda k: f"{k:02d}-{CHECKS[k][0].replace(' ', '-')}")
def test_criterion(number, acceptance_lines):
    check = run_check(number)
    acceptance_lines.append((number, check.line()))
    print(check.line())
    assert check.ok, check.detail
