"""The exit criteria, one test per criterion at its stated tolerance and time budget."""
import pytest

from qcl import acceptance as acc


@pytest.mark.parametrize("number", [c[0] for c in acc.CRITERIA], ids=[f"criterion-{c[0]}" for c in acc.CRITERIA])
def test_criterion(number, capsys):
    result = acc.run_criterion(number)
    with capsys.disabled():
        print("\n" + result.line())
    assert result.ok, result.line()
