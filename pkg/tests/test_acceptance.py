"""The acceptance gate as a test module: one test per criterion, each
asserting its stated tolerance and runtime budget."""

import pytest

from chartbench import acceptance


@pytest.mark.parametrize("name", sorted(acceptance.CRITERIA))
def test_criterion(name, capsys):
    ok, detail = acceptance.CRITERIA[name]()
    print(f"{'PASS' if ok else 'FAIL'}  criterion {name}: {detail}")
    assert ok, detail
