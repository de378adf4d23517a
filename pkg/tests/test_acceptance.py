"""The thirteen acceptance criteria, each at its stated tolerance and time limit.

Every criterion prints one PASS/FAIL line (visible with ``pytest -s`` or
``-v``). Criterion 7 reuses the saturated witnesses gathered by 1, 2, 3
and 5 when they ran first; on its own it regathers them.
"""

import pytest

from colorsat import suite


@pytest.fixture(scope="module", autouse=True)
def fresh_witnesses():
    suite.reset()
    yield
    suite.reset()


@pytest.mark.parametrize("number", sorted(suite.criteria()))
def test_criterion(number, capsys):
    r = suite.run_criterion(number)
    with capsys.disabled():
        print("\n" + r.line())
    assert r.ok, r.line()
