"""The fifteen acceptance criteria, each at its stated order and tolerance.

Every criterion prints one ``[PASS]`` or ``[FAIL]`` line. Three criteria contain
sub-checks whose stated target disagrees with the mathematics; they are run
unchanged and marked as strict expected failures, and a companion test pins
down that nothing beyond those sub-checks fails.
"""

from functools import cache

import pytest

from rrlab import acceptance

pytestmark = pytest.mark.slow

KNOWN_FAILURES = {
    # the m = 1 specialization lands on Bressoud's i = 2 sum, not i = 1
    3: {"Cn1(1,1) = bressoud_sum(2, i=1)", "Cn1(1,2) = bressoud_sum(3, i=1)",
        "Cn1(1,3) = bressoud_sum(4, i=1)"},
    # the tabulated Phi_1b value is sqrt(3) times the true one, and its polynomial is for -Phi_1b
    11: {"Phi_1b = 0.217095...", "minpoly Phi_1b", "residual Phi_1b"},
    # the tabulated orbit polynomial is the image of the true one under x -> -x
    12: {"orbit polynomial of Phi_1b^3"},
}
REASONS = {
    3: "m = 1 reduction of Cn1 gives Bressoud i = 2",
    11: "tabulated Phi_1b(2,2; i/3) value and polynomial do not match the product",
    12: "tabulated Phi_1b^3 orbit polynomial has the sign of x reversed",
}


@cache
def outcome(k: int) -> acceptance.Outcome:
    return acceptance.run_criterion(k)


def params() -> list:
    out = []
    for k in sorted(acceptance.CRITERIA):
        marks = [pytest.mark.xfail(strict=True, reason=REASONS[k])] if k in KNOWN_FAILURES else []
        out.append(pytest.param(k, marks=marks, id=f"criterion_{k:02d}"))
    return out


@pytest.mark.parametrize("k", params())
def test_criterion(k, capsys):
    out = outcome(k)
    with capsys.disabled():
        print("\n" + out.line())
    assert out.checks, "criterion ran no checks"
    assert out.passed, out.failures


@pytest.mark.parametrize("k", sorted(KNOWN_FAILURES), ids=lambda k: f"criterion_{k:02d}")
def test_known_failures_are_exactly_the_documented_ones(k):
    out = outcome(k)
    assert set(out.failures) == KNOWN_FAILURES[k]
