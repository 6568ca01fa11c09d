"""Acceptance gate: the ten verification criteria, one test each.

Each test runs its criterion end to end (with the documented cutoffs,
tolerances, and time budgets baked into `cubic_mds.verify`), emits the
one-line PASS/FAIL verdict, and asserts it.  The same lines are
available from the command line via `cubic-mds verify all`.

The gauss-sums criterion asserts, among other things, that the raw
twisted exponential sum of the mod-12n table equals i sqrt(12 n) for
n in {1, 5, 7, 11, 13}.  The measured sums are 2i, -i sqrt(20), 0, 0,
+i sqrt(52): the table is imprimitive (its conductor is 4n or n, never
12n), so the modulus-sqrt normalization cannot hold, and no correct
implementation can make that sub-check pass.  It is left to fail
honestly rather than silently replacing the stated quantity; the
primitive-conductor Gauss sums that the functional equation actually
needs are green here (part 1) and in the dedicated unit tests.
"""

import pytest

from cubic_mds import verify


@pytest.mark.parametrize(
    "suite",
    verify.SUITES,
    ids=[f"{i:02d}-{verify.SUITE_NAMES[i]}" for i in range(1, 11)],
)
def test_acceptance_criterion(suite, record_property):
    result = suite()
    line = result.line()
    print(line)
    # conftest.py echoes this property as a terminal summary so the
    # verdict lines land in piped logs despite output capture.
    record_property("criterion_line", line)
    assert result.passed, line
