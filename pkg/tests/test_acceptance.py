"""Acceptance battery: one pass/fail line per built-in criterion.

Each criterion must both hold and finish inside its time budget.  The
central-subgroup extension sweep is a known red: restricting a class to a
central subgroup is not surjective in general (the sign class on the Klein
four subgroup of C2 x C4 has no ambient preimage), so the sweep genuinely
finds misses.  It is left failing on purpose rather than weakened; the
printed detail lists the exact group/subgroup pairs.
"""

import pytest

from gradalg.catalog import criterion_numbers, run_criterion


@pytest.mark.parametrize("number", criterion_numbers(),
                         ids=[f"{n:02d}" for n in criterion_numbers()])
def test_criterion(number):
    r = run_criterion(number)
    print(r.line())
    print(f"    {r.detail}")
    print(f"    runtime {r.runtime:.2f}s of {r.budget:.0f}s budget")
    assert r.within_budget, f"runtime {r.runtime:.2f}s over the {r.budget:.0f}s budget"
    assert r.passed, r.detail
