"""The fourteen acceptance criteria, one test each.

Run directly (``python3 tests/test_acceptance.py``) for a plain PASS/FAIL
listing; under pytest the same lines appear in the terminal summary.
"""

import pytest

from drinfeld_bt.verification import CRITERIA, run_criterion

RESULTS: dict[int, object] = {}


def line(c) -> str:
    return f"criterion {c.number}: {'PASS' if c.passed else 'FAIL'} {c.name} ({c.seconds:.1f} s)"


@pytest.mark.parametrize("number", range(1, len(CRITERIA) + 1))
def test_criterion(number):
    c = run_criterion(number)
    RESULTS[number] = c
    print(line(c))
    assert c.passed, f"observed {c.observed!r}, expected {c.expected!r}; {c.details[:5]}"


if __name__ == "__main__":
    import sys

    results = [run_criterion(n) for n in range(1, len(CRITERIA) + 1)]
    for c in results:
        print(line(c))
    sys.exit(0 if all(c.passed for c in results) else 1)
