from fractions import Fraction
from functools import lru_cache
from itertools import product

import pytest

ACCEPTANCE_RESULTS = []


@lru_cache(maxsize=None)
def brute_paths(n):
    """(final level, running minimum) of every one of the 2**n step sequences, in pure Python."""
    out = []
    for steps in product((1, -1), repeat=n):
        pos = low = 0
        for s in steps:
            pos += s
            low = min(low, pos)
        out.append((pos, low))
    return tuple(out)


def brute_law(n, k):
    """Execution-price law of the rest-then-cross strategy by direct path walking."""
    law = {}
    for r, low in brute_paths(n):
        price = -k if low <= -k else r
        law[price] = law.get(price, 0) + 1
    return {p: Fraction(c, 2**n) for p, c in sorted(law.items())}


@pytest.fixture
def brute():
    return brute_paths


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for name, ok, detail in ACCEPTANCE_RESULTS:
        terminalreporter.write_line(f"{'PASS' if ok else 'FAIL'}  {name}  {detail}")
