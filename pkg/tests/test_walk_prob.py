from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from limitwalk.walk_prob import (
    Scenario,
    binom,
    critical_r,
    endpoint_prob,
    execution_distribution,
    no_touch_prob,
    reachable_levels,
    touch_prob,
)

from conftest import brute_law, brute_paths


def pascal(n, m):
    row = [1]
    for _ in range(n):
        row = [a + b for a, b in zip([0] + row, row + [0])]
    return row[m] if 0 <= m <= n else 0


@pytest.mark.parametrize("n, m, expected", [(10, 5, 252), (4, 0, 1), (4, 7, 0), (4, -1, 0)])
def test_binom(n, m, expected):
    assert binom(n, m) == expected
    assert pascal(n, m) == expected


@pytest.mark.parametrize(
    "n, r, expected",
    [(1, 1, Fraction(1, 2)), (4, 1, Fraction(0)), (10, 0, Fraction(252, 1024)), (4, 6, Fraction(0))],
)
def test_endpoint_prob(n, r, expected):
    assert endpoint_prob(n, r) == expected


@pytest.mark.parametrize(
    "r, touch, no_touch",
    [(0, Fraction(4, 16), Fraction(2, 16)), (-2, Fraction(4, 16), 0), (4, 0, Fraction(1, 16)),
     (2, Fraction(1, 16), Fraction(3, 16)), (-4, Fraction(1, 16), 0)],
)
def test_touch_split_n4_k1(r, touch, no_touch):
    assert touch_prob(4, r, 1) == touch
    assert no_touch_prob(4, r, 1) == no_touch


def test_touch_rejects_zero_level():
    with pytest.raises(ValueError):
        touch_prob(4, 0, 0)
    with pytest.raises(ValueError):
        no_touch_prob(4, 0, 0)


@pytest.mark.parametrize("n, k, expected", [(10, 3, 4), (4, 2, 0), (23, 23, -23)])
def test_critical_r(n, k, expected):
    assert critical_r(n, k) == expected


def test_scenario_validation():
    assert Scenario(10, 3).critical_r == 4
    for n, k in [(0, 0), (3, 4), (3, -1)]:
        with pytest.raises(ValueError):
            Scenario(n, k)


@pytest.mark.parametrize("n", range(1, 13))
def test_touch_matches_path_count(n):
    for k in range(1, n + 1):
        for r in range(-n - 1, n + 2):
            touched = sum(1 for end, low in brute_paths(n) if end == r and low <= -k)
            assert touch_prob(n, r, k) == Fraction(touched, 2**n)


def test_touch_matches_path_count_n16():
    n = 16
    for k in (1, 4, 9, 16):
        for r in reachable_levels(n):
            touched = sum(1 for end, low in brute_paths(n) if end == r and low <= -k)
            assert touch_prob(n, r, k) == Fraction(touched, 2**n)


def test_beyond_critical_value_never_touched():
    n, k = 12, 4
    for r in range(critical_r(n, k) + 1, n + 1):
        assert touch_prob(n, r, k) == 0
        assert no_touch_prob(n, r, k) == endpoint_prob(n, r)


def test_distribution_examples():
    assert execution_distribution(4, 1).atoms() == {
        -1: Fraction(10, 16), 0: Fraction(2, 16), 2: Fraction(3, 16), 4: Fraction(1, 16)
    }
    assert execution_distribution(1, 1).atoms() == {-1: Fraction(1, 2), 1: Fraction(1, 2)}
    # the Fig. 4 text reads "almost 70%", the exact sum is 75.4%
    assert execution_distribution(10, 1).passive_mass == Fraction(772, 1024)


@pytest.mark.parametrize("n", range(1, 11))
def test_distribution_matches_brute_force(n):
    for k in range(1, n + 1):
        law = execution_distribution(n, k)
        assert law.atoms() == brute_law(n, k)
        assert law.total() == 1


@given(n=st.integers(1, 64), data=st.data())
@settings(max_examples=200, deadline=None)
def test_touch_plus_no_touch_is_endpoint(n, data):
    k = data.draw(st.integers(1, n))
    r = data.draw(st.integers(-n - 2, n + 2))
    assert touch_prob(n, r, k) + no_touch_prob(n, r, k) == endpoint_prob(n, r)
    assert endpoint_prob(n, r) == endpoint_prob(n, -r)
    assert 0 <= no_touch_prob(n, r, k) <= endpoint_prob(n, r)


@pytest.mark.parametrize("n", range(1, 65))
def test_endpoint_law_normalised(n):
    assert sum(endpoint_prob(n, r) for r in range(-n, n + 1)) == 1


@given(n=st.integers(1, 64), data=st.data())
@settings(max_examples=100, deadline=None)
def test_distribution_sums_to_one(n, data):
    k = data.draw(st.integers(1, n))
    assert execution_distribution(n, k).total() == 1


@pytest.mark.parametrize("n", range(1, 65))
def test_logspace_matches_exact(n):
    for r in reachable_levels(n):
        exact = endpoint_prob(n, r, "exact")
        approx = endpoint_prob(n, r, "logspace")
        assert isinstance(approx, float)
        assert abs(approx - float(exact)) <= 1e-12 * float(exact)


def test_auto_engine_switches_for_long_trees():
    assert isinstance(endpoint_prob(2000, 0), Fraction)
    p = endpoint_prob(2001, 1)
    assert isinstance(p, float)
    assert p == pytest.approx(float(Fraction(binom(2001, 1001), 2**2001)), rel=1e-10)


def test_exact_engine_is_deterministic():
    a = execution_distribution(40, 7, "exact")
    b = execution_distribution(40, 7, "exact")
    assert a == b
    assert all(isinstance(p, Fraction) for p in a.atoms().values())
