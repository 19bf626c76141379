from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from limitwalk.execution_analytics import (
    avg_cost_no_touch,
    avg_cost_touch,
    execution_stats,
    fill_prob_exact,
    fill_prob_folded,
    fill_prob_tail,
    gain_increment,
    net_gain,
    variance_components,
    variance_exact,
    variance_regrouped,
)
from limitwalk.walk_prob import endpoint_prob, execution_distribution

from conftest import brute_paths


def brute_stats(n, k):
    """Clean-up cost, passive cost, second moment and fill rate over all 2**n paths."""
    no_touch = fills = sq = 0
    for r, low in brute_paths(n):
        if low <= -k:
            fills += 1
            sq += k * k
        else:
            no_touch += r
            sq += r * r
    N = 2**n
    return Fraction(no_touch, N), Fraction(-k * fills, N), Fraction(sq, N), Fraction(fills, N)


def literal_explicit_form(n, k):
    """Variance in the explicit-in-k form exactly as printed, without the P_n(k) boundary term."""
    P = lambda r: endpoint_prob(n, r, "exact")
    return (
        4 * k * sum(r * P(r) for r in range(k + 1, n + 1))
        - 2 * k * k * sum(P(r) for r in range(k + 1, n + 1))
        + sum(r * r * P(r) for r in range(-k + 1, k + 1))
    )


def test_costs_n4_k1():
    assert avg_cost_no_touch(4, 1) == Fraction(10, 16)
    assert avg_cost_touch(4, 1) == Fraction(-10, 16)
    assert net_gain(4, 1) == 0


def test_costs_single_step():
    assert avg_cost_no_touch(1, 1) == Fraction(1, 2)
    assert avg_cost_touch(1, 1) == Fraction(-1, 2)
    assert variance_components(1, 1) == (Fraction(1, 2), Fraction(1, 2))


# frozen from a pure-Python walk over all 2**n paths
FROZEN = {
    (10, 3): (Fraction(33, 32), Fraction(-33, 32), Fraction(537, 64), Fraction(11, 32)),
    (6, 6): (Fraction(3, 32), Fraction(-3, 32), Fraction(6), Fraction(1, 64)),
    (7, 7): (Fraction(7, 128), Fraction(-7, 128), Fraction(7), Fraction(1, 128)),
    (12, 4): (Fraction(1093, 1024), Fraction(-1093, 1024), Fraction(173, 16), Fraction(1093, 4096)),
    (16, 5): (Fraction(34425, 32768), Fraction(-34425, 32768), Fraction(482243, 32768),
              Fraction(6885, 32768)),
}


@pytest.mark.parametrize("nk", sorted(FROZEN))
def test_frozen_values(nk):
    n, k = nk
    s = execution_stats(n, k)
    assert (s.cost_no_touch, s.cost_touch, s.variance, s.fill_probability) == FROZEN[nk]
    assert brute_stats(n, k) == FROZEN[nk]


def test_limit_at_tree_length():
    # only the all-down path touches -n
    for n in range(1, 15):
        assert fill_prob_exact(n, n) == Fraction(1, 2**n)
        assert avg_cost_touch(n, n) == Fraction(-n, 2**n)
        assert variance_exact(n, n) == n


@pytest.mark.parametrize("n", range(1, 13))
def test_all_fields_match_brute_force(n):
    for k in range(1, n + 1):
        s = execution_stats(n, k)
        assert (s.cost_no_touch, s.cost_touch, s.variance, s.fill_probability) == brute_stats(n, k)


def test_variance_examples():
    assert variance_exact(4, 1) == Fraction(19, 8)
    assert variance_exact(23, 23) == 23
    for n in (1, 5, 30):
        assert variance_exact(n, 0) == 0


def test_variance_components_n4_k1():
    no_touch, touch = variance_components(4, 1)
    assert touch == Fraction(10, 16)
    assert no_touch == Fraction(19, 8) - Fraction(10, 16)


def test_fill_prob_examples():
    assert fill_prob_exact(10, 1) == Fraction(772, 1024)
    assert fill_prob_exact(4, 1) == Fraction(10, 16)
    for n in (1, 2, 9):
        assert fill_prob_exact(n, 0) == 1


def test_zero_gain_at_k0():
    assert net_gain(1, 0) == 0
    assert net_gain(23, 7) == 0


@given(n=st.integers(1, 64), data=st.data())
@settings(max_examples=150, deadline=None)
def test_identities(n, data):
    k = data.draw(st.integers(1, n))
    no_touch, touch = variance_components(n, k)
    v = variance_exact(n, k)
    assert touch == -k * avg_cost_touch(n, k)
    assert no_touch + touch == v == variance_regrouped(n, k)
    assert avg_cost_no_touch(n, k) + avg_cost_touch(n, k) == 0
    assert 0 <= v <= n
    assert 0 <= fill_prob_exact(n, k) <= 1
    assert fill_prob_folded(n, k) == fill_prob_exact(n, k)


@pytest.mark.parametrize("n", range(2, 40))
def test_fill_tail_form(n):
    for k in range(1, n + 1):
        diff = fill_prob_exact(n, k) - fill_prob_tail(n, k)
        if (n - k) % 2:
            assert diff == 0
        else:
            assert diff == endpoint_prob(n, k)


@pytest.mark.parametrize("n", range(1, 40))
def test_printed_explicit_form_misses_boundary_term(n):
    for k in range(1, n + 1):
        gap = variance_exact(n, k) - literal_explicit_form(n, k)
        assert gap == k * k * endpoint_prob(n, k)
        assert (gap == 0) == ((n - k) % 2 == 1)


@pytest.mark.parametrize("n", [1, 2, 7, 8, 23, 40])
def test_telescoping(n):
    for k in range(n):
        assert gain_increment(n, k) == 0
        assert net_gain(n, k + 1) - net_gain(n, k) == 0


@pytest.mark.parametrize("n", range(1, 41))
def test_variance_monotone_in_k(n):
    # checked against the brute-force oracle for n <= 12 above
    vs = [variance_exact(n, k) for k in range(n + 1)]
    assert all(a <= b for a, b in zip(vs, vs[1:]))


@given(n=st.integers(1, 40), data=st.data())
@settings(max_examples=60, deadline=None)
def test_distribution_moments(n, data):
    k = data.draw(st.integers(1, n))
    law = execution_distribution(n, k)
    assert law.mean() == 0
    assert law.moment(2) == variance_exact(n, k)


def test_logspace_engine_close_to_exact():
    for n, k in [(30, 1), (64, 10), (64, 64)]:
        a = execution_stats(n, k, "exact")
        b = execution_stats(n, k, "logspace")
        assert b.engine == "logspace"
        assert b.variance == pytest.approx(float(a.variance), rel=1e-11)
        assert b.fill_probability == pytest.approx(float(a.fill_probability), rel=1e-11)
        assert abs(b.mean_gain) < 1e-12 * n


def test_long_tree_uses_logspace():
    s = execution_stats(5000, 3)
    assert s.engine == "logspace"
    assert abs(s.mean_gain) < 1e-9
    assert 0 < s.fill_probability < 1


def test_rejects_bad_scenarios():
    for f in (avg_cost_no_touch, avg_cost_touch, net_gain, variance_exact, fill_prob_exact):
        with pytest.raises(ValueError):
            f(3, 4)
        with pytest.raises(ValueError):
            f(0, 0)
