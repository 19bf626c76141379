"""Endpoint, touch and no-touch probabilities of a symmetric walk on a binary tree.

Prices are integer tick offsets from the start level. A walk of length ``n``
ends at ``r`` with ``|r| <= n`` and ``r = n (mod 2)``; every other ``r`` gets
probability exactly zero so that callers can sum over plain integer ranges.

Two engines are available:

``exact``
    ``fractions.Fraction`` values with denominator ``2**n``. Bit-reproducible.
``logspace``
    float64 values built from ``math.lgamma``. Used for long trees where
    arbitrary-precision numerators stop being worth their cost.

``engine="auto"`` picks ``exact`` up to :data:`EXACT_MAX_N` steps.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Dict, Sequence, Union

Number = Union[Fraction, float]

EXACT_MAX_N = 2000
ENGINES = ("exact", "logspace")


@dataclass(frozen=True, slots=True)
class Scenario:
    """Tree length ``n`` and limit distance ``k`` (the limit rests at ``-k``)."""

    n: int
    k: int

    def __post_init__(self) -> None:
        check_scenario(self.n, self.k)

    @property
    def critical_r(self) -> int:
        return critical_r(self.n, self.k)

    def reachable(self) -> range:
        return reachable_levels(self.n)


def check_scenario(n: int, k: int) -> None:
    if not isinstance(n, int) or n < 1:
        raise ValueError(f"n must be a positive integer, got {n!r}")
    if not isinstance(k, int) or k < 0 or k > n:
        raise ValueError(f"k must be an integer in [0, n={n}], got {k!r}")


def _check_n(n: int) -> None:
    if not isinstance(n, int) or n < 1:
        raise ValueError(f"n must be a positive integer, got {n!r}")


def resolve_engine(n: int, engine: str = "auto") -> str:
    if engine == "auto":
        return "exact" if n <= EXACT_MAX_N else "logspace"
    if engine not in ENGINES:
        raise ValueError(f"unknown engine {engine!r}; expected one of {ENGINES} or 'auto'")
    return engine


def reachable_levels(n: int) -> range:
    """Final levels a walk of length ``n`` can end on, in increasing order."""
    return range(-n, n + 1, 2)


def binom(n: int, m: int) -> int:
    """C(n, m), with 0 for ``m < 0`` or ``m > n``."""
    if m < 0 or m > n:
        return 0
    return math.comb(n, m)


@lru_cache(maxsize=64)
def _binom_row(n: int) -> tuple:
    row = [1] * (n + 1)
    for m in range(1, n + 1):
        row[m] = row[m - 1] * (n - m + 1) // m
    return tuple(row)


@lru_cache(maxsize=64)
def _log_prob_row(n: int) -> tuple:
    lg_n = math.lgamma(n + 1) - n * math.log(2.0)
    row = []
    for m in range(n + 1):
        lp = lg_n - math.lgamma(m + 1) - math.lgamma(n - m + 1)
        row.append(math.exp(lp))
    return tuple(row)


class Kernel:
    """Weights ``w(r)`` proportional to ``P_n(r)`` plus the matching normaliser.

    In the exact engine the weights are the integer binomials and
    :meth:`finish` divides by ``2**n``; in the log-space engine the weights
    already are probabilities. Formulas written against a kernel therefore
    evaluate identically in both engines.
    """

    __slots__ = ("n", "engine", "_row")

    def __init__(self, n: int, engine: str = "auto") -> None:
        _check_n(n)
        self.n = n
        self.engine = resolve_engine(n, engine)
        self._row: Sequence = _binom_row(n) if self.engine == "exact" else _log_prob_row(n)

    def weight(self, r: int):
        n = self.n
        if r < -n or r > n or (n + r) % 2:
            return 0
        return self._row[(n + r) // 2]

    def finish(self, total) -> Number:
        if self.engine == "exact":
            return Fraction(total, 2**self.n)
        return float(total)


def endpoint_prob(n: int, r: int, engine: str = "auto") -> Number:
    """Probability that the walk ends at level ``r`` after ``n`` steps."""
    kern = Kernel(n, engine)
    return kern.finish(kern.weight(r))


def _check_touch_args(n: int, k: int) -> None:
    _check_n(n)
    if not isinstance(k, int) or k < 1:
        raise ValueError(
            f"touch probabilities need k >= 1, got {k!r}; k = 0 is immediate execution"
        )


def _touch_weight(kern: Kernel, r: int, k: int):
    if r <= -k:
        return kern.weight(r)
    if r <= kern.n - 2 * k:
        # reflect the path after its first visit to -k
        return kern.weight(2 * k + r)
    return 0


def touch_prob(n: int, r: int, k: int, engine: str = "auto") -> Number:
    """Probability of ending at ``r`` after reaching the limit level ``-k``.

    Three regions: below the limit every path has touched it; between the
    limit and ``critical_r`` the reflection principle applies; above
    ``critical_r`` no touching path can get back up in time.
    """
    _check_touch_args(n, k)
    kern = Kernel(n, engine)
    return kern.finish(_touch_weight(kern, r, k))


def no_touch_prob(n: int, r: int, k: int, engine: str = "auto") -> Number:
    """Probability of ending at ``r`` without ever reaching ``-k``."""
    _check_touch_args(n, k)
    kern = Kernel(n, engine)
    return kern.finish(kern.weight(r) - _touch_weight(kern, r, k))


def critical_r(n: int, k: int) -> int:
    """Largest endpoint from which the limit level ``-k`` could still have been touched."""
    check_scenario(n, k)
    return n - 2 * k


@dataclass(frozen=True)
class ExecutionDistribution:
    """Law of the execution price of the rest-then-cross strategy.

    ``passive_mass`` sits at price ``-k``; ``cleanup`` maps each final level
    ``r > -k`` to the probability of crossing the spread there.
    """

    n: int
    k: int
    passive_mass: Number
    cleanup: Dict[int, Number] = field(default_factory=dict)
    engine: str = "exact"

    def atoms(self) -> Dict[int, Number]:
        out = {-self.k: self.passive_mass}
        for r, p in self.cleanup.items():
            if p:
                out[r] = out.get(r, 0) + p
        return dict(sorted(out.items()))

    def total(self) -> Number:
        return self.passive_mass + sum(self.cleanup.values())

    def moment(self, order: int) -> Number:
        return sum(price**order * p for price, p in self.atoms().items())

    def mean(self) -> Number:
        return self.moment(1)

    def variance(self) -> Number:
        m = self.mean()
        return self.moment(2) - m * m


def execution_distribution(n: int, k: int, engine: str = "auto") -> ExecutionDistribution:
    check_scenario(n, k)
    if k == 0:
        raise ValueError("k must be >= 1; k = 0 executes immediately at price 0")
    kern = Kernel(n, engine)
    cleanup = {}
    touched = 0
    for r in reachable_levels(n):
        w = kern.weight(r)
        t = _touch_weight(kern, r, k)
        touched += t
        if r > -k:
            cleanup[r] = kern.finish(w - t)
    return ExecutionDistribution(
        n=n, k=k, passive_mass=kern.finish(touched), cleanup=cleanup, engine=kern.engine
    )
