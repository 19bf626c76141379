"""Expected cost, variance and passive fill probability of a static limit order.

The strategy: a buy limit rests ``k`` ticks below the start price for ``n``
random-walk steps. If the walk reaches ``-k`` the order fills there;
otherwise it crosses the spread at the final level ``r``. The trade outcome
is ``delta(r, k) = -k`` on a touch and ``r`` otherwise.

``cost_*`` values keep the price sign (negative means bought cheaper than the
start); ``mean_gain`` is sign-flipped so positive means profit.

Every formula is written once against :class:`~limitwalk.walk_prob.Kernel`,
so the same code yields exact rationals or log-space floats.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Tuple

from .walk_prob import Kernel, Number, check_scenario


@dataclass(frozen=True)
class ExecutionStats:
    n: int
    k: int
    cost_no_touch: Number
    cost_touch: Number
    mean_gain: Number
    variance: Number
    fill_probability: Number
    engine: str

    FIELDS = ("cost_no_touch", "cost_touch", "mean_gain", "variance", "fill_probability")

    def as_dict(self) -> dict:
        return {name: getattr(self, name) for name in self.FIELDS}


def _kernel(n: int, k: int, engine: str) -> Kernel:
    check_scenario(n, k)
    return Kernel(n, engine)


def _sum(kern: Kernel, lo: int, hi: int, f=lambda r: 1, shift: int = 0):
    """Sum of ``f(r) * w(r + shift)`` over integers ``lo <= r <= hi``."""
    total = 0
    for r in range(lo, hi + 1):
        w = kern.weight(r + shift)
        if w:
            total += f(r) * w
    return total


def avg_cost_no_touch(n: int, k: int, engine: str = "auto") -> Number:
    """Expected clean-up price, restricted to paths that never reached ``-k``."""
    kern = _kernel(n, k, engine)
    ident = lambda r: r
    total = _sum(kern, -k + 1, n, ident) - _sum(kern, -k + 1, n - 2 * k, ident, shift=2 * k)
    return kern.finish(total)


def _touch_weight_total(kern: Kernel, k: int):
    n = kern.n
    return _sum(kern, -n, -k) + _sum(kern, -k + 1, n - 2 * k, shift=2 * k)


def avg_cost_touch(n: int, k: int, engine: str = "auto") -> Number:
    """Expected passive execution price contribution, ``-k`` times the fill probability."""
    kern = _kernel(n, k, engine)
    return kern.finish(-k * _touch_weight_total(kern, k))


def fill_prob_exact(n: int, k: int, engine: str = "auto") -> Number:
    """Probability that the walk reaches ``-k`` within ``n`` steps.

    Computed from the two-sum form (endpoints at or below the limit, plus
    reflected endpoints of touching paths that recover). No parity
    adjustment is made.
    """
    kern = _kernel(n, k, engine)
    return kern.finish(_touch_weight_total(kern, k))


def fill_prob_folded(n: int, k: int, engine: str = "auto") -> Number:
    """Fill probability folded onto the upper tail: ``P(r >= k) + P(r > k)``."""
    kern = _kernel(n, k, engine)
    return kern.finish(_sum(kern, k, n) + _sum(kern, k + 1, n))


def fill_prob_tail(n: int, k: int, engine: str = "auto") -> Number:
    """``2 * P(r > k)``.

    Equals :func:`fill_prob_exact` when ``n`` and ``k`` differ in parity;
    otherwise it undershoots by ``P_n(k)``.
    """
    kern = _kernel(n, k, engine)
    return kern.finish(2 * _sum(kern, k + 1, n))


def net_gain(n: int, k: int, engine: str = "auto") -> Number:
    """Expected profit of resting at ``-k`` versus crossing immediately. Always zero."""
    kern = _kernel(n, k, engine)
    ident = lambda r: r
    no_touch = _sum(kern, -k + 1, n, ident) - _sum(kern, -k + 1, n - 2 * k, ident, shift=2 * k)
    touch = -k * _touch_weight_total(kern, k)
    return -kern.finish(no_touch + touch)


def gain_increment(n: int, k: int, engine: str = "auto") -> Number:
    """Change in expected gain when the limit moves from ``k`` to ``k + 1``.

    Evaluated as the difference of the upper tail beyond ``k`` and the lower
    tail beyond ``-k``; these cancel by symmetry of the endpoint law.
    """
    kern = _kernel(n, k, engine)
    if k >= n:
        raise ValueError("gain_increment needs k < n")
    return kern.finish(_sum(kern, k + 1, n) - _sum(kern, -n, -k - 1))


def variance_components(n: int, k: int, engine: str = "auto") -> Tuple[Number, Number]:
    """Second-moment split ``(no-touch part, touch part)``.

    The touch part is ``k**2`` times the fill probability, i.e. ``-k`` times
    :func:`avg_cost_touch`.
    """
    kern = _kernel(n, k, engine)
    sq = lambda r: r * r
    no_touch = _sum(kern, -k + 1, n, sq) - _sum(kern, -k + 1, n - 2 * k, sq, shift=2 * k)
    touch = k * k * _touch_weight_total(kern, k)
    return kern.finish(no_touch), kern.finish(touch)


def variance_regrouped(n: int, k: int, engine: str = "auto") -> Number:
    """Variance as a single pair of sums with weight ``r**2 + k*r``."""
    kern = _kernel(n, k, engine)
    g = lambda r: r * r + k * r
    return kern.finish(_sum(kern, -k + 1, n, g) - _sum(kern, -k + 1, n - 2 * k, g, shift=2 * k))


def variance_exact(n: int, k: int, engine: str = "auto") -> Number:
    """Variance of the trade outcome in the form explicit in ``k``.

    ``4k sum_{r>k} r P(r) - 2k^2 sum_{r>k} P(r) + sum_{-k<r<=k} r^2 P(r) + k^2 P(k)``.
    The last term is non-zero only when ``n`` and ``k`` share parity; without
    it the expression disagrees with the regrouped and component forms.
    """
    kern = _kernel(n, k, engine)
    linear = _sum(kern, k + 1, n, lambda r: r)
    tail = _sum(kern, k + 1, n)
    core = _sum(kern, -k + 1, k, lambda r: r * r)
    boundary = kern.weight(k) if k else 0
    return kern.finish(4 * k * linear - 2 * k * k * tail + core + k * k * boundary)


def execution_stats(n: int, k: int, engine: str = "auto") -> ExecutionStats:
    kern = _kernel(n, k, engine)
    no_touch = avg_cost_no_touch(n, k, kern.engine)
    touch = avg_cost_touch(n, k, kern.engine)
    return ExecutionStats(
        n=n,
        k=k,
        cost_no_touch=no_touch,
        cost_touch=touch,
        mean_gain=-(no_touch + touch),
        variance=variance_exact(n, k, kern.engine),
        fill_probability=fill_prob_exact(n, k, kern.engine),
        engine=kern.engine,
    )
