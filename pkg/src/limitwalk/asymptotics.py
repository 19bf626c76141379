"""Large-tree approximations: variance in ``k``, time scaling, erf fill probabilities."""

from __future__ import annotations

import math
from dataclasses import dataclass
from decimal import Decimal, localcontext
from typing import Iterable

import numpy as np

SQRT_2PI = math.sqrt(2.0 * math.pi)

_PI_50 = Decimal("3.14159265358979323846264338327950288419716939937510")


@dataclass(frozen=True, slots=True)
class TimeScaling:
    """Price volatility over a sample time ``T`` and a horizon ``t = tau * T``.

    ``sigma_T`` is in absolute price units, as are the ``k_abs`` distances
    passed to :meth:`fill_prob` and :meth:`execution_stdev`.
    """

    sigma_T: float
    tau: float = 1.0
    sample_time: float = 1.0

    def __post_init__(self) -> None:
        if not self.sigma_T > 0:
            raise ValueError(f"sigma_T must be positive, got {self.sigma_T!r}")
        if not self.tau > 0:
            raise ValueError(f"tau must be positive, got {self.tau!r}")

    @classmethod
    def from_tree(cls, n: int, tau: float = 1.0, sample_time: float = 1.0) -> TimeScaling:
        if n < 1:
            raise ValueError("n must be positive")
        return cls(sigma_T=math.sqrt(n), tau=tau, sample_time=sample_time)

    @property
    def horizon(self) -> float:
        return self.tau * self.sample_time

    @property
    def sigma_horizon(self) -> float:
        """Price standard deviation over the horizon; the tree length scales with ``tau``."""
        return self.sigma_T * math.sqrt(self.tau)

    def fill_prob(self, k_abs: float) -> float:
        return fill_prob_time(k_abs, self.sigma_T, self.tau)

    def execution_stdev(self, k_abs: float) -> float:
        return execution_stdev_approx(k_abs, self.sigma_horizon)


def variance_approx(n: int, k: float, clamp: bool = True) -> float:
    """Leading-order variance ``4k sqrt(n / 2pi) - k^2``, capped at ``n``.

    With ``clamp`` (the default) the result is also floored at 0, and any
    ``k >= n`` returns ``n`` since such a limit is never reached. With
    ``clamp=False`` only ``min(formula, n)`` is applied, which turns negative
    once ``k`` passes ``4 sqrt(n / 2pi)``.
    """
    if n < 1:
        raise ValueError("n must be positive")
    if k < 0:
        raise ValueError("k must be non-negative")
    raw = min(4.0 * k * math.sqrt(n / (2.0 * math.pi)) - k * k, float(n))
    if not clamp:
        return raw
    if k >= n:
        return float(n)
    return max(raw, 0.0)


def execution_stdev_approx(k_abs: float, sigma_T: float) -> float:
    """Standard deviation of execution outcomes for a limit ``k_abs`` away."""
    if k_abs < 0:
        raise ValueError("k_abs must be non-negative")
    if not sigma_T > 0:
        raise ValueError("sigma_T must be positive")
    return math.sqrt(4.0 * k_abs * sigma_T / SQRT_2PI)


def fill_prob_asymptotic(k: float, n: int) -> float:
    """``1 - erf(k / sqrt(2n))``: the erf limit of the exact fill probability."""
    if n < 1:
        raise ValueError("n must be positive")
    if k < 0:
        raise ValueError("k must be non-negative")
    return math.erfc(k / math.sqrt(2.0 * n))


def fill_prob_time(k_abs: float, sigma_T: float, tau: float = 1.0) -> float:
    """Fill probability after ``tau`` sample times, ``1 - erf(k / (sigma sqrt(2 tau)))``."""
    if not sigma_T > 0:
        raise ValueError(f"sigma_T must be positive, got {sigma_T!r}")
    if not tau > 0:
        raise ValueError(f"tau must be positive, got {tau!r}")
    if k_abs < 0:
        raise ValueError("k_abs must be non-negative")
    if math.isinf(tau):
        return 1.0
    return math.erfc(k_abs / (sigma_T * math.sqrt(2.0 * tau)))


def risk_time_exponent(k_abs: float, taus: Iterable[float], sigma_T: float = 1.0) -> float:
    """Log-log slope of the execution standard deviation against order time."""
    taus = sorted(set(float(t) for t in taus))
    if len(taus) < 3:
        raise ValueError("need at least 3 distinct time ratios")
    if k_abs <= 0:
        raise ValueError("k_abs must be positive")
    stdevs = [TimeScaling(sigma_T, tau).execution_stdev(k_abs) for tau in taus]
    slope, _ = np.polyfit(np.log(taus), np.log(stdevs), 1)
    return float(slope)


def erf_series(x: float, digits: int = 40) -> float:
    """erf from its Maclaurin series in ``decimal`` arithmetic.

    Slow; meant as an independent reference for ``math.erf``. Valid for
    ``|x| <= 6`` at the default precision.
    """
    if abs(x) > 6:
        raise ValueError("series reference is limited to |x| <= 6")
    with localcontext() as ctx:
        ctx.prec = digits + 20
        xd = Decimal(x)
        x2 = xd * xd
        term = xd
        total = xd
        m = 0
        eps = Decimal(10) ** -(digits + 10)
        while True:
            m += 1
            term = -term * x2 / m
            contrib = term / (2 * m + 1)
            total += contrib
            if abs(contrib) < eps:
                break
        result = 2 * total / _PI_50.sqrt()
    return float(result)
