"""Independent oracles for the exact engine.

:func:`simulate` draws seeded random walks; :func:`enumerate_stats` walks
every one of the ``2**n`` step sequences. Both apply the same fill rule: the
order fills at ``-k`` the first time the running position reaches ``-k``,
otherwise it crosses at the final level.

Reproducibility: paths are grouped in fixed blocks of :data:`BLOCK_PATHS`.
Block ``b`` draws from a Philox stream keyed by ``(seed, b)``, so path ``i``
always sees the same steps whatever the number of workers. Per-block
statistics are integer power sums, merged in block order, so the report is
bit-identical between serial and parallel runs.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Dict, Tuple

import numpy as np

from .execution_analytics import ExecutionStats
from .walk_prob import check_scenario

BLOCK_PATHS = 1 << 15
ENUMERATION_MAX_N = 24
_ENUM_CHUNK_BITS = 18


class DegenerateOrderError(ValueError):
    """Raised for ``k = 0``: the order fills deterministically at the start price."""


@dataclass(frozen=True)
class McReport:
    n: int
    k: int
    paths: int
    seed: int
    mean_gain_hat: float
    variance_hat: float
    fill_prob_hat: float
    se_mean: float
    se_variance: float
    se_fill: float
    engine: str = "montecarlo"


def _block_rng(seed: int, block: int) -> np.random.Generator:
    return np.random.Generator(np.random.Philox(np.random.SeedSequence([seed, block])))


def sample_positions(n: int, count: int, seed: int, block: int = 0) -> np.ndarray:
    """Running positions, shape ``(count, n)``, for ``count`` paths of block ``block``."""
    rng = _block_rng(seed, block)
    bits = rng.integers(0, 2, size=(count, n), dtype=np.int8)
    steps = 2 * bits - 1
    return np.cumsum(steps, axis=1, dtype=np.int32)


def touches_by_minimum(positions: np.ndarray, k: int) -> np.ndarray:
    """Fill indicator: the running minimum went to ``-k`` or lower."""
    return positions.min(axis=1) <= -k


def touches_exactly(positions: np.ndarray, k: int) -> np.ndarray:
    """Fill indicator: some step lands exactly on ``-k``."""
    return (positions == -k).any(axis=1)


def outcomes(positions: np.ndarray, k: int) -> Tuple[np.ndarray, np.ndarray]:
    """Execution prices and fill flags for a block of paths."""
    filled = touches_by_minimum(positions, k)
    price = np.where(filled, -k, positions[:, -1]).astype(np.int64)
    return price, filled


def _block_sums(n: int, k: int, seed: int, block: int, count: int) -> Tuple[int, ...]:
    price, filled = outcomes(sample_positions(n, count, seed, block), k)
    p2 = price * price
    return (
        int(price.sum()),
        int(p2.sum()),
        int((p2 * price).sum()),
        int((p2 * p2).sum()),
        int(filled.sum()),
    )


def _check_mc_args(n: int, k: int, paths: int, seed: int) -> None:
    check_scenario(n, k)
    if k == 0:
        raise DegenerateOrderError("k = 0 fills immediately at the start price; nothing to simulate")
    if not isinstance(paths, int) or paths < 1:
        raise ValueError(f"paths must be a positive integer, got {paths!r}")
    if not isinstance(seed, int) or not 0 <= seed < 2**64:
        raise ValueError(f"seed must be an unsigned 64-bit integer, got {seed!r}")


def simulate(n: int, k: int, paths: int, seed: int, workers: int = 1) -> McReport:
    """Monte Carlo estimates of gain, outcome variance and fill probability."""
    _check_mc_args(n, k, paths, seed)
    blocks = [
        (b, min(BLOCK_PATHS, paths - b * BLOCK_PATHS))
        for b in range(-(-paths // BLOCK_PATHS))
    ]
    if workers > 1 and len(blocks) > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            parts = list(pool.map(lambda bc: _block_sums(n, k, seed, *bc), blocks))
    else:
        parts = [_block_sums(n, k, seed, b, c) for b, c in blocks]
    s1, s2, s3, s4, fills = (sum(col) for col in zip(*parts))

    N = paths
    mean = Fraction(s1, N)
    m2 = Fraction(s2, N) - mean * mean
    # central fourth moment from raw power sums
    m4 = (
        Fraction(s4, N)
        - 4 * mean * Fraction(s3, N)
        + 6 * mean * mean * Fraction(s2, N)
        - 3 * mean**4
    )
    var_hat = m2 * N / (N - 1) if N > 1 else Fraction(0)
    p_hat = Fraction(fills, N)
    return McReport(
        n=n,
        k=k,
        paths=N,
        seed=seed,
        mean_gain_hat=-float(mean),
        variance_hat=float(var_hat),
        fill_prob_hat=float(p_hat),
        se_mean=math.sqrt(float(var_hat) / N),
        se_variance=math.sqrt(max(float(m4 - m2 * m2), 0.0) / N),
        se_fill=math.sqrt(float(p_hat * (1 - p_hat)) / N),
    )


def simulate_endpoints(n: int, paths: int, seed: int) -> Dict[int, int]:
    """Histogram of final levels of ``paths`` free walks (no order resting)."""
    if n < 1 or paths < 1:
        raise ValueError("n and paths must be positive")
    counts: Dict[int, int] = {}
    for b in range(-(-paths // BLOCK_PATHS)):
        c = min(BLOCK_PATHS, paths - b * BLOCK_PATHS)
        final = sample_positions(n, c, seed, b)[:, -1]
        levels, freq = np.unique(final, return_counts=True)
        for r, f in zip(levels.tolist(), freq.tolist()):
            counts[r] = counts.get(r, 0) + f
    return dict(sorted(counts.items()))


@lru_cache(maxsize=32)
def endpoint_minimum_counts(n: int, max_n: int = ENUMERATION_MAX_N) -> Dict[Tuple[int, int], int]:
    """Number of the ``2**n`` step sequences with each (final level, running minimum).

    The running minimum includes the start level 0.
    """
    if not isinstance(n, int) or n < 1:
        raise ValueError(f"n must be a positive integer, got {n!r}")
    if n > max_n:
        raise ValueError(f"exhaustive enumeration limited to n <= {max_n}, got {n}")
    shifts = np.arange(n, dtype=np.uint32)
    chunk = 1 << min(n, _ENUM_CHUNK_BITS)
    counts: Dict[Tuple[int, int], int] = {}
    for start in range(0, 1 << n, chunk):
        ids = np.arange(start, start + chunk, dtype=np.uint32)
        bits = ((ids[:, None] >> shifts) & 1).astype(np.int8)
        pos = np.cumsum(2 * bits - 1, axis=1, dtype=np.int16)
        final = pos[:, -1].astype(np.int64)
        low = np.minimum(pos.min(axis=1), 0).astype(np.int64)
        # encode (final, low) pairs as one key for a fast unique count
        key = (final + n) * (n + 1) + (-low)
        uniq, freq = np.unique(key, return_counts=True)
        for kk, f in zip(uniq.tolist(), freq.tolist()):
            pair = (kk // (n + 1) - n, -(kk % (n + 1)))
            counts[pair] = counts.get(pair, 0) + f
    return counts


def enumerate_stats(n: int, k: int, max_n: int = ENUMERATION_MAX_N) -> ExecutionStats:
    """Exact :class:`ExecutionStats` by walking every step sequence."""
    check_scenario(n, k)
    total = 1 << n
    if k == 0:
        zero = Fraction(0)
        return ExecutionStats(n, 0, zero, zero, zero, zero, Fraction(1), "enumeration")
    sum_no_touch = 0
    sum_price = 0
    sum_sq = 0
    fills = 0
    for (r, low), c in endpoint_minimum_counts(n, max_n).items():
        if low <= -k:
            fills += c
            price = -k
        else:
            sum_no_touch += r * c
            price = r
        sum_price += price * c
        sum_sq += price * price * c
    mean_price = Fraction(sum_price, total)
    return ExecutionStats(
        n=n,
        k=k,
        cost_no_touch=Fraction(sum_no_touch, total),
        cost_touch=Fraction(-k * fills, total),
        mean_gain=-mean_price,
        variance=Fraction(sum_sq, total) - mean_price * mean_price,
        fill_probability=Fraction(fills, total),
        engine="enumeration",
    )


def enumerate_distribution(n: int, k: int, max_n: int = ENUMERATION_MAX_N) -> Dict[int, Fraction]:
    """Execution-price law from enumeration, as ``{price: probability}``."""
    check_scenario(n, k)
    if k == 0:
        return {0: Fraction(1)}
    total = 1 << n
    law: Dict[int, int] = {}
    for (r, low), c in endpoint_minimum_counts(n, max_n).items():
        price = -k if low <= -k else r
        law[price] = law.get(price, 0) + c
    return {p: Fraction(c, total) for p, c in sorted(law.items())}

