"""Monte Carlo check of Chamayou's representation.

With ``x_1, x_2, ...`` independent and uniform on (0, 1), the series
``x_1 + x_1 x_2 + x_1 x_2 x_3 + ...`` converges to a variable with density
``exp(-gamma) * rho(t)``.  Sample ``j`` of a run with seed ``s`` draws from
child stream ``j`` of ``SplitMix64(s)``, so results do not depend on how the
samples are split across workers.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np
from scipy import stats

from .constants import EULER_GAMMA
from .dickman import RhoTable, rho
from .quadrature import adaptive_simpson
from .rng import child_keys, uniform_array

BLOCK = 1 << 16

__all__ = [
    "McHistogram",
    "chamayou_sample",
    "sample_block",
    "chamayou_histogram",
    "expected_masses",
    "chi_square",
    "histogram_csv",
]


@dataclass(frozen=True)
class McHistogram:
    bin_edges: np.ndarray = field(repr=False)
    counts: np.ndarray = field(repr=False)
    n_samples: int
    truncation_eps: float


def chamayou_sample(stream, eps: float = 1e-6) -> float:
    """One truncated draw of the series.

    ``stream`` is anything with a ``random()`` method.  Terms are added until
    the running product falls below ``eps``; that last term is included.
    """
    if not 0 < eps <= 1e-6:
        raise ValueError(f"eps must be in (0, 1e-6], got {eps!r}")
    total = 0.0
    prod = 1.0
    while True:
        prod *= stream.random()
        total += prod
        if prod < eps:
            return total


def sample_block(seed: int, start: int, count: int, eps: float = 1e-6) -> np.ndarray:
    """Samples ``start .. start+count-1`` of the run keyed by ``seed``.

    Equal, bit for bit, to ``chamayou_sample(SplitMix64(seed).child(j), eps)``.
    """
    keys = child_keys(seed, start, count)
    total = np.zeros(count)
    prod = np.ones(count)
    active = np.arange(count)
    draw = 0
    while active.size:
        prod[active] *= uniform_array(keys[active], draw)
        total[active] += prod[active]
        active = active[prod[active] >= eps]
        draw += 1
    return total


def chamayou_histogram(n_samples: int, bins: int = 30, t_max: float = 3.0, seed: int = 0,
                       eps: float = 1e-6, workers: int = 1) -> McHistogram:
    """Histogram of ``n_samples`` draws on ``bins`` equal bins over ``[0, t_max]``.

    Draws above ``t_max`` are dropped.
    """
    if n_samples < 10**4:
        raise ValueError("need at least 1e4 samples")
    if bins < 10:
        raise ValueError("need at least 10 bins")
    if t_max < 3:
        raise ValueError("t_max must be at least 3")
    if not 0 < eps <= 1e-6:
        raise ValueError(f"eps must be in (0, 1e-6], got {eps!r}")
    edges = np.linspace(0.0, t_max, bins + 1)
    starts = range(0, n_samples, BLOCK)

    def run(start):
        block = sample_block(seed, start, min(BLOCK, n_samples - start), eps)
        return np.histogram(block, bins=edges)[0]

    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            parts = list(pool.map(run, starts))
    else:
        parts = [run(s) for s in starts]
    counts = np.sum(parts, axis=0, dtype=np.int64)
    return McHistogram(bin_edges=edges, counts=counts, n_samples=n_samples,
                       truncation_eps=eps)


def expected_masses(hist: McHistogram, table: RhoTable, tol: float = 1e-10) -> np.ndarray:
    """Probability of each bin under density ``exp(-gamma) rho``."""
    scale = math.exp(-EULER_GAMMA)
    edges = hist.bin_edges
    masses = []
    for lo, hi in zip(edges[:-1], edges[1:]):
        # split at the kinks of rho so each piece is smooth
        cuts = [float(lo)] + [k for k in (1.0, 2.0) if lo < k < hi] + [float(hi)]
        total = sum(adaptive_simpson(lambda t: rho(table, t), a, b, tol)[0]
                    for a, b in zip(cuts[:-1], cuts[1:]))
        masses.append(scale * total)
    return np.array(masses)


def chi_square(hist: McHistogram, table: RhoTable) -> tuple[float, int, float]:
    """Pearson statistic over the bins plus one overflow cell; returns (stat, dof, p)."""
    p = expected_masses(hist, table)
    p = np.append(p, max(0.0, 1.0 - p.sum()))
    observed = np.append(hist.counts, hist.n_samples - hist.counts.sum()).astype(float)
    expected = hist.n_samples * p
    stat = float(np.sum((observed - expected) ** 2 / expected))
    dof = len(observed) - 1
    return stat, dof, float(stats.chi2.sf(stat, dof))


def histogram_csv(hist: McHistogram, table: RhoTable) -> str:
    """``bin_lo,bin_hi,count,expected,stderr`` with binomial expected count and stderr."""
    p = expected_masses(hist, table)
    n = hist.n_samples
    lines = ["bin_lo,bin_hi,count,expected,stderr"]
    for lo, hi, c, pi in zip(hist.bin_edges[:-1], hist.bin_edges[1:], hist.counts, p):
        lines.append(f"{lo:.6g},{hi:.6g},{int(c)},{n * pi:.6f},{math.sqrt(n * pi * (1 - pi)):.6f}")
    return "\n".join(lines) + "\n"

