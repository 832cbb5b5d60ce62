"""Exact counts of y-friable integers.

Two independent routes: a segmented largest-prime-factor sieve over ``[1, x]``
and a depth-first count of exponent vectors ``(e_1, ..., e_k)`` with
``sum e_i log p_i <= log x``.  ``P(1) = 1``, so ``n = 1`` is in every count.
"""

from __future__ import annotations

import enum
import json
import math
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Callable, Iterator

import numpy as np

from .errors import RangeRefusal

PRIME_CAP = 10**9
SIEVE_CAP = 10**8
LATTICE_MAX_Y = 100
BLOCK = 1 << 20

__all__ = [
    "Method",
    "PrimeList",
    "FriableCountResult",
    "sieve_primes",
    "largest_prime_factors",
    "psi_sieve",
    "psi_lattice",
    "psi_congruence",
    "buchstab_check",
    "mean_log_largest_prime",
]


class Method(enum.Enum):
    Sieve = "sieve"
    Lattice = "lattice"


@dataclass(frozen=True)
class PrimeList:
    limit: int
    primes: np.ndarray = field(repr=False)

    def __len__(self) -> int:
        return len(self.primes)


@dataclass(frozen=True)
class FriableCountResult:
    x: int | None
    y: int
    count: int
    method: Method
    elapsed: float
    log_x: float | None = None

    def as_record(self) -> dict:
        return {
            "x": self.x,
            "y": self.y,
            "count": self.count,
            "method": self.method.value,
            "elapsed_ms": round(self.elapsed * 1000.0, 3),
        }

    def to_json(self) -> str:
        return json.dumps(self.as_record())

    def to_line(self) -> str:
        return f"{self.x} {self.y} {self.count}"


def _small_primes(limit: int) -> np.ndarray:
    if limit < 2:
        return np.zeros(0, dtype=np.int64)
    is_prime = np.ones(limit + 1, dtype=bool)
    is_prime[:2] = False
    for p in range(2, math.isqrt(limit) + 1):
        if is_prime[p]:
            is_prime[p * p::p] = False
    return np.flatnonzero(is_prime).astype(np.int64)


def sieve_primes(limit: int, cap: int = PRIME_CAP) -> PrimeList:
    """All primes ``<= limit`` in ascending order (segmented Eratosthenes)."""
    limit = int(limit)
    if limit < 2:
        raise ValueError(f"limit must be at least 2, got {limit}")
    if limit > cap:
        raise RangeRefusal(f"limit {limit} above cap {cap}")
    root = math.isqrt(limit)
    base = _small_primes(root)
    chunks = [base]
    lo = root + 1
    while lo <= limit:
        hi = min(lo + BLOCK, limit + 1)
        mask = np.ones(hi - lo, dtype=bool)
        for p in base.tolist():
            start = max(p * p, -(-lo // p) * p)
            if start >= hi:
                continue
            mask[start - lo::p] = False
        chunks.append(np.flatnonzero(mask).astype(np.int64) + lo)
        lo = hi
    return PrimeList(limit=limit, primes=np.concatenate(chunks))


def _lpf_block(lo: int, hi: int, base: list[int]) -> np.ndarray:
    """Largest prime factor of every n in ``[lo, hi)`` (``lo >= 1``).

    Primes up to sqrt(hi) are divided out; a cofactor above 1 is then a prime
    larger than all of them.
    """
    rem = np.arange(lo, hi, dtype=np.int64)
    out = np.ones(hi - lo, dtype=np.int64)
    top = hi - 1
    for p in base:
        if p * p > top:
            break
        first = (-lo) % p
        out[first::p] = p
        q = p
        while q <= top:
            rem[(-lo) % q::q] //= p
            q *= p
    big = rem > 1
    out[big] = rem[big]
    return out


def _segments(x: int, block: int) -> list[tuple[int, int]]:
    return [(lo, min(lo + block, x + 1)) for lo in range(1, x + 1, block)]


def _reduce_segments(x: int, fn: Callable[[int, int, np.ndarray], float],
                     workers: int = 1, block: int = BLOCK) -> list:
    base = _small_primes(math.isqrt(x)).tolist()

    def run(seg):
        lo, hi = seg
        return fn(lo, hi, _lpf_block(lo, hi, base))

    segs = _segments(x, block)
    if workers > 1 and len(segs) > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            return list(pool.map(run, segs))
    return [run(s) for s in segs]


def _check_x(x: int, cap: int) -> int:
    x = int(x)
    if x < 1:
        raise ValueError(f"x must be at least 1, got {x}")
    if x > cap:
        raise RangeRefusal(f"x={x} above sieve cap {cap}")
    return x


def largest_prime_factors(x: int, cap: int = SIEVE_CAP) -> np.ndarray:
    """Array ``P`` with ``P[n]`` the largest prime factor of ``n`` for ``0 < n <= x``.

    ``P[0]`` is 0 and ``P[1]`` is 1.
    """
    x = _check_x(x, cap)
    parts = _reduce_segments(x, lambda lo, hi, P: P)
    return np.concatenate([np.zeros(1, dtype=np.int64)] + parts)


def iter_largest_prime_factors(x: int, block: int = BLOCK) -> Iterator[tuple[int, np.ndarray]]:
    """Yield ``(lo, P)`` blocks covering ``[1, x]`` without holding them all."""
    base = _small_primes(math.isqrt(x)).tolist()
    for lo, hi in _segments(x, block):
        yield lo, _lpf_block(lo, hi, base)


def psi_sieve(x: int, y: int, workers: int = 1, cap: int = SIEVE_CAP) -> FriableCountResult:
    """Psi(x, y) by the segmented largest-prime-factor sieve."""
    x = _check_x(x, cap)
    y = int(y)
    if y < 1:
        raise ValueError(f"y must be at least 1, got {y}")
    t0 = time.perf_counter()
    if y >= x:
        count = x
    else:
        parts = _reduce_segments(x, lambda lo, hi, P: int(np.count_nonzero(P <= y)), workers)
        count = sum(parts)
    return FriableCountResult(x=x, y=y, count=count, method=Method.Sieve,
                              elapsed=time.perf_counter() - t0)


def psi_congruence(x: int, y: int, m: int, l: int, workers: int = 1,
                   cap: int = SIEVE_CAP) -> int:
    """Count ``n <= x`` with ``P(n) <= y`` and ``n = l (mod m)``."""
    x = _check_x(x, cap)
    y, m, l = int(y), int(m), int(l)
    if y < 1:
        raise ValueError(f"y must be at least 1, got {y}")
    if m < 1 or not 0 <= l < m:
        raise ValueError(f"need m >= 1 and 0 <= l < m, got m={m}, l={l}")

    def count(lo, hi, P):
        n = np.arange(lo, hi, dtype=np.int64)
        return int(np.count_nonzero((P <= y) & (n % m == l)))

    return sum(_reduce_segments(x, count, workers))


def psi_lattice(log_x: float, y: int, max_y: int = LATTICE_MAX_Y) -> FriableCountResult:
    """Psi(e**log_x, y) by counting exponent vectors under the log budget.

    Only ``log x`` enters, so ``x`` may be astronomically large.  A relative
    slack of 1e-12 absorbs rounding when ``x`` is itself y-friable; this is
    exact while ``1/x`` exceeds the slack, i.e. for ``x`` up to about 1e10.
    """
    y = int(y)
    if y > max_y:
        raise RangeRefusal(f"lattice count limited to y <= {max_y}, got {y}")
    if y < 1:
        raise ValueError(f"y must be at least 1, got {y}")
    if log_x < 0:
        raise ValueError(f"log_x must be non-negative, got {log_x!r}")
    t0 = time.perf_counter()
    slack = 1e-12 * max(1.0, log_x)
    logs = [math.log(p) for p in reversed(_small_primes(y).tolist())]

    def walk(i: int, budget: float) -> int:
        step = logs[i]
        if i == len(logs) - 1:
            return int(math.floor((budget + slack) / step)) + 1
        total = 0
        while budget >= -slack:
            total += walk(i + 1, budget)
            budget -= step
        return total

    count = walk(0, log_x) if logs else 1
    # only report x when the double exp(log_x) pins down the integer
    x = int(round(math.exp(log_x))) if log_x < 36 else None
    return FriableCountResult(x=x, y=y, count=count, method=Method.Lattice,
                              elapsed=time.perf_counter() - t0, log_x=log_x)


def buchstab_check(x: int, y: int, z: int) -> int:
    """Residual of Buchstab's identity; exactly 0 when the counts are right.

    ``Psi(x/p, p)`` is taken at ``floor(x/p)`` since Psi is a step function.
    """
    x, y, z = int(x), int(y), int(z)
    if not 1 <= y < z <= x:
        raise ValueError(f"need 1 <= y < z <= x, got x={x}, y={y}, z={z}")
    residual = psi_sieve(x, y).count - psi_sieve(x, z).count
    primes = _small_primes(z)
    for p in primes[primes > y].tolist():
        residual += psi_sieve(x // p, p).count
    return residual


def mean_log_largest_prime(x: int, cap: int = SIEVE_CAP) -> float:
    """``(1/x) * sum_{2 <= n <= x} log P(n) / log n``."""
    x = _check_x(x, cap)
    if x < 2:
        raise ValueError(f"x must be at least 2, got {x}")

    def part(lo, hi, P):
        n = np.arange(lo, hi, dtype=np.float64)
        keep = n >= 2
        return float(np.sum(np.log(P[keep]) / np.log(n[keep])))

    return math.fsum(_reduce_segments(x, part)) / x
