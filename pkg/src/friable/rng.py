"""SplitMix64: a tiny counter-based generator with a fully written-out algorithm.

State is a 64-bit key ``k``.  The j-th output (j = 0, 1, ...) is

    mix(k + (j + 1) * 0x9E3779B97F4A7C15  mod 2**64)

with ``mix`` the SplitMix64 finaliser

    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9
    z = (z ^ (z >> 27)) * 0x94D049BB133111EB
    z = z ^ (z >> 31)

(all mod 2**64).  A uniform double in [0, 1) is ``(out >> 11) * 2**-53``.
Child stream ``i`` of key ``k`` is keyed by the i-th output of ``k``, so any
stream can be split without coordination and any draw can be computed
directly from (key, index).  Because outputs are a pure function of the
counter, the numpy vectorised path below is bit-identical to the scalar one.
"""

from __future__ import annotations

import numpy as np

GOLDEN = 0x9E3779B97F4A7C15
MASK = (1 << 64) - 1
_M1 = 0xBF58476D1CE4E5B9
_M2 = 0x94D049BB133111EB
_UNIT = 2.0 ** -53

__all__ = ["SplitMix64", "mix64", "mix64_array", "uniform_array", "child_keys"]


def mix64(z: int) -> int:
    z &= MASK
    z = ((z ^ (z >> 30)) * _M1) & MASK
    z = ((z ^ (z >> 27)) * _M2) & MASK
    return z ^ (z >> 31)


class SplitMix64:
    """Scalar stream; ``random()`` matches :class:`random.Random` naming."""

    def __init__(self, key: int, counter: int = 0):
        self.key = key & MASK
        self.counter = counter

    def next_u64(self) -> int:
        self.counter += 1
        return mix64(self.key + self.counter * GOLDEN)

    def random(self) -> float:
        return (self.next_u64() >> 11) * _UNIT

    def child(self, index: int) -> "SplitMix64":
        return SplitMix64(mix64(self.key + (index + 1) * GOLDEN))


def mix64_array(z: np.ndarray) -> np.ndarray:
    z = z.astype(np.uint64, copy=True)
    z ^= z >> np.uint64(30)
    z *= np.uint64(_M1)
    z ^= z >> np.uint64(27)
    z *= np.uint64(_M2)
    z ^= z >> np.uint64(31)
    return z


def child_keys(key: int, start: int, count: int) -> np.ndarray:
    """Keys of children ``start .. start+count-1`` of ``key``."""
    idx = np.arange(start + 1, start + count + 1, dtype=np.uint64)
    with np.errstate(over="ignore"):
        return mix64_array(np.uint64(key & MASK) + idx * np.uint64(GOLDEN))


def uniform_array(keys: np.ndarray, draw: int) -> np.ndarray:
    """Draw number ``draw`` (0-based) from each stream in ``keys``."""
    offset = np.uint64(((draw + 1) * GOLDEN) & MASK)
    with np.errstate(over="ignore"):
        out = mix64_array(keys + offset)
    return (out >> np.uint64(11)).astype(np.float64) * _UNIT
