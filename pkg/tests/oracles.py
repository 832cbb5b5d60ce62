"""Independent reference computations used by the tests.

Nothing here imports the package: each oracle is a deliberately naive,
separately derived route to a number the library also computes.
"""

from __future__ import annotations

import math
from fractions import Fraction


def largest_prime_factor(n: int) -> int:
    """P(n) by trial division, with P(1) = 1."""
    largest = 1
    p = 2
    while p * p <= n:
        while n % p == 0:
            largest = p
            n //= p
        p += 1
    return max(largest, n) if n > 1 else largest


def brute_psi(x: int, y: int) -> int:
    return sum(1 for n in range(1, x + 1) if largest_prime_factor(n) <= y)


def brute_psi_table(x_max: int) -> list[int]:
    """``P(n)`` for ``0 <= n <= x_max`` by trial division (``P(0)`` unused)."""
    return [0] + [largest_prime_factor(n) for n in range(1, x_max + 1)]


def primes_upto(n: int) -> list[int]:
    return [p for p in range(2, n + 1) if all(p % q for q in range(2, math.isqrt(p) + 1))]


def smooth_numbers(x: int, primes: list[int]) -> list[int]:
    """All n <= x whose prime factors lie in ``primes``, by generating products."""
    out = [1]
    for p in primes:
        grown = []
        for n in out:
            m = n
            while m <= x:
                grown.append(m)
                m *= p
        out = grown
    return sorted(out)


def euler_gamma_oracle(n: int = 10**6) -> float:
    """H_n - log n with two Euler-Maclaurin corrections, then Richardson in n.

    ``H_n - log n - gamma = 1/(2n) - 1/(12 n^2) + 1/(120 n^4) - ...``.  The raw
    differences at n and 2n are combined to cancel the 1/(2n) term and the
    remainder is corrected explicitly.
    """
    def raw(m):
        return math.fsum(1.0 / k for k in range(1, m + 1)) - math.log(m)

    a, b = raw(n), raw(2 * n)
    # a - g ~ 1/(2n) - 1/(12n^2),  b - g ~ 1/(4n) - 1/(48n^2)
    g = 2.0 * b - a
    # 2b - a - g = -2/(48 n^2) + 1/(12 n^2) = 1/(24 n^2)
    return g - 1.0 / (24.0 * n * n)


def stieltjes_gamma1_oracle(n: int = 10**5) -> float:
    """sum_{k<=n} log(k)/k - log(n)^2/2 with Euler-Maclaurin tail terms.

    For f(t) = log(t)/t the remainder is
    ``-f(n)/2 + f'(n)/12 - f'''(n)/720 + ...`` with
    ``f'(t) = (1 - log t)/t^2`` and ``f'''(t) = (11 - 6 log t)/t^4``; the sum
    minus these terms is gamma_1 up to ``O(n**-6)``.
    """
    s = math.fsum(math.log(k) / k for k in range(2, n + 1))
    ln = math.log(n)
    f = ln / n
    f1 = (1.0 - ln) / n ** 2
    f3 = (11.0 - 6.0 * ln) / n ** 4
    return s - ln * ln / 2.0 - f / 2.0 - f1 / 12.0 + f3 / 720.0


def series_product(a: list[Fraction], b: list[Fraction], m: int) -> list[Fraction]:
    return [sum(a[j] * b[r - j] for j in range(r + 1)) for r in range(m + 1)]
