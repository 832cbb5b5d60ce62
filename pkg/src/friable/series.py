"""Two series for rho built from nested one-dimensional integrals.

Ramanujan's form sums ``(-1)**k / k! * I_k(u)`` where ``I_k`` integrates
``dt_1/t_1 ... dt_k/t_k`` over ``t_i >= 1, t_1 + ... + t_k <= u``.  Buchstab's
form nests the same integrand with limits ``n, n-1, ..., 1`` and upper limits
shifted by one at each level.  They are rearrangements of one expansion and
serve as independent checks on the tabulated solution.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .quadrature import adaptive_simpson

__all__ = [
    "SeriesTerm",
    "iterated_integral",
    "rho_via_ramanujan",
    "ramanujan_partial_sums",
    "rho_via_buchstab",
]


@dataclass(frozen=True)
class SeriesTerm:
    k: int
    value: float
    abs_error_estimate: float


def _iterated(k: int, u: float, tol: float) -> tuple[float, float]:
    if u < k:
        return 0.0, 0.0
    if k == 0:
        return 1.0, 0.0
    if k == 1:
        return math.log(u), 0.0
    upper = u - (k - 1)
    # inner error is amplified by at most the integral of 1/t, i.e. log(upper)
    spread = max(1.0, math.log(upper))
    inner_tol = 0.5 * tol / spread

    def integrand(t: float) -> float:
        return _iterated(k - 1, u - t, inner_tol)[0] / t

    value, err = adaptive_simpson(integrand, 1.0, upper, 0.5 * tol)
    return value, err + inner_tol * math.log(upper)


def iterated_integral(k: int, u: float, tol: float = 1e-10) -> SeriesTerm:
    """``I_k(u)`` by recursive reduction ``I_k(u) = int_1^{u-k+1} I_{k-1}(u-t) dt/t``.

    Exactly zero when ``u < k``.
    """
    if k < 0:
        raise ValueError(f"k must be non-negative, got {k!r}")
    if not tol > 0:
        raise ValueError(f"tol must be positive, got {tol!r}")
    if u < 0:
        raise ValueError(f"u must be non-negative, got {u!r}")
    value, err = _iterated(k, u, tol)
    return SeriesTerm(k=k, value=value, abs_error_estimate=err)


def ramanujan_partial_sums(u: float, tol: float = 1e-8) -> list[float]:
    """Partial sums ``S_0, S_1, ..., S_floor(u)`` of Ramanujan's series."""
    if u < 0:
        raise ValueError(f"u must be non-negative, got {u!r}")
    if not tol > 0:
        raise ValueError(f"tol must be positive, got {tol!r}")
    k_max = int(math.floor(u))
    term_tol = tol / (k_max + 1)
    sums = []
    total = 0.0
    for k in range(k_max + 1):
        term = iterated_integral(k, u, term_tol)
        total += (-1) ** k * term.value / math.factorial(k)
        sums.append(total)
    return sums


def rho_via_ramanujan(u: float, tol: float = 1e-8) -> float:
    """rho(u) from Ramanujan's iterated-integral series (terms with ``k > u`` vanish)."""
    return ramanujan_partial_sums(u, tol)[-1]


def _nested(n: int, depth: int, s: float, tol: float) -> float:
    # depth d integrates t_d from n-d+1 up to s (s is t_{d-1} - 1, or u at d=1)
    lower = n - depth + 1
    if s <= lower:
        return 0.0
    if depth == n:
        return math.log(s)
    spread = max(1.0, math.log(s))
    inner_tol = 0.5 * tol / spread

    def integrand(t: float) -> float:
        return _nested(n, depth + 1, t - 1.0, inner_tol) / t

    return adaptive_simpson(integrand, float(lower), s, 0.5 * tol)[0]


def rho_via_buchstab(u: float, tol: float = 1e-8) -> float:
    """rho(u) from Buchstab's nested-integral formula with ``N = floor(u)`` terms."""
    if u < 1:
        raise ValueError(f"Buchstab's formula needs u >= 1, got {u!r}")
    if not tol > 0:
        raise ValueError(f"tol must be positive, got {tol!r}")
    big_n = int(math.floor(u))
    term_tol = tol / big_n
    total = 1.0
    for n in range(1, big_n + 1):
        total += (-1) ** n * _nested(n, 1, u, term_tol)
    return total
