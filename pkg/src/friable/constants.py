"""Named constants and integrals of rho computed from a table.

The Golomb-Dickman constant is ``int_0^inf rho(u)/(1+u)**2 du`` and the total
mass ``int_0^inf rho(u) du`` equals ``exp(EULER_GAMMA)``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

from .dickman import RhoTable, _march
from .errors import RangeRefusal
from .quadrature import composite_simpson

EULER_GAMMA = 0.57721566490153286061
STIELTJES_GAMMA1 = -0.07281584548367672486
GOLOMB_DICKMAN = 0.62432998854355087099

__all__ = [
    "EULER_GAMMA",
    "STIELTJES_GAMMA1",
    "GOLOMB_DICKMAN",
    "QuadratureResult",
    "table_integral",
    "factorial_tail",
    "golomb_dickman",
    "rho_mass",
]


@dataclass(frozen=True)
class QuadratureResult:
    value: float
    abs_error_bound: float
    tail_bound: float
    panels: int


def table_integral(table: RhoTable, weight: Callable[[np.ndarray], np.ndarray] | None = None,
                   lo: float = 0.0, hi: float | None = None) -> float:
    """Composite Simpson of ``rho * weight`` between two grid nodes."""
    return _grid_integral(table.values, table.per_unit, weight, lo,
                          table.u_max if hi is None else hi)


def _grid_integral(values, n, weight, lo, hi):
    i0 = int(round(lo * n))
    i1 = int(round(hi * n))
    if abs(i0 - lo * n) > 1e-9 or abs(i1 - hi * n) > 1e-9:
        raise ValueError("integration limits must be grid nodes")
    y = np.asarray(values[i0:i1 + 1], dtype=float)
    if weight is not None:
        y = y * weight(np.arange(i0, i1 + 1) / n)
    return composite_simpson(y, 1.0 / n)


def factorial_tail(u: float) -> float:
    """Upper bound ``sum_{k >= floor(u)} 1/k!`` for ``int_u^inf rho``."""
    k = int(math.floor(u))
    total = 0.0
    term = 1.0 / math.factorial(k)
    while term > 0 and term > 1e-20 * total:
        total += term
        k += 1
        term /= k
    return total


def _require_even(table: RhoTable) -> int:
    n = table.per_unit
    if n % 2:
        raise ValueError("grid integrals need an even number of nodes per unit")
    return n


def _gd_weight(u):
    return 1.0 / (1.0 + u) ** 2


def _with_error(table: RhoTable, weight) -> tuple[float, float]:
    """Integral on the table grid plus a Richardson estimate of its error.

    The dominant error is the O(h**2) march error, so the same integral on the
    grid with step 2h gives ``err(h) ~ (I(h) - I(2h)) / 3``; a factor 2 is kept
    as margin.
    """
    n = _require_even(table)
    fine = _grid_integral(table.values, n, weight, 0.0, table.u_max)
    coarse_vals, _ = _march(n // 2, table.u_max)
    coarse = _grid_integral(coarse_vals, n // 2, weight, 0.0, table.u_max)
    return fine, 2.0 * abs(fine - coarse) / 3.0


def golomb_dickman(table: RhoTable, tol: float = 1e-8) -> QuadratureResult:
    """Golomb-Dickman constant from the table with an honest error budget.

    Raises :class:`RangeRefusal` if the estimated discretisation error plus
    the factorial tail bound exceeds ``tol``.
    """
    if table.u_max < 20:
        raise ValueError(f"table must reach u = 20, got u_max={table.u_max}")
    if tol < 1e-10:
        raise ValueError(f"tol must be at least 1e-10, got {tol!r}")
    value, err = _with_error(table, _gd_weight)
    tail = factorial_tail(table.u_max)
    if err + tail > tol:
        raise RangeRefusal(
            f"tol={tol:g} not achievable at step 1/{table.per_unit}: "
            f"estimated error {err:.2e}, tail {tail:.2e}")
    return QuadratureResult(value=value, abs_error_bound=err, tail_bound=tail,
                            panels=len(table.values) - 1)


def rho_mass(table: RhoTable) -> QuadratureResult:
    """``int_0^inf rho``; should equal ``exp(EULER_GAMMA)``."""
    if table.u_max < 20:
        raise ValueError(f"table must reach u = 20, got u_max={table.u_max}")
    value, err = _with_error(table, None)
    return QuadratureResult(value=value, abs_error_bound=err,
                            tail_bound=factorial_tail(table.u_max),
                            panels=len(table.values) - 1)
