"""Dickman-de Bruijn function: tabulation, interpolation, derivatives and bounds.

The table is produced by marching the Volterra form

    u * rho(u) = integral of rho over [u - 1, u]

with the implicit trapezoid rule on a grid whose step divides 1, so the
delayed node ``u - 1`` is always a grid point.  On ``[0, 2]`` the closed forms
``1`` and ``1 - log u`` are used directly.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

import numpy as np

from .errors import RangeRefusal

DEFAULT_STEP = 1.0 / 256
MAX_U = 300.0

__all__ = [
    "RhoTable",
    "BoundKind",
    "build_rho_table",
    "rho",
    "log_rho",
    "rho_derivative",
    "debruijn_asymptotic",
    "classical_bound",
    "log_gamma",
    "export_table",
]


@dataclass(frozen=True)
class RhoTable:
    """Values of rho on the uniform grid ``i * step_h``, ``0 <= i <= N``.

    ``log_values`` carries the same data on a log scale and stays finite out to
    ``u = 300`` where ``values`` underflows (around ``u = 140``).
    """

    step_h: float
    u_max: float
    values: np.ndarray = field(repr=False)
    method_order: int = 2
    log_values: np.ndarray = field(repr=False, default=None)

    @property
    def per_unit(self) -> int:
        return int(round(1.0 / self.step_h))

    @property
    def nodes(self) -> np.ndarray:
        return np.arange(len(self.values)) * self.step_h


def _per_unit(step_h: float) -> int:
    if not step_h > 0:
        raise ValueError(f"step must be positive, got {step_h!r}")
    n = int(round(1.0 / step_h))
    if n < 1 or abs(n * step_h - 1.0) > 1e-12:
        raise ValueError(f"step {step_h!r} is not the reciprocal of an integer")
    return n


def _march(n: int, u_max: float) -> tuple[np.ndarray, np.ndarray]:
    """Return (values, log_values) on the grid with ``n`` nodes per unit."""
    h = 1.0 / n
    size = int(math.ceil(u_max * n - 1e-9)) + 1
    u = np.arange(size) * h

    logv = np.zeros(size)
    head = min(2 * n, size - 1) + 1
    closed = np.ones(head)
    closed[n:] = 1.0 - np.log(u[n:head])
    logv[n:head] = np.log(closed[n:])

    # Working values live on a moving scale: true = s * exp(offset).  The
    # window is renormalised at every integer node so that the running sum
    # never carries absolute error from much larger earlier values.
    s = closed.tolist() + [0.0] * (size - head)
    offset = 0.0
    recorded = head - 1
    window = math.fsum(s[n + 1:2 * n + 1]) if size > 2 * n + 1 else 0.0
    half_h = 0.5 * h
    for i in range(2 * n + 1, size):
        # window == sum(s[i-n:i]); trapezoid over [u-1, u-h] halves the ends
        trap = h * (window - 0.5 * s[i - n] - 0.5 * s[i - 1])
        s[i] = (trap + half_h * s[i - 1]) / (i * h - half_h)
        window += s[i] - s[i - n]
        if i % n == 0:
            logv[recorded + 1:i + 1] = np.log(s[recorded + 1:i + 1]) + offset
            recorded = i
            scale = s[i]
            for j in range(i - n, i + 1):
                s[j] /= scale
            offset += math.log(scale)
            window = math.fsum(s[i - n + 1:i + 1])
    if recorded < size - 1:
        logv[recorded + 1:] = np.log(s[recorded + 1:]) + offset

    values = np.exp(logv)
    values[:head] = closed
    return values, logv


def build_rho_table(step_h: float = DEFAULT_STEP, u_max: float = 50.0) -> RhoTable:
    """Tabulate rho on ``[0, u_max]`` at step ``step_h``.

    ``step_h`` must be ``1/n`` for an integer ``n >= 64``.  The march has local
    truncation error of order ``step_h**3`` and global error of order
    ``step_h**2``; relative accuracy degrades slowly with ``u`` (roughly 1e-5
    relative at ``u = 30`` for the default step).
    """
    n = _per_unit(step_h)
    if n < 64:
        raise ValueError(f"step must be at most 1/64, got 1/{n}")
    if not u_max >= 2:
        raise ValueError(f"u_max must be at least 2, got {u_max!r}")
    if u_max > MAX_U:
        raise RangeRefusal(f"u_max above supported limit {MAX_U}: {u_max!r}")
    values, logv = _march(n, u_max)
    values.flags.writeable = False
    logv.flags.writeable = False
    return RhoTable(step_h=1.0 / n, u_max=(len(values) - 1) / n, values=values,
                    method_order=2, log_values=logv)


def _check_range(table: RhoTable, u: float) -> None:
    if u < 0:
        raise ValueError(f"rho is defined for u >= 0, got {u!r}")
    if u > table.u_max + 1e-12:
        raise RangeRefusal(f"u={u!r} beyond table range {table.u_max}")


def _cubic(arr: np.ndarray, n: int, u: float) -> float:
    pos = u * n
    i = int(round(pos))
    if abs(pos - i) < 1e-9 and i < len(arr):
        return float(arr[i])
    i0 = min(max(int(math.floor(pos)) - 1, 0), len(arr) - 4)
    t = pos - i0
    y0, y1, y2, y3 = (float(v) for v in arr[i0:i0 + 4])
    # Lagrange weights on nodes 0, 1, 2, 3 (in grid units)
    return (-y0 * (t - 1) * (t - 2) * (t - 3) / 6
            + y1 * t * (t - 2) * (t - 3) / 2
            - y2 * t * (t - 1) * (t - 3) / 2
            + y3 * t * (t - 1) * (t - 2) / 6)


def rho(table: RhoTable, u: float) -> float:
    """Evaluate rho(u): closed form on ``[0, 2]``, cubic interpolation beyond."""
    _check_range(table, u)
    if u <= 1:
        return 1.0
    if u <= 2:
        return 1.0 - math.log(u)
    return _cubic(table.values, table.per_unit, u)


def log_rho(table: RhoTable, u: float) -> float:
    """Natural log of rho(u); interpolates the log table so it survives underflow."""
    _check_range(table, u)
    if u <= 1:
        return 0.0
    if u <= 2:
        return math.log1p(-math.log(u))
    return _cubic(table.log_values, table.per_unit, u)


# A derivative term is coef * rho(u - shift) * prod (u - a)**(-e), keyed by
# (shift, ((a, e), ...)).  The identity rho'(v) = -rho(v - 1)/v generates them.
@lru_cache(maxsize=None)
def _derivative_terms(order: int) -> tuple[tuple[int, tuple[tuple[int, int], ...], Fraction], ...]:
    if order == 0:
        return ((0, (), Fraction(1)),)
    out: dict[tuple[int, tuple[tuple[int, int], ...]], Fraction] = {}

    def add(shift, factors, coef):
        key = (shift, tuple(sorted((a, e) for a, e in factors.items() if e)))
        out[key] = out.get(key, Fraction(0)) + coef

    for shift, factors, coef in _derivative_terms(order - 1):
        base = dict(factors)
        # d/du rho(u - s) = -rho(u - s - 1) / (u - s)
        f = dict(base)
        f[shift] = f.get(shift, 0) + 1
        add(shift + 1, f, -coef)
        # d/du (u - a)^(-e) = -e (u - a)^(-e-1)
        for a, e in factors:
            f = dict(base)
            f[a] = e + 1
            add(shift, f, -e * coef)
    return tuple((s, f, c) for (s, f), c in out.items() if c != 0)


def rho_derivative(table: RhoTable, u: float, order: int) -> float:
    """The ``order``-th derivative of rho at ``u``, built symbolically from
    ``rho'(u) = -rho(u - 1)/u``.  Requires ``u > order``."""
    if order < 1:
        raise ValueError(f"order must be >= 1, got {order!r}")
    if not u > order:
        raise ValueError(f"need u > order, got u={u!r}, order={order}")
    _check_range(table, u)
    total = 0.0
    for shift, factors, coef in _derivative_terms(order):
        term = float(coef) * rho(table, u - shift)
        for a, e in factors:
            term /= (u - a) ** e
        total += term
    return total


def debruijn_asymptotic(u: float) -> float:
    """Main term of de Bruijn's asymptotic for rho with the O-term dropped.

    Only the order of magnitude is meaningful; at moderate ``u`` the exponent
    is off by 10 to 20 percent.
    """
    if not u > math.e:
        raise ValueError(f"requires u > e, got {u!r}")
    lu = math.log(u)
    llu = math.log(lu)
    return math.exp(-u * (lu + llu - 1.0 + (llu - 1.0) / lu))


class BoundKind(enum.Enum):
    FactorialUpper = "factorial_upper"
    BuchstabLower = "buchstab_lower"
    RamaswamiLower = "ramaswami_lower"
    DeBruijnAsymptotic = "debruijn_asymptotic"


# B_2k / (2k (2k - 1)) for k = 1..8
_STIRLING = (
    1.0 / 12, -1.0 / 360, 1.0 / 1260, -1.0 / 1680,
    1.0 / 1188, -691.0 / 360360, 1.0 / 156, -3617.0 / 122400,
)


def log_gamma(x: float) -> float:
    """log Gamma(x) for ``x > 0`` by the Stirling series, shifted up to ``x >= 8``."""
    if not x > 0:
        raise ValueError(f"log_gamma needs x > 0, got {x!r}")
    shift = 0.0
    while x < 8.0:
        shift += math.log(x)
        x += 1.0
    inv = 1.0 / x
    inv2 = inv * inv
    series = 0.0
    p = inv
    for c in _STIRLING:
        series += c * p
        p *= inv2
    return (x - 0.5) * math.log(x) - x + 0.5 * math.log(2 * math.pi) + series - shift


def classical_bound(kind: BoundKind, u: float, c: float = 1.0) -> float:
    """Evaluate one of the classical bounds (or the de Bruijn main term) at ``u``.

    ``c`` is the unspecified constant in Ramaswami's lower bound; only the
    shape in ``u`` is meaningful.
    """
    kind = BoundKind(kind)
    if kind is BoundKind.FactorialUpper:
        if u < 0:
            raise ValueError("factorial bound needs u >= 0")
        return 1.0 / math.factorial(int(math.floor(u)))
    if kind is BoundKind.BuchstabLower:
        if u < 6:
            raise ValueError("Buchstab's lower bound holds for u >= 6")
        lu = math.log(u)
        llu = math.log(lu)
        return math.exp(-u * (lu + llu + 6.0 * llu / lu))
    if kind is BoundKind.RamaswamiLower:
        if u < 1:
            raise ValueError("Ramaswami's lower bound holds for u >= 1")
        if not c > 0:
            raise ValueError("constant c must be positive")
        return math.exp(math.log(c) - math.log(u) - u * math.log(4.0) - 2.0 * log_gamma(u))
    return debruijn_asymptotic(u)


def _fmt_u(u: float) -> str:
    s = f"{u:.10f}".rstrip("0").rstrip(".")
    return s if s not in ("", "-0") else "0"


def export_table(table: RhoTable, step: float = 0.1, u_end: float | None = None) -> str:
    """Two-column ``u   value`` text, value to 6 significant digits."""
    if not step > 0:
        raise ValueError("export step must be positive")
    u_end = table.u_max if u_end is None else u_end
    _check_range(table, u_end)
    count = int(math.floor(u_end / step + 1e-9))
    lines = []
    for k in range(count + 1):
        u = round(k * step, 10)
        lines.append(f"{_fmt_u(u)}   {rho(table, u):.6g}")
    return "\n".join(lines) + "\n"
