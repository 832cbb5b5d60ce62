"""Approximations and upper bounds for Psi(x, y), side by side.

All functions return real numbers; nothing is rounded to an integer.
``u`` is always ``log x / log y``.
"""

from __future__ import annotations

import json
import math
from dataclasses import asdict, dataclass

import numpy as np

from .constants import EULER_GAMMA, STIELTJES_GAMMA1
from .counting import _small_primes, psi_sieve
from .dickman import RhoTable, rho, rho_derivative
from .errors import RangeRefusal

PILLAI_MAX_Y = 100
SIGMA_RANGE = (0.05, 1.2)
EXACT_CAP = 10**7

__all__ = [
    "EstimateReport",
    "ZetaPartial",
    "dickman_estimate",
    "ramaswami_estimate",
    "expansion_coefficients",
    "debruijn_expansion",
    "debruijn_in_range",
    "zeta_partial",
    "rankin_bound",
    "rankin_optimize",
    "pillai_estimate",
    "ramanujan_psi3",
    "trivial_psi3",
    "estimate_report",
]


def _u(x: float, y: float) -> float:
    if not (x >= y >= 2):
        raise ValueError(f"need x >= y >= 2, got x={x!r}, y={y!r}")
    return math.log(x) / math.log(y)


def _table_u(table: RhoTable, u: float) -> None:
    if u > table.u_max:
        raise RangeRefusal(f"u={u:.6g} beyond table range {table.u_max}")


def dickman_estimate(x: float, y: float, table: RhoTable) -> float:
    """``x * rho(u)``."""
    u = _u(x, y)
    _table_u(table, u)
    return x * rho(table, u)


def ramaswami_estimate(x: float, y: float, table: RhoTable) -> float:
    """``x rho(u) + (1 - gamma) rho(u - 1) x / log x``, valid for ``u > 2``."""
    u = _u(x, y)
    if not u > 2:
        raise ValueError(f"Ramaswami's estimate needs u > 2, got u={u:.6g}")
    _table_u(table, u)
    return x * rho(table, u) + (1.0 - EULER_GAMMA) * rho(table, u - 1.0) * x / math.log(x)


def expansion_coefficients(m: int) -> list[float]:
    """``a_0..a_m`` of ``z/(1+z) * zeta(1+z)``.

    ``zeta(1+z) = 1/z + sum_k (-1)**k gamma_k z**k / k!`` and
    ``z/(1+z) = z - z**2 + z**3 - ...``; their Cauchy product gives the a_r.
    """
    if not 0 <= m <= 2:
        raise ValueError(f"m must be 0, 1 or 2 (gamma_2 is not stored), got {m!r}")
    # zeta(1+z) * z = 1 + gamma_0 z - gamma_1 z**2 + ...
    zeta_times_z = [1.0, EULER_GAMMA, -STIELTJES_GAMMA1]
    geometric = [(-1.0) ** r for r in range(m + 1)]  # 1/(1+z)
    return [sum(geometric[r - j] * zeta_times_z[j] for j in range(r + 1)) for r in range(m + 1)]


def debruijn_in_range(x: float, y: float, m: int) -> bool:
    """Whether ``m + 1 < u < sqrt(log x)`` holds."""
    u = _u(x, y)
    return m + 1 < u < math.sqrt(math.log(x))


def debruijn_expansion(x: float, y: float, m: int, table: RhoTable, strict: bool = True) -> float:
    """``x * sum_{r<=m} a_r rho^(r)(u) / log(y)**r``.

    With ``strict`` the stated window ``m + 1 < u < sqrt(log x)`` is enforced;
    otherwise the sum is evaluated wherever the derivatives exist.
    """
    coeffs = expansion_coefficients(m)
    u = _u(x, y)
    _table_u(table, u)
    if strict and not debruijn_in_range(x, y, m):
        raise RangeRefusal(f"u={u:.6g} outside {m + 1} < u < sqrt(log x)={math.sqrt(math.log(x)):.6g}")
    log_y = math.log(y)
    total = coeffs[0] * rho(table, u)
    for r in range(1, m + 1):
        total += coeffs[r] * rho_derivative(table, u, r) / log_y ** r
    return x * total


@dataclass(frozen=True)
class ZetaPartial:
    sigma: float
    y: float
    value: float


def _log_zeta_partial(sigma: float, primes: np.ndarray) -> float:
    return float(-np.sum(np.log1p(-np.power(primes.astype(float), -sigma))))


def zeta_partial(sigma: float, y: float) -> ZetaPartial:
    """Euler product of zeta truncated to primes ``<= y``."""
    if not sigma > 0:
        raise ValueError(f"sigma must be positive, got {sigma!r}")
    if y < 2:
        raise ValueError(f"y must be at least 2, got {y!r}")
    primes = _small_primes(int(math.floor(y)))
    return ZetaPartial(sigma=sigma, y=y, value=math.exp(_log_zeta_partial(sigma, primes)))


def _rankin_log(x: float, primes: np.ndarray, sigma: float) -> float:
    return sigma * math.log(x) + _log_zeta_partial(sigma, primes)


def _check_xy(x: float, y: float) -> np.ndarray:
    if x < 2 or y < 2:
        raise ValueError(f"need x >= 2 and y >= 2, got x={x!r}, y={y!r}")
    return _small_primes(int(math.floor(y)))


def default_sigma(y: float) -> float:
    return 1.0 - 1.0 / (2.0 * math.log(y))


def rankin_bound(x: float, y: float, sigma: float | None = None) -> float:
    """``x**sigma * zeta(sigma, y)``, an upper bound for Psi(x, y) for any sigma > 0.

    ``sigma`` defaults to ``1 - 1/(2 log y)``.
    """
    primes = _check_xy(x, y)
    sigma = default_sigma(y) if sigma is None else sigma
    if not sigma > 0:
        raise ValueError(f"sigma must be positive, got {sigma!r}")
    return math.exp(_rankin_log(x, primes, sigma))


def rankin_optimize(x: float, y: float, tol: float = 1e-6) -> tuple[float, float]:
    """Minimise ``x**sigma * zeta(sigma, y)`` over sigma in [0.05, 1.2].

    The log of the objective is convex in sigma, so golden-section search finds
    the global minimum.  Returns ``(sigma, bound)``; never worse than the
    default sigma.
    """
    primes = _check_xy(x, y)

    def f(s):
        return _rankin_log(x, primes, s)

    inv_phi = (math.sqrt(5.0) - 1.0) / 2.0
    a, b = SIGMA_RANGE
    c = b - inv_phi * (b - a)
    d = a + inv_phi * (b - a)
    fc, fd = f(c), f(d)
    while b - a > tol:
        if fc < fd:
            b, d, fd = d, c, fc
            c = b - inv_phi * (b - a)
            fc = f(c)
        else:
            a, c, fc = c, d, fd
            d = a + inv_phi * (b - a)
            fd = f(d)
    sigma = 0.5 * (a + b)
    best = f(sigma)
    s0 = default_sigma(y)
    if SIGMA_RANGE[0] <= s0 <= SIGMA_RANGE[1] and f(s0) < best:
        sigma, best = s0, f(s0)
    return sigma, math.exp(best)


def pillai_estimate(x: float, y: int) -> float:
    """Lattice-volume estimate with Pillai's first-order boundary correction.

    ``(1/k!) prod(log x / log p) * (1 + k log(p_1...p_k) / (2 log x))`` with the
    ``o(1)`` dropped.
    """
    if y > PILLAI_MAX_Y:
        raise RangeRefusal(f"Pillai's estimate is for small y <= {PILLAI_MAX_Y}, got {y}")
    if x < 2:
        raise ValueError(f"x must be at least 2, got {x!r}")
    primes = _small_primes(int(math.floor(y))).tolist()
    k = len(primes)
    log_x = math.log(x)
    log_volume = sum(math.log(log_x / math.log(p)) for p in primes) - math.lgamma(k + 1)
    log_primorial = sum(math.log(p) for p in primes)
    return math.exp(log_volume) * (1.0 + k * log_primorial / (2.0 * log_x))


def ramanujan_psi3(x: float) -> float:
    """Ramanujan's ``(1/2) log(2x) log(3x) / (log 2 log 3)``."""
    if x < 1:
        raise ValueError(f"x must be at least 1, got {x!r}")
    return 0.5 * math.log(2 * x) * math.log(3 * x) / (math.log(2) * math.log(3))


def trivial_psi3(x: float) -> float:
    """The bare tetrahedron volume ``log(x)**2 / (2 log 2 log 3)``."""
    return math.log(x) ** 2 / (2.0 * math.log(2) * math.log(3))


@dataclass
class EstimateReport:
    x: float
    y: float
    u: float
    dickman: float
    ramaswami: float | None
    debruijn: list[float]
    pillai: float | None
    ramanujan_psi3: float | None
    rankin_default: float
    rankin_optimized: float
    exact: int | None
    debruijn_in_range: list[bool]

    def as_dict(self) -> dict:
        return asdict(self)

    def to_json(self) -> str:
        return json.dumps(self.as_dict())

    @classmethod
    def from_dict(cls, data: dict) -> "EstimateReport":
        return cls(**data)

    def to_text(self) -> str:
        from .formatting import fmt_number

        rows = [("x", self.x), ("y", self.y), ("u", self.u), ("exact", self.exact),
                ("dickman", self.dickman), ("ramaswami", self.ramaswami)]
        for m, v in enumerate(self.debruijn):
            label = f"debruijn m={m}" + ("" if self.debruijn_in_range[m] else " (out of range)")
            rows.append((label, v))
        rows += [("pillai main term", self.pillai), ("ramanujan_psi3", self.ramanujan_psi3),
                 ("rankin_default", self.rankin_default),
                 ("rankin_optimized", self.rankin_optimized)]
        width = max(len(k) for k, _ in rows)
        lines = []
        for key, value in rows:
            if value is None:
                continue
            extra = ""
            if self.exact and key not in ("x", "y", "u", "exact"):
                extra = f"   rel.err {fmt_number((value - self.exact) / self.exact, 4)}"
            lines.append(f"{key:<{width}}  {fmt_number(value)}{extra}")
        return "\n".join(lines) + "\n"


def estimate_report(x: float, y: float, table: RhoTable, m: int = 2,
                    exact: bool | int | None = None) -> EstimateReport:
    """Every estimate for one ``(x, y)``.

    ``exact=None`` sieves when ``x <= 1e7``; ``True`` forces it, ``False``
    skips it, and an integer is taken as the known count.
    """
    u = _u(x, y)
    _table_u(table, u)
    debruijn = [debruijn_expansion(x, y, r, table, strict=False) for r in range(m + 1)
                if u > r]
    ramaswami = ramaswami_estimate(x, y, table) if u > 2 else None
    pillai = pillai_estimate(x, int(y)) if y <= PILLAI_MAX_Y else None
    psi3 = ramanujan_psi3(x) if 3 <= y < 5 else None
    if exact is None:
        exact = x <= EXACT_CAP
    if exact is True:
        exact = psi_sieve(int(math.floor(x)), int(math.floor(y))).count
    elif exact is False:
        exact = None
    _, optimized = rankin_optimize(x, y)
    return EstimateReport(
        x=x, y=y, u=u,
        dickman=dickman_estimate(x, y, table),
        ramaswami=ramaswami,
        debruijn=debruijn,
        pillai=pillai,
        ramanujan_psi3=psi3,
        rankin_default=rankin_bound(x, y),
        rankin_optimized=optimized,
        exact=exact,
        debruijn_in_range=[debruijn_in_range(x, y, r) for r in range(len(debruijn))],
    )
