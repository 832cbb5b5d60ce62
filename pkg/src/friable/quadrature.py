"""Small quadrature helpers: adaptive Simpson and composite Simpson on a grid."""

from __future__ import annotations

from typing import Callable

import numpy as np

__all__ = ["adaptive_simpson", "composite_simpson"]


def adaptive_simpson(f: Callable[[float], float], a: float, b: float,
                     tol: float = 1e-10, max_depth: int = 48) -> tuple[float, float]:
    """Integrate ``f`` over ``[a, b]`` to absolute tolerance ``tol``.

    Each bisection hands half of its error budget to each child.  Returns
    ``(value, error_estimate)`` where the estimate is the sum of the local
    Richardson estimates ``|S2 - S1| / 15``.
    """
    if not tol > 0:
        raise ValueError("tolerance must be positive")
    if b == a:
        return 0.0, 0.0
    fa, fm, fb = f(a), f(0.5 * (a + b)), f(b)
    whole = (b - a) * (fa + 4.0 * fm + fb) / 6.0
    return _refine(f, a, b, fa, fm, fb, whole, tol, max_depth)


def _refine(f, a, b, fa, fm, fb, whole, tol, depth):
    m = 0.5 * (a + b)
    lm, rm = 0.5 * (a + m), 0.5 * (m + b)
    flm, frm = f(lm), f(rm)
    left = (m - a) * (fa + 4.0 * flm + fm) / 6.0
    right = (b - m) * (fm + 4.0 * frm + fb) / 6.0
    delta = left + right - whole
    if depth <= 0 or abs(delta) <= 15.0 * tol:
        return left + right + delta / 15.0, abs(delta) / 15.0
    lv, le = _refine(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1)
    rv, re = _refine(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1)
    return lv + rv, le + re


def composite_simpson(values: np.ndarray, h: float) -> float:
    """Composite Simpson over equally spaced samples.

    An odd number of panels is handled by finishing with Simpson's 3/8 rule on
    the last three panels.  Sums use numpy's pairwise reduction, so results are
    reproducible bit for bit for a given input.
    """
    y = np.asarray(values, dtype=float)
    panels = len(y) - 1
    if panels < 1:
        return 0.0
    if panels == 1:
        return 0.5 * h * float(y[0] + y[1])
    if panels % 2:
        head = composite_simpson(y[:-3], h) if panels > 3 else 0.0
        t = y[-4:]
        return head + 3.0 * h / 8.0 * float(t[0] + 3.0 * t[1] + 3.0 * t[2] + t[3])
    odd = float(np.sum(y[1:-1:2]))
    even = float(np.sum(y[2:-1:2]))
    return h / 3.0 * (float(y[0]) + float(y[-1]) + 4.0 * odd + 2.0 * even)

