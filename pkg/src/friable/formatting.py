"""Number rendering for text output."""

from __future__ import annotations

import math


def fmt_number(value, digits: int | None = None) -> str:
    """Shortest decimal that round-trips to the same double, ``1.0`` shown as ``1``.

    Integers print as integers; ``digits`` switches to ``%g`` with that many
    significant digits.
    """
    if isinstance(value, bool) or value is None:
        return str(value)
    if isinstance(value, int):
        return str(value)
    value = float(value)
    if digits is not None:
        return f"{value:.{digits}g}"
    if not math.isfinite(value):
        return repr(value)
    text = repr(value)
    if text.endswith(".0"):
        text = text[:-2]
    return text


def fmt_tolerance(tol: float) -> str:
    """``1e-08`` -> ``1e-8``."""
    mantissa, _, exponent = f"{tol:.0e}".partition("e")
    return f"{mantissa}e{int(exponent)}"
