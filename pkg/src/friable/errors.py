"""Exception types shared across the package."""


class RangeRefusal(ValueError):
    """Raised when an input is well-formed but outside the supported numeric range.

    Examples are a ``u`` beyond a table's extent, an ``x`` above the sieve cap,
    or a tolerance finer than the table resolution can honour.
    """
