import math
from functools import lru_cache

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from friable import (BoundKind, RangeRefusal, build_rho_table, classical_bound,
                     debruijn_asymptotic, export_table, log_rho, rho, rho_derivative)
from friable.dickman import log_gamma
from friable.quadrature import composite_simpson
from friable.series import rho_via_ramanujan

from reference_data import RHO_REFERENCE, RHO_REFERENCE_TEXT


@pytest.fixture(scope="module")
def small():
    return build_rho_table(1.0 / 256, 4.0)


# -- construction --------------------------------------------------------------

def test_value_at_two(small):
    assert rho(small, 2.0) == pytest.approx(0.306853, abs=1e-5)


def test_flat_on_unit_interval(small):
    assert rho(small, 0.7) == 1.0
    n = small.per_unit
    assert np.all(small.values[:n + 1] == 1.0)


def test_value_at_four(small):
    assert rho(small, 4.0) == pytest.approx(0.00491093, abs=1e-6)


@pytest.mark.parametrize("step", [0.003, 1.0 / 3.5, 0.0])
def test_rejects_non_reciprocal_step(step):
    with pytest.raises(ValueError):
        build_rho_table(step, 4.0)


def test_rejects_coarse_step():
    with pytest.raises(ValueError):
        build_rho_table(1.0 / 32, 4.0)


def test_rejects_short_range():
    with pytest.raises(ValueError):
        build_rho_table(1.0 / 256, 1.5)


def test_refuses_beyond_supported_range():
    with pytest.raises(RangeRefusal):
        build_rho_table(1.0 / 64, 301.0)


def test_table_is_read_only(small):
    with pytest.raises(ValueError):
        small.values[5] = 0.0


def test_closed_form_branch_on_grid(small):
    n = small.per_unit
    u = np.arange(n, 2 * n + 1) / n
    err = np.abs(small.values[n:2 * n + 1] - (1.0 - np.log(u)))
    assert err.max() < 1e-12
    eps = np.finfo(float).eps
    assert np.all(err <= 10 * eps * small.values[n:2 * n + 1])


def test_invariants(table_256):
    v = table_256.values
    n = table_256.per_unit
    assert np.all(v > 0)
    assert np.all(np.diff(v[n:]) < 0)
    u = table_256.nodes
    bound = np.array([1.0 / math.factorial(int(math.floor(t + 1e-12))) for t in u])
    assert np.all(v <= bound * (1 + 1e-12))


def test_integral_equation_residual(table_256):
    """u rho(u) - integral of rho over [u-1, u] stays below 5 h**2."""
    n = table_256.per_unit
    h = table_256.step_h
    v = table_256.values
    worst = 0.0
    for i in range(n + 1, len(v), 7):
        integral = composite_simpson(v[i - n:i + 1], h)
        worst = max(worst, abs(i * h * v[i] - integral))
    assert worst < 5 * h * h


def test_second_order_convergence():
    """Halving the step shrinks the error by about four at every common node."""
    tables = [build_rho_table(1.0 / n, 8.0) for n in (128, 256, 512)]
    nodes = np.arange(2 * 128 + 1, 8 * 128 + 1, 8)
    d1 = tables[0].values[nodes] - tables[1].values[2 * nodes]
    d2 = tables[1].values[2 * nodes] - tables[2].values[4 * nodes]
    ratio = d1 / d2
    assert np.all((ratio > 3.8) & (ratio < 4.2))
    # the scaled error constant C = err / h**2 is stable across refinements
    c1 = np.abs(d1) * 4 / 3 * 128 ** 2
    c2 = np.abs(d2) * 4 / 3 * 256 ** 2
    assert np.allclose(c1, c2, rtol=0.05)


def test_log_values_survive_underflow():
    table = build_rho_table(1.0 / 64, 200.0)
    assert table.values[-1] == 0.0
    assert np.all(np.isfinite(table.log_values))
    assert np.all(np.diff(table.log_values[64:]) < 0)
    # log rho(u) ~ -u (log u + log log u - 1) to leading order
    assert log_rho(table, 200.0) / (-200.0 * (math.log(200) + math.log(math.log(200)) - 1)) \
        == pytest.approx(1.0, abs=0.05)


def test_log_rho_matches_rho(table_256):
    for u in (0.5, 1.5, 2.5, 7.3, 19.9):
        assert log_rho(table_256, u) == pytest.approx(math.log(rho(table_256, u)), rel=1e-7)


# -- evaluation ------------------------------------------------------------------

def test_rho_examples(small):
    assert rho(small, 1.5) == pytest.approx(0.594535, abs=1e-6)
    assert rho(small, 0.0) == 1.0
    assert rho(small, 3.0) == pytest.approx(0.0486084, abs=1e-6)


def test_rho_range_checks(small):
    with pytest.raises(ValueError):
        rho(small, -0.1)
    with pytest.raises(RangeRefusal):
        rho(small, 4.5)


def test_reference_table_at_default_step(small):
    for u, value in RHO_REFERENCE:
        assert rho(small, u) == pytest.approx(value, abs=5e-6)


def test_interpolation_between_nodes(table_1024):
    for u in (2.05, 2.5001, 3.33, 3.9999):
        assert rho(table_1024, u) == pytest.approx(rho_via_ramanujan(u, 1e-10), abs=2e-8)


@lru_cache(maxsize=None)
def _hyp_table():
    # hypothesis re-runs the body many times; fixtures are not re-entered
    return build_rho_table(1.0 / 256, 30.0)


@settings(max_examples=60, deadline=None)
@given(st.floats(2.0, 29.0), st.floats(0.001, 1.0))
def test_monotone_under_interpolation(u, du):
    table = _hyp_table()
    assert rho(table, u + du) < rho(table, u)


def test_export_format_matches_reference_layout():
    table = build_rho_table(1.0 / 4096, 4.0)
    assert export_table(table, 0.1, 4.0) == RHO_REFERENCE_TEXT


def test_export_at_1024_within_one_unit_in_last_digit(table_1024):
    # the 1e-8 solver error at this step can tip a sixth digit across a
    # rounding boundary, so a one-unit difference is allowed
    lines = export_table(table_1024, 0.1, 4.0).splitlines()
    ref = RHO_REFERENCE_TEXT.splitlines()
    assert [ln.split()[0] for ln in lines] == [ln.split()[0] for ln in ref]
    for ours, theirs in zip(lines, ref):
        a, b = float(ours.split()[1]), float(theirs.split()[1])
        unit = 10.0 ** (math.floor(math.log10(b)) - 5)
        assert abs(a - b) <= unit * (1 + 1e-9)


# -- derivatives -------------------------------------------------------------------

def test_derivative_examples(table_1024):
    assert rho_derivative(table_1024, 2.0 + 1e-12, 1) == pytest.approx(-0.5, abs=1e-9)
    assert rho_derivative(table_1024, 3.0, 1) == pytest.approx(-(1 - math.log(2)) / 3, abs=1e-9)
    assert rho_derivative(table_1024, 3.0, 1) == pytest.approx(-0.10228, abs=1e-5)


def test_derivative_requires_u_above_order(table_1024):
    with pytest.raises(ValueError):
        rho_derivative(table_1024, 2.0, 2)
    with pytest.raises(ValueError):
        rho_derivative(table_1024, 1.0, 1)
    with pytest.raises(ValueError):
        rho_derivative(table_1024, 3.0, 0)


def _central(f, u, h, order):
    if order == 1:
        return (f(u + h) - f(u - h)) / (2 * h)
    if order == 2:
        return (f(u + h) - 2 * f(u) + f(u - h)) / h ** 2
    if order == 3:
        return (f(u + 2 * h) - 2 * f(u + h) + 2 * f(u - h) - f(u - 2 * h)) / (2 * h ** 3)
    raise ValueError(order)


@pytest.mark.parametrize("u", [2.5, 3.5, 4.5])
def test_first_derivative_vs_finite_difference(table_1024, u):
    fd = _central(lambda t: rho(table_1024, t), u, 1e-3, 1)
    assert rho_derivative(table_1024, u, 1) == pytest.approx(fd, rel=1e-4)


def test_second_derivative_vs_finite_difference(table_1024):
    fd = _central(lambda t: rho(table_1024, t), 3.5, 1e-3, 2)
    exact = rho_derivative(table_1024, 3.5, 2)
    assert exact == pytest.approx(fd, rel=1e-4)
    closed = rho(table_1024, 2.5) / 3.5 ** 2 + rho(table_1024, 1.5) / (3.5 * 2.5)
    assert exact == pytest.approx(closed, rel=1e-12)


def test_third_derivative_vs_finite_difference(table_1024):
    fd = _central(lambda t: rho(table_1024, t), 5.5, 1e-2, 3)
    assert rho_derivative(table_1024, 5.5, 3) == pytest.approx(fd, rel=1e-3)


def test_third_derivative_on_closed_form(table_1024):
    # on (3, 4) every delayed argument of order <= 3 that matters lies in [1, 2] or below
    u = 3.6
    d = lambda t: rho_derivative(table_1024, t, 2)  # noqa: E731
    fd = (d(u + 1e-4) - d(u - 1e-4)) / 2e-4
    assert rho_derivative(table_1024, u, 3) == pytest.approx(fd, rel=1e-5)


# -- asymptotics and bounds -----------------------------------------------------------

def test_debruijn_log_ratio_at_ten(table_1024):
    ref = rho(table_1024, 10.0)
    assert ref == pytest.approx(2.77e-11, rel=0.01)
    ratio = math.log(debruijn_asymptotic(10.0)) / math.log(ref)
    assert ratio > 0
    # the dropped O-term is large here; the order-of-magnitude band of the
    # acceptance suite is checked (and reported) there


@pytest.mark.xfail(strict=True, reason="the main term at u = 3 exceeds ten times rho(3)")
def test_debruijn_sanity_band_at_three(table_1024):
    value = debruijn_asymptotic(3.0)
    ref = rho(table_1024, 3.0)
    assert ref / 10 < value < ref * 10


def test_debruijn_at_three_is_finite_positive():
    assert 0 < debruijn_asymptotic(3.0) < math.inf


def test_debruijn_edge():
    value = debruijn_asymptotic(math.e + 0.001)
    assert math.isfinite(value) and value > 0
    with pytest.raises(ValueError):
        debruijn_asymptotic(math.e)


def test_factorial_bound_example():
    assert classical_bound(BoundKind.FactorialUpper, 4.5) == pytest.approx(1 / 24)


def test_buchstab_lower_example(table_1024):
    value = classical_bound(BoundKind.BuchstabLower, 6.0)
    direct = math.exp(-6 * (math.log(6) + math.log(math.log(6))
                            + 6 * math.log(math.log(6)) / math.log(6)))
    assert value == pytest.approx(direct, rel=1e-14)
    assert value == pytest.approx(5.2e-12, rel=0.05)
    assert rho(table_1024, 6.0) == pytest.approx(1.96e-5, rel=0.01)
    assert rho(table_1024, 6.0) > value


def test_ramaswami_lower_example():
    assert classical_bound(BoundKind.RamaswamiLower, 2.0, 1.0) == pytest.approx(0.03125, rel=1e-12)
    assert classical_bound(BoundKind.RamaswamiLower, 2.0) < 0.306853


def test_bound_ranges():
    with pytest.raises(ValueError):
        classical_bound(BoundKind.BuchstabLower, 5.9)
    with pytest.raises(ValueError):
        classical_bound(BoundKind.RamaswamiLower, 0.5)
    with pytest.raises(ValueError):
        classical_bound(BoundKind.RamaswamiLower, 2.0, c=0.0)
    with pytest.raises(ValueError):
        classical_bound(BoundKind.FactorialUpper, -1.0)


def test_bound_kind_is_closed():
    assert {k.name for k in BoundKind} == {
        "FactorialUpper", "BuchstabLower", "RamaswamiLower", "DeBruijnAsymptotic"}


def test_ramaswami_lower_below_rho(table_256):
    for u in np.arange(1.0, 30.0, 0.5):
        assert classical_bound(BoundKind.RamaswamiLower, float(u)) < rho(table_256, float(u))


@pytest.mark.parametrize("n", range(2, 21))
def test_log_gamma_against_factorials(n):
    assert math.exp(log_gamma(n)) == pytest.approx(math.factorial(n - 1), rel=1e-12)


@settings(max_examples=100, deadline=None)
@given(st.floats(0.01, 150.0))
def test_log_gamma_against_lgamma(x):
    assert log_gamma(x) == pytest.approx(math.lgamma(x), rel=1e-12, abs=1e-12)
