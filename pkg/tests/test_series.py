from fractions import Fraction

import pytest
from hypothesis import assume, given, strategies as st

from mirrorkit.series import (LogSeries, PowerSeries, SeriesError, compose, derivative, exp_series,
                              hadamard, log_series, pow_rational, revert, schwarzian,
                              series_from_text, series_to_text, substitute_power, variable)
from strategies import fracs, series


def test_basic_arithmetic():
    x = variable("x", 10)
    f = pow_rational(1 - 4 * x, Fraction(-1, 2))
    assert f.coeffs[:5] == [1, 2, 6, 20, 70]
    assert (f * f).coeffs[:4] == [1, 4, 16, 64]
    assert f.order == 10


def test_fractional_exponents_and_scale():
    x = variable("x", 8)
    g = pow_rational(x * (1 + x), Fraction(1, 2))
    assert g.valuation == Fraction(1, 2)
    assert g.coeff(Fraction(3, 2)) == Fraction(1, 2)
    assert (g * g).agrees_with(x + x * x)


def test_fractional_power_needs_unit_lead():
    x = variable("x", 8)
    with pytest.raises(SeriesError):
        pow_rational(2 + x, Fraction(1, 2))


def test_laurent_division():
    x = variable("x", 8)
    f = 1 / (x * (1 - x))
    assert f.valuation == -1
    assert [f.coeff(e) for e in range(-1, 3)] == [1, 1, 1, 1]


def test_reversion_known_value():
    x = variable("x", 6)
    r = revert(x + x * x)
    assert r.coeffs == [1, -1, 2, -5, 14]


def test_text_round_trip():
    x = variable("x", 9)
    f = pow_rational(1 + x, Fraction(-1, 3))
    t = series_to_text(f)
    assert t.startswith("series x scale=1 order=9\n")
    assert series_from_text(t) == f
    assert series_to_text(series_from_text(t)) == t


def test_text_rejects_unsorted():
    with pytest.raises(SeriesError):
        series_from_text("series x scale=1 order=5\n  2 1/1\n  1 1/1\n")


def test_substitute_power():
    x = variable("x", 5)
    f = substitute_power(1 / (1 - x), 3)
    assert f.coeff(3) == 1 and f.coeff(2) == 0 and f.order == 15


def test_log_series_derivative():
    x = variable("x", 6)
    lx = LogSeries.log_var("x", 6)
    d = (lx * (1 + x)).derivative()
    # d/dx (ln x (1 + x)) = (1 + x)/x + ln x
    assert d.parts[1].agrees_with(PowerSeries.constant("x", 1, 5))


# -- properties -------------------------------------------------------------------

@given(series(val=1, lead_one=True))
def test_reversion_round_trip(f):
    r = revert(f)
    assert compose(f, r).agrees_with(variable("x", f.order))
    assert revert(r).agrees_with(f)


@given(series(val=1))
def test_exp_log_round_trip(f):
    assert log_series(exp_series(f)).agrees_with(f)


@given(series(val=0, lead_one=True), fracs, fracs)
def test_pow_round_trip(f, a, b):
    if a == 0:
        a = Fraction(1, 2)
    assert pow_rational(pow_rational(f, a), 1 / a).agrees_with(f)
    assert (pow_rational(f, a) * pow_rational(f, b)).agrees_with(pow_rational(f, a + b))


@given(series(val=0))
def test_hadamard_identity_element(f):
    one = 1 / (1 - variable("x", f.order))
    assert hadamard(f, one) == hadamard(one, f)
    assert hadamard(f, one).agrees_with(f)


@given(series(val=1, lead_one=True), st.integers(-4, 4), st.integers(-4, 4),
       st.integers(-4, 4), st.integers(1, 4))
def test_schwarzian_moebius_invariance(f, a, b, c, d):
    assume(a * d - b * c != 0)
    g = (a * f + b) / (c * f + d)
    assert schwarzian(g).agrees_with(schwarzian(f))


@given(series(val=0), series(val=0))
def test_derivative_is_a_derivation(f, g):
    assert derivative(f * g).agrees_with(derivative(f) * g + f * derivative(g))
