from fractions import Fraction
from math import comb

import pytest
from hypothesis import given, strategies as st

from mirrorkit.hyper import (delta_qseries, eta_quotient_qseries, euler_product, form_factor_series,
                             hadamard_power_family, j2_qseries, parse_eta_quotient, parse_pfq, pfq_coefficients,
                             pfq_series, theta_null_qseries)
from mirrorkit.series import SeriesError, hadamard, substitute_power

H = Fraction(1, 2)


def test_pfq_central_binomial():
    f = pfq_series([H], [], 4, order=10)
    assert f.coeffs == [comb(2 * n, n) for n in range(10)]


def test_pfq_terminates():
    assert pfq_series([-3, 1], [1], 1, order=10).coefficient_list(0, 10) == [1, -3, 3, -1, 0, 0, 0, 0, 0, 0]


def test_euler_pentagonal():
    p = euler_product(30)
    pent = {k * (3 * k - 1) // 2: (-1) ** k for k in range(-5, 6)}
    assert p.coefficient_list(0, 30) == [pent.get(n, 0) for n in range(30)]


def test_ramanujan_delta():
    d = delta_qseries(8)
    assert [c for _, c in d.terms()][:6] == [1, -24, 252, -1472, 4830, -6048]
    assert d.val == 1


def test_eta_quotient_parsing_and_lead():
    assert parse_eta_quotient("1^24,2^-24") == [(1, 24), (2, -24)]
    f = eta_quotient_qseries([(1, 24), (2, -24)], 6)
    assert f.val == -1
    assert f.agrees_with(eta_quotient_qseries(parse_eta_quotient("1^24,2^-24"), 6))
    with pytest.raises(SeriesError):
        parse_eta_quotient("1^x")


def test_jacobi_quartic():
    t2, t3, t4 = (theta_null_qseries(k, 40) for k in (2, 3, 4))
    assert (t3 ** 4 - t4 ** 4 - t2 ** 4).is_zero()
    assert [e for e, _ in t2.terms()][:3] == [Fraction(1, 4), Fraction(9, 4), Fraction(25, 4)]


def test_delta_from_thetas():
    t2, t3, t4 = (theta_null_qseries(k, 30) for k in (2, 3, 4))
    lhs = substitute_power(delta_qseries(30), 2)
    assert lhs.agrees_with((t2 * t3 * t4 * H) ** 8)


def test_j2_leading():
    j = j2_qseries(6)
    assert j.val == -1


def test_form_factor_base_case():
    f = form_factor_series(0, 0, 12)
    assert f.coeffs == [comb(2 * n, n) ** 2 for n in range(12)]
    assert form_factor_series(2, 1, 5, normalized=True).coeffs[0] == 1
    assert form_factor_series(2, 1, 5).coeffs[0] == 3


def test_hadamard_powers():
    for n in range(1, 5):
        f = hadamard_power_family(n, "sqrt", 10)
        assert f.coeffs == [comb(2 * m, m) ** n for m in range(10)]
    assert hadamard_power_family(2, "K", 6).agrees_with(
        hadamard(pfq_series([H, H], [1], 16, order=6), pfq_series([H, H], [1], 16, order=6)))
    with pytest.raises(SeriesError):
        hadamard_power_family(0)


def test_parse_pfq():
    assert parse_pfq("1/2,1/2;1;16") == ([H, H], [Fraction(1)], Fraction(16))
    assert parse_pfq("1/2;;4") == ([H], [], Fraction(4))
    with pytest.raises(SeriesError):
        parse_pfq("1/2")


@given(st.integers(0, 6), st.integers(0, 6))
def test_form_factor_symmetry(k, n):
    assert form_factor_series(k, n, 8).agrees_with(form_factor_series(n, k, 8))


@given(st.lists(st.fractions(min_value=Fraction(1, 6), max_value=3, max_denominator=6), min_size=1, max_size=3),
       st.integers(1, 5))
def test_pfq_ratio(ups, s):
    cs = pfq_coefficients(ups, [1] * (len(ups) - 1), s, 6)
    for n in range(5):
        r = Fraction(s)
        for a in ups:
            r *= a + n
        assert cs[n + 1] * (n + 1) ** len(ups) == cs[n] * r
