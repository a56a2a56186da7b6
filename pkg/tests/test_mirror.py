from fractions import Fraction

import pytest

from mirrorkit.diffop import hypergeometric_operator
from mirrorkit.mirror import (appendix_c_residuals, build_mirror_bundle, classical_schwarzian_residual,
                              first_nonzero, gauss_q, integrality_report, qs_numeric,
                              quantum_schwarzian_residual, radius_estimate, theta4_operator)
from mirrorkit.series import SeriesError, compose, variable

H = Fraction(1, 2)


@pytest.fixture(scope="module")
def bundle():
    return build_mirror_bundle(theta4_operator(), 30)


def test_leading_coefficients(bundle):
    assert bundle.nome.coefficient_list(1, 5) == [1, 64, 7072, 991232]
    assert bundle.mirror.coefficient_list(1, 5) == [1, -64, 1120, -38912]
    assert bundle.yukawa.coefficient_list(0, 4) == [1, 32, 4896, 702464]


def test_nome_and_mirror_are_inverse(bundle):
    x = variable("x", 30)
    assert compose(bundle.mirror, bundle.nome).agrees_with(x)


def test_integrality(bundle):
    for f in (bundle.nome, bundle.mirror, bundle.yukawa, bundle.basis.y0):
        assert integrality_report(f)["status"] == "PASS"
    bad = integrality_report(bundle.basis.tails[2])
    assert bad["status"] == "FAIL" and bad["witness_coefficient"] == "8182400/9"


def test_quantum_schwarzian(bundle):
    assert first_nonzero(quantum_schwarzian_residual(bundle)) == (None, None)


def test_classical_schwarzian():
    op = hypergeometric_operator([H, H], [1], 1)
    r = classical_schwarzian_residual(op, gauss_q(), 20)
    assert first_nonzero(r) == (None, None)
    with pytest.raises(SeriesError):
        classical_schwarzian_residual(theta4_operator(), gauss_q(), 10)


def test_nome_defining_equations():
    res = appendix_c_residuals(theta4_operator(), 20)
    assert res and all(first_nonzero(v) == (None, None) for v in res.values())


def test_qs_value():
    r = qs_numeric(128, 4000)
    assert abs(float(r.value) - 0.0062794754) < 1e-9
    assert r.error_bound < 1e-8
    with pytest.raises(ValueError):
        qs_numeric(32)


def test_radius(bundle):
    est = radius_estimate(bundle.basis.y0.coefficient_list(0, 30))
    assert abs(est - Fraction(1, 256)) < Fraction(1, 256) / 10
    with pytest.raises(ValueError):
        radius_estimate([1])
