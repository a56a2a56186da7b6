from fractions import Fraction

import pytest
from hypothesis import given

from mirrorkit.diffop import (DiffOp, OperatorError, diffop_from_text, diffop_to_text, exterior_square,
                              frobenius_mum, guess_min_ode, hadamard_square_at_point, hypergeometric_operator,
                              local_basis, op_apply, proportional, rational_kernel, symplectic_head_vanishes,
                              theta_product)
from mirrorkit.hyper import pfq_series
from mirrorkit.ratpoly import Poly, RatFun
from mirrorkit.series import pow_rational, variable
from strategies import operators, series

H = Fraction(1, 2)
X = RatFun.x()


def theta4():
    return hypergeometric_operator([H] * 4, [1, 1, 1], 256)


def test_theta_form_conversion():
    th = theta_product([[0, 1]])
    assert th == DiffOp([0, X])
    assert theta_product([[0, 1], [0, 1]]) == DiffOp([0, X, X ** 2])


def test_hypergeometric_operator_annihilates_pfq():
    for up, lo, s in (([H, H], [1], 16), ([Fraction(1, 12), Fraction(5, 12)], [1], 1728),
                      ([H] * 4, [1, 1, 1], 256), ([Fraction(i, 5) for i in range(1, 5)], [1, 1, 1], 3125)):
        f = pfq_series(up, lo, s, order=30)
        assert op_apply(hypergeometric_operator(up, lo, s), f).is_zero()


def test_frobenius_theta4():
    b = frobenius_mum(theta4(), 12)
    assert b.y0.coeffs[:5] == [1, 16, 1296, 160000, 24010000]
    assert [c for _, c in b.tails[1].terms()][:2] == [64, 6048] and b.tails[1].val == 1
    for k in range(4):
        assert op_apply(theta4(), b.solution(k)).is_zero()


def test_frobenius_rejects_non_mum():
    with pytest.raises(OperatorError):
        frobenius_mum(hypergeometric_operator([H, H], [Fraction(1, 3)], 1), 5)


def test_guess_central_binomial():
    x = variable("x", 30)
    op = guess_min_ode(pow_rational(1 - 4 * x, -H), 2, 2)
    assert proportional(op, DiffOp([-2, 1 - 4 * X]))


def test_guess_none_for_noise():
    x = variable("x", 40)
    f = sum(((-1) ** (k * k // 3) * (k * 7919 % 13 + 1)) * x ** k for k in range(1, 40)) + 1
    assert guess_min_ode(f, 2, 2) is None


def test_exterior_squares():
    e = exterior_square(theta4())
    assert e.order == 5
    assert symplectic_head_vanishes(theta4())
    screw = hypergeometric_operator([-H] * 4, [1, 1, 1], 256)
    e6 = exterior_square(screw)
    assert e6.order == 6
    assert not symplectic_head_vanishes(screw)
    assert op_apply(e6, (1 - 256 * X) / X).is_zero()
    assert any(((r * X) / (1 - 256 * X)).num.degree == 0 and (r * X / (1 - 256 * X)).is_polynomial()
               for r in rational_kernel(e6, 3))


def test_exterior_square_kills_wronskians():
    e = exterior_square(theta4())
    ys = [frobenius_mum(theta4(), 20).solution(k) for k in range(4)]
    for i in range(4):
        for j in range(i + 1, 4):
            w = ys[i] * ys[j].derivative() - ys[j] * ys[i].derivative()
            assert op_apply(e, w).is_zero()


def test_local_basis_and_hadamard_square():
    k = hypergeometric_operator([H, H], [1], 1)
    assert len(local_basis(DiffOp([-2, 1 - 4 * X]), 10)) == 1
    op = hadamard_square_at_point(k, 0, 60, 4, 2)
    assert op is not None and op.order == 4


def test_hadamard_square_of_first_order_operator():
    op = hadamard_square_at_point(DiffOp([-2, 1 - 4 * X]), 0, 40, 4, 3)
    assert op.order == 2
    assert proportional(op, hypergeometric_operator([H, H], [1], 16))


def test_text_round_trip():
    op = theta4()
    for form in ("D", "theta"):
        t = diffop_to_text(op, form)
        assert proportional(diffop_from_text(t), op)
        assert diffop_to_text(diffop_from_text(t), form) == t


def test_shift():
    op = DiffOp([0, 1 - 16 * X])
    assert op.shift(Fraction(1, 16)) == DiffOp([0, -16 * X])


@given(operators(), operators(), series(val=0, order=14))
def test_application_respects_composition(a, b, f):
    assert op_apply(a * b, f).agrees_with(op_apply(a, op_apply(b, f)))


@given(operators(max_order=3))
def test_d_theta_round_trip(op):
    assert DiffOp.from_theta(op.theta_coeffs()) == op
