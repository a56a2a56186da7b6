"""Shared hypothesis strategies."""

from fractions import Fraction

from hypothesis import strategies as st

from mirrorkit.diffop import DiffOp
from mirrorkit.ratpoly import Poly, RatFun
from mirrorkit.series import PowerSeries

small = st.integers(min_value=-6, max_value=6)
fracs = st.builds(Fraction, small, st.integers(min_value=1, max_value=5))


def coeff_lists(min_size=1, max_size=8):
    return st.lists(fracs, min_size=min_size, max_size=max_size)


@st.composite
def series(draw, val=0, order=12, lead_one=False):
    cs = draw(coeff_lists(1, order - val))
    if lead_one:
        cs[0] = Fraction(1)
    elif cs[0] == 0:
        cs[0] = Fraction(1)
    return PowerSeries("x", cs, val, order)


@st.composite
def polys(draw, max_degree=3):
    return Poly(draw(st.lists(small, min_size=1, max_size=max_degree + 1)))


@st.composite
def operators(draw, max_order=2, max_degree=2):
    r = draw(st.integers(min_value=0, max_value=max_order))
    cs = [RatFun(draw(polys(max_degree))) for _ in range(r)]
    cs.append(RatFun(draw(st.integers(min_value=1, max_value=4))))
    return DiffOp(cs)
