"""Univariate polynomials, rational functions and sparse multivariate polynomials
over the rationals."""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Iterable, Mapping, Sequence, Union

from .series import PowerSeries, SeriesError, compose as _series_compose

Scalar = Union[int, Fraction]


def _f(c) -> Fraction:
    return c if isinstance(c, Fraction) else Fraction(c)


class Poly:
    """Dense polynomial; ``coeffs[i]`` multiplies ``x^i``.  Trailing zeros are
    stripped so the zero polynomial has ``coeffs == []``."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable[Scalar] = ()):
        cs = [_f(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        self.coeffs = cs

    @classmethod
    def x(cls) -> "Poly":
        return cls([0, 1])

    @classmethod
    def const(cls, c: Scalar) -> "Poly":
        return cls([c])

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def lc(self) -> Fraction:
        return self.coeffs[-1] if self.coeffs else Fraction(0)

    def valuation(self) -> int:
        for i, c in enumerate(self.coeffs):
            if c:
                return i
        raise ValueError("zero polynomial has no valuation")

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            other = Poly([other])
        return isinstance(other, Poly) and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(tuple(self.coeffs))

    def __repr__(self) -> str:
        if not self.coeffs:
            return "0"
        return " + ".join(f"{c}*x^{i}" for i, c in enumerate(self.coeffs) if c)

    def _lift(self, other) -> "Poly":
        if isinstance(other, Poly):
            return other
        if isinstance(other, (int, Fraction)):
            return Poly([other])
        return NotImplemented

    def __add__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return o
        a, b = self.coeffs, o.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] += c
        return Poly(out)

    __radd__ = __add__

    def __neg__(self):
        return Poly([-c for c in self.coeffs])

    def __sub__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return o
        return self + (-o)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            c = _f(other)
            return Poly([c * a for a in self.coeffs])
        o = self._lift(other)
        if o is NotImplemented:
            return o
        a, b = self.coeffs, o.coeffs
        if not a or not b:
            return Poly()
        out = [Fraction(0)] * (len(a) + len(b) - 1)
        for i, ai in enumerate(a):
            if ai:
                for j, bj in enumerate(b):
                    out[i + j] += ai * bj
        return Poly(out)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "Poly":
        if n < 0:
            raise ValueError("negative power of a polynomial")
        r = Poly([1])
        b = self
        while n:
            if n & 1:
                r = r * b
            n >>= 1
            if n:
                b = b * b
        return r

    def __truediv__(self, c):
        if isinstance(c, (int, Fraction)):
            return self * (1 / _f(c))
        if isinstance(c, Poly):
            return RatFun(self, c)
        return NotImplemented

    def __rtruediv__(self, c):
        if isinstance(c, (int, Fraction)):
            return RatFun(Poly([c]), self)
        return NotImplemented

    def divmod(self, d: "Poly") -> tuple["Poly", "Poly"]:
        if d.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        r = list(self.coeffs)
        dd = d.coeffs
        n = len(dd) - 1
        inv = 1 / dd[-1]
        if len(r) - 1 < n:
            return Poly(), Poly(r)
        q = [Fraction(0)] * (len(r) - n)
        for k in range(len(r) - 1, n - 1, -1):
            c = r[k] * inv
            q[k - n] = c
            if c:
                for i in range(n + 1):
                    r[k - n + i] -= c * dd[i]
        return Poly(q), Poly(r[:n])

    def __floordiv__(self, d: "Poly") -> "Poly":
        return self.divmod(d)[0]

    def __mod__(self, d: "Poly") -> "Poly":
        return self.divmod(d)[1]

    def exact_div(self, d: "Poly") -> "Poly":
        q, r = self.divmod(d)
        if not r.is_zero():
            raise ValueError("polynomial division is not exact")
        return q

    def monic(self) -> "Poly":
        if self.is_zero():
            return self
        return self * (1 / self.lc())

    def derivative(self) -> "Poly":
        return Poly([i * c for i, c in enumerate(self.coeffs)][1:])

    def theta(self) -> "Poly":
        return Poly([i * c for i, c in enumerate(self.coeffs)])

    def __call__(self, v):
        """Evaluate at a scalar, a polynomial, a rational function or a series."""
        if isinstance(v, PowerSeries):
            return _series_compose(self, v)
        if not self.coeffs:
            return v * 0 if not isinstance(v, (int, Fraction)) else Fraction(0)
        r = self.coeffs[-1]
        if not isinstance(v, (int, Fraction)):
            r = v * 0 + r
        for c in reversed(self.coeffs[:-1]):
            r = r * v + c
        return r

    def shift(self, c: Scalar) -> "Poly":
        """``p(x + c)``."""
        return self(Poly([c, 1]))

    def reverse(self, n: int | None = None) -> "Poly":
        """``x^n p(1/x)`` with ``n`` defaulting to the degree."""
        n = self.degree if n is None else n
        cs = self.coeffs + [Fraction(0)] * (n + 1 - len(self.coeffs))
        return Poly(list(reversed(cs[: n + 1])))

    def content(self) -> Fraction:
        """Positive rational ``c`` with ``p/c`` primitive in Z[x]."""
        if not self.coeffs:
            return Fraction(1)
        num = 0
        den = 1
        for c in self.coeffs:
            num = math.gcd(num, c.numerator)
            den = den * c.denominator // math.gcd(den, c.denominator)
        return Fraction(num, den)

    def primitive(self) -> "Poly":
        if not self.coeffs:
            return self
        return self * (1 / self.content())

    def to_series(self, var: str, order: int) -> PowerSeries:
        return PowerSeries(var, self.coeffs[: max(order, 0)], 0, order)


def poly_gcd(a: Poly, b: Poly) -> Poly:
    """Monic gcd, computed with a primitive remainder sequence."""
    a, b = a.primitive(), b.primitive()
    while not b.is_zero():
        a, b = b, _prem(a, b).primitive()
    return a.monic()


def _prem(a: Poly, b: Poly) -> Poly:
    # pseudo-remainder with integer-cleared operands keeps coefficients small
    r = list(a.coeffs)
    dd = b.coeffs
    n = len(dd) - 1
    lb = dd[-1]
    while len(r) - 1 >= n and r:
        c = r[-1]
        k = len(r) - 1 - n
        r = [lb * x for x in r]
        for i in range(n + 1):
            r[k + i] -= c * dd[i]
        while r and r[-1] == 0:
            r.pop()
    return Poly(r)


class RatFun:
    """``num/den`` in lowest terms with a monic denominator."""

    __slots__ = ("num", "den")

    def __init__(self, num, den=None, _reduced: bool = False):
        num = num if isinstance(num, Poly) else Poly([num]) if isinstance(num, (int, Fraction)) else Poly(num)
        if den is None:
            den = Poly([1])
        elif not isinstance(den, Poly):
            den = Poly([den]) if isinstance(den, (int, Fraction)) else Poly(den)
        if den.is_zero():
            raise ZeroDivisionError("rational function with zero denominator")
        if not _reduced:
            if num.is_zero():
                den = Poly([1])
            elif den.degree > 0:
                g = poly_gcd(num, den)
                if g.degree > 0:
                    num = num.exact_div(g)
                    den = den.exact_div(g)
            lc = den.lc()
            if lc != 1:
                num = num * (1 / lc)
                den = den * (1 / lc)
        self.num = num
        self.den = den

    @classmethod
    def x(cls) -> "RatFun":
        return cls(Poly.x())

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def is_polynomial(self) -> bool:
        return self.den.degree == 0

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction, Poly)):
            other = RatFun(other)
        return isinstance(other, RatFun) and self.num == other.num and self.den == other.den

    def __hash__(self):
        return hash((self.num, self.den))

    def __repr__(self) -> str:
        if self.den.degree == 0:
            return f"({self.num})"
        return f"({self.num})/({self.den})"

    @staticmethod
    def _lift(o) -> "RatFun":
        if isinstance(o, RatFun):
            return o
        if isinstance(o, Poly):
            return RatFun(o, None, True)
        if isinstance(o, (int, Fraction)):
            return RatFun(Poly([o]), None, True)
        return NotImplemented

    def __add__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return o
        if self.den == o.den:
            return RatFun(self.num + o.num, self.den)
        return RatFun(self.num * o.den + o.num * self.den, self.den * o.den)

    __radd__ = __add__

    def __neg__(self):
        return RatFun(-self.num, self.den, True)

    def __sub__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return o
        return self + (-o)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return RatFun(self.num * other, self.den, other != 0)
        o = self._lift(other)
        if o is NotImplemented:
            return o
        return RatFun(self.num * o.num, self.den * o.den)

    __rmul__ = __mul__

    def inverse(self) -> "RatFun":
        if self.is_zero():
            raise ZeroDivisionError("inverse of the zero rational function")
        return RatFun(self.den, self.num)

    def __truediv__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return o
        return self * o.inverse()

    def __rtruediv__(self, other):
        return self._lift(other) * self.inverse()

    def __pow__(self, n: int) -> "RatFun":
        if n >= 0:
            return RatFun(self.num ** n, self.den ** n, True) if self.den.lc() == 1 else RatFun(self.num ** n, self.den ** n)
        return self.inverse() ** (-n)

    def derivative(self) -> "RatFun":
        n, d = self.num, self.den
        return RatFun(n.derivative() * d - n * d.derivative(), d * d)

    def __call__(self, v):
        """Evaluate at a scalar, or substitute a polynomial, rational function or series."""
        if isinstance(v, (int, Fraction)):
            dv = self.den(v)
            if dv == 0:
                raise ZeroDivisionError("pole of the rational function")
            return self.num(v) / dv
        if isinstance(v, PowerSeries):
            return self.num(v) / self.den(v)
        return compose_ratfun(self, RatFun._lift(v))

    def to_series(self, var: str, order: int, scale: int = 1) -> PowerSeries:
        """Laurent expansion at 0 known below ``x^order``."""
        dv = self.den.valuation()
        nv = self.num.valuation() if not self.num.is_zero() else order
        n = self.num.to_series(var, order + dv)
        d = self.den.to_series(var, order + dv + max(0, nv - dv) + dv + 1)
        s = n / d
        if s.order < order:
            raise SeriesError("internal precision loss")
        return s.truncate_num(order) if s.order > order else s


def compose_ratfun(f: RatFun, g: RatFun) -> RatFun:
    """``f(g)`` by homogenizing numerator and denominator."""
    a, b = g.num, g.den
    dn = max(f.num.degree, 0)
    dd = max(f.den.degree, 0)
    m = max(dn, dd)
    apow = [Poly([1])]
    bpow = [Poly([1])]
    for _ in range(m):
        apow.append(apow[-1] * a)
        bpow.append(bpow[-1] * b)

    def hom(p: Poly, deg: int) -> Poly:
        r = Poly()
        for i, c in enumerate(p.coeffs):
            if c:
                r = r + apow[i] * bpow[deg - i] * c
        return r

    num = hom(f.num, dn)
    den = hom(f.den, dd)
    if dd > dn:
        num = num * bpow[dd - dn]
    elif dn > dd:
        den = den * bpow[dn - dd]
    return RatFun(num, den)


def rat(num: Iterable[Scalar] | Poly | Scalar, den: Iterable[Scalar] | Poly | Scalar | None = None) -> RatFun:
    return RatFun(num, den)


X = Poly.x()


# -- multivariate ---------------------------------------------------------------

class MPoly:
    """Sparse polynomial ``{exponent tuple: coefficient}`` in named variables."""

    __slots__ = ("vars", "terms")

    def __init__(self, variables: Sequence[str], terms: Mapping[tuple, Scalar] | None = None):
        self.vars = tuple(variables)
        t = {}
        for e, c in (terms or {}).items():
            c = _f(c)
            if c:
                e = tuple(e)
                if len(e) != len(self.vars):
                    raise ValueError("exponent tuple length does not match the variables")
                t[e] = t.get(e, Fraction(0)) + c
                if not t[e]:
                    del t[e]
        self.terms = t

    @classmethod
    def var(cls, variables: Sequence[str], name: str) -> "MPoly":
        e = tuple(1 if v == name else 0 for v in variables)
        return cls(variables, {e: 1})

    @classmethod
    def gens(cls, variables: Sequence[str]) -> tuple["MPoly", ...]:
        return tuple(cls.var(variables, v) for v in variables)

    def is_zero(self) -> bool:
        return not self.terms

    def _lift(self, o) -> "MPoly":
        if isinstance(o, MPoly):
            if o.vars != self.vars:
                raise ValueError("variable mismatch")
            return o
        if isinstance(o, (int, Fraction)):
            return MPoly(self.vars, {(0,) * len(self.vars): o})
        return NotImplemented

    def __eq__(self, other) -> bool:
        o = self._lift(other)
        if o is NotImplemented:
            return False
        return self.terms == o.terms

    def __hash__(self):
        return hash((self.vars, frozenset(self.terms.items())))

    def __add__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return o
        t = dict(self.terms)
        for e, c in o.terms.items():
            t[e] = t.get(e, Fraction(0)) + c
        return MPoly(self.vars, t)

    __radd__ = __add__

    def __neg__(self):
        return MPoly(self.vars, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return o
        t: dict = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in o.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                t[e] = t.get(e, Fraction(0)) + c1 * c2
        return MPoly(self.vars, t)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "MPoly":
        r = MPoly(self.vars, {(0,) * len(self.vars): 1})
        for _ in range(n):
            r = r * self
        return r

    def degree_in(self, i: int) -> int:
        return max((e[i] for e in self.terms), default=0)

    def __repr__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for e in sorted(self.terms, reverse=True):
            mono = "*".join(f"{v}^{k}" for v, k in zip(self.vars, e) if k)
            parts.append(f"{self.terms[e]}" + (f"*{mono}" if mono else ""))
        return " + ".join(parts)

    def evaluate(self, values: Sequence, one=None):
        """Evaluate with ``values[i]`` bound to the i-th variable.

        Values may be scalars, polynomials, rational functions, series or
        anything else supporting ring operations with rationals.
        """
        if len(values) != len(self.vars):
            raise ValueError("wrong number of values")
        cache: list[dict[int, object]] = [dict() for _ in values]

        def pw(i: int, k: int):
            c = cache[i]
            if k not in c:
                if k == 1:
                    c[1] = values[i]
                else:
                    h = k // 2
                    c[k] = pw(i, h) * pw(i, k - h)
            return c[k]

        total = None
        for e, c in self.terms.items():
            term = None
            for i, k in enumerate(e):
                if k:
                    p = pw(i, k)
                    term = p if term is None else term * p
            if term is None:
                term = c if one is None else one * c
            else:
                term = term * c
            total = term if total is None else total + term
        if total is None:
            return Fraction(0) if one is None else one * 0
        return total

    def substitute_ratfun(self, values: Sequence[RatFun]) -> RatFun:
        """Substitute rational functions of one variable, clearing denominators
        once so the result needs a single gcd."""
        vals = [RatFun._lift(v) for v in values]
        degs = [self.degree_in(i) for i in range(len(self.vars))]
        npow = [[Poly([1])] for _ in vals]
        dpow = [[Poly([1])] for _ in vals]
        for i, v in enumerate(vals):
            for _ in range(degs[i]):
                npow[i].append(npow[i][-1] * v.num)
                dpow[i].append(dpow[i][-1] * v.den)
        acc = Poly()
        for e, c in self.terms.items():
            t = Poly([c])
            for i, k in enumerate(e):
                if degs[i]:
                    t = t * npow[i][k] * dpow[i][degs[i] - k]
            acc = acc + t
        den = Poly([1])
        for i in range(len(vals)):
            den = den * dpow[i][degs[i]]
        return RatFun(acc, den)

    def normalized(self) -> tuple["MPoly", Fraction]:
        """Scale to integer coefficients with content 1 and a positive
        coefficient on the lexicographically largest monomial."""
        if not self.terms:
            return self, Fraction(1)
        num = 0
        den = 1
        for c in self.terms.values():
            num = math.gcd(num, c.numerator)
            den = den * c.denominator // math.gcd(den, c.denominator)
        k = Fraction(den, num)
        if self.terms[max(self.terms)] < 0:
            k = -k
        return MPoly(self.vars, {e: c * k for e, c in self.terms.items()}), k


def substitute(p: MPoly, values: Sequence) -> object:
    """Substitute values for all variables of ``p``."""
    if values and all(isinstance(v, (RatFun, Poly, int, Fraction)) for v in values) and any(
            isinstance(v, (RatFun, Poly)) for v in values):
        return p.substitute_ratfun(values)
    return p.evaluate(values)


def curve_membership(p: MPoly, param: Sequence) -> bool:
    """True when the parametrization ``param`` lies on ``p = 0``."""
    r = substitute(p, param)
    if isinstance(r, (RatFun, Poly, MPoly, PowerSeries)):
        return r.is_zero()
    return r == 0


def invert_numerator(p: MPoly) -> MPoly:
    """Numerator of ``p(1/v1, 1/v2, ...)``: multiply by the partial degrees."""
    degs = [p.degree_in(i) for i in range(len(p.vars))]
    return MPoly(p.vars, {tuple(d - k for d, k in zip(degs, e)): c for e, c in p.terms.items()})


def equate_under_inversion(p: MPoly, q: MPoly) -> tuple[bool, Fraction | None]:
    """Whether ``q`` is a constant multiple of the numerator of ``p(1/u, 1/v)``.

    Returns ``(verdict, c)`` with ``q = c * numerator`` when the verdict holds.
    """
    inv = invert_numerator(p)
    a, ka = inv.normalized()
    b, kb = MPoly(p.vars, q.terms).normalized() if q.vars == p.vars else q.normalized()
    if a.terms != b.terms:
        return False, None
    return True, ka / kb


def mpoly_to_text(p: MPoly) -> str:
    lines = ["mpoly " + " ".join(p.vars)]
    for e in sorted(p.terms):
        c = p.terms[e]
        lines.append(f"{c.numerator}/{c.denominator} " + " ".join(str(k) for k in e))
    return "\n".join(lines) + "\n"


def mpoly_from_text(text: str) -> MPoly:
    lines = [ln for ln in text.splitlines() if ln.strip() and not ln.lstrip().startswith("#")]
    if not lines or lines[0].split()[0] != "mpoly":
        raise ValueError("missing mpoly header")
    variables = lines[0].split()[1:]
    terms: dict = {}
    for ln in lines[1:]:
        parts = ln.split()
        if len(parts) != len(variables) + 1:
            raise ValueError(f"bad mpoly line: {ln!r}")
        e = tuple(int(k) for k in parts[1:])
        if any(k < 0 for k in e):
            raise ValueError("negative exponent in mpoly line")
        terms[e] = terms.get(e, Fraction(0)) + Fraction(parts[0])
    return MPoly(variables, terms)
