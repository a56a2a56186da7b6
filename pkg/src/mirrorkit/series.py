"""Exact truncated power series with rational coefficients.

A series carries a variable name, a scale ``s`` (exponents live on the lattice
``(1/s)Z``), a valuation, a dense coefficient list and a truncation order
``O``: every coefficient with exponent numerator below ``O`` is known exactly,
nothing at or above it is claimed.  Laurent and Puiseux series are covered by
negative valuations and scales larger than one.

Log-polynomial series ``sum_j c_j(x) (ln x)^j`` are provided by
:class:`LogSeries`.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Callable, Iterable, Iterator, Sequence, Union

Scalar = Union[int, Fraction]


class SeriesError(ValueError):
    """Raised for operations whose preconditions fail."""


def _frac(c) -> Fraction:
    if isinstance(c, Fraction):
        return c
    if isinstance(c, int):
        return Fraction(c)
    raise TypeError(f"expected an exact rational, got {type(c).__name__}")


def _scaled_ints(cs: Sequence[Fraction]) -> tuple[list[int], int]:
    den = 1
    for c in cs:
        d = c.denominator
        if d != 1:
            den = den * d // math.gcd(den, d)
    if den == 1:
        return [c.numerator for c in cs], 1
    return [c.numerator * (den // c.denominator) for c in cs], den


def convolve(a: Sequence[Fraction], b: Sequence[Fraction], n: int) -> list[Fraction]:
    """First ``n`` coefficients of the Cauchy product of ``a`` and ``b``."""
    la, lb = min(len(a), n), min(len(b), n)
    if la == 0 or lb == 0 or n <= 0:
        return [Fraction(0)] * max(n, 0)
    ia, da = _scaled_ints(a[:la])
    ib, db = _scaled_ints(b[:lb])
    if la > lb:
        ia, ib, la, lb = ib, ia, lb, la
    out = []
    for k in range(n):
        lo = max(0, k - lb + 1)
        hi = min(k, la - 1)
        s = 0
        for i in range(lo, hi + 1):
            ai = ia[i]
            if ai:
                s += ai * ib[k - i]
        out.append(s)
    den = da * db
    if den == 1:
        return [Fraction(s) for s in out]
    return [Fraction(s, den) for s in out]


def _spread(cs: Sequence[Fraction], k: int) -> list[Fraction]:
    if k == 1 or not cs:
        return list(cs)
    out = [Fraction(0)] * ((len(cs) - 1) * k + 1)
    out[::k] = cs
    return out


class PowerSeries:
    """Truncated series ``sum_n c_n x^(n/scale)`` known for ``n < order``."""

    __slots__ = ("var", "scale", "val", "coeffs", "order")

    def __init__(self, var: str, coeffs: Iterable[Scalar], val: int = 0,
                 order: int | None = None, scale: int = 1):
        cs = [_frac(c) for c in coeffs]
        if scale < 1:
            raise SeriesError("scale must be a positive integer")
        if order is None:
            order = val + len(cs)
        if val + len(cs) > order:
            cs = cs[: max(order - val, 0)]
        self.var = var
        self.scale = scale
        self.val = val
        self.coeffs = cs
        self.order = order
        self._normalize()

    # -- construction -------------------------------------------------

    @classmethod
    def _raw(cls, var, scale, val, coeffs, order) -> "PowerSeries":
        s = object.__new__(cls)
        s.var, s.scale, s.val, s.coeffs, s.order = var, scale, val, coeffs, order
        s._normalize()
        return s

    @classmethod
    def constant(cls, var: str, c: Scalar, order: int, scale: int = 1) -> "PowerSeries":
        return cls._raw(var, scale, 0, [_frac(c)], order)

    @classmethod
    def monomial(cls, var: str, exponent: Scalar, c: Scalar = 1,
                 order: int | None = None) -> "PowerSeries":
        """``c x^exponent``; ``order`` is the exponent numerator bound on the
        lattice of the exponent's denominator (default: one step past it)."""
        e = _frac(exponent)
        s = e.denominator
        n = e.numerator
        return cls._raw(var, s, n, [_frac(c)], n + 1 if order is None else order)

    @classmethod
    def from_dict(cls, var: str, terms: dict, order: Fraction | int) -> "PowerSeries":
        """Build from ``{exponent: coefficient}`` known below exponent ``order``."""
        exps = [_frac(e) for e in terms] + [_frac(order)]
        s = 1
        for e in exps:
            s = s * e.denominator // math.gcd(s, e.denominator)
        o = _frac(order) * s
        if o.denominator != 1:
            raise SeriesError("order not on the lattice")
        nums = {int(_frac(e) * s): _frac(c) for e, c in terms.items()}
        nonzero = [n for n, c in nums.items() if c]
        v = min(nonzero) if nonzero else int(o)
        top = max(nonzero) + 1 if nonzero else v
        cs = [nums.get(n, Fraction(0)) for n in range(v, min(top, int(o)))]
        return cls._raw(var, s, v, cs, int(o))

    # -- invariants -----------------------------------------------------

    def _normalize(self) -> None:
        cs = self.coeffs
        i = 0
        while i < len(cs) and cs[i] == 0:
            i += 1
        if i == len(cs):
            self.coeffs = []
            self.val = self.order
        else:
            j = len(cs)
            while cs[j - 1] == 0:
                j -= 1
            self.coeffs = cs[i:j]
            self.val += i
        g = math.gcd(self.scale, self.order)
        if g > 1 and self.coeffs:
            g = math.gcd(g, self.val)
            for k, c in enumerate(self.coeffs):
                if c and k % g:
                    g = math.gcd(g, k)
                    if g == 1:
                        break
        if g > 1:
            self.coeffs = self.coeffs[::g]
            self.scale //= g
            self.val //= g
            self.order //= g

    # -- accessors ------------------------------------------------------

    def is_zero(self) -> bool:
        """True when every known coefficient vanishes."""
        return not self.coeffs

    @property
    def valuation(self) -> Fraction:
        return Fraction(self.val, self.scale)

    @property
    def precision(self) -> Fraction:
        """Exponent below which the series is known."""
        return Fraction(self.order, self.scale)

    def coeff(self, exponent: Scalar) -> Fraction:
        e = _frac(exponent) * self.scale
        if e >= self.order:
            raise SeriesError(f"coefficient at {exponent} is beyond the truncation order")
        if e.denominator != 1:
            return Fraction(0)
        n = int(e) - self.val
        if 0 <= n < len(self.coeffs):
            return self.coeffs[n]
        return Fraction(0)

    def coeff_num(self, n: int) -> Fraction:
        """Coefficient at exponent ``n/scale``."""
        if n >= self.order:
            raise SeriesError("coefficient beyond the truncation order")
        k = n - self.val
        if 0 <= k < len(self.coeffs):
            return self.coeffs[k]
        return Fraction(0)

    def terms(self) -> Iterator[tuple[Fraction, Fraction]]:
        """Nonzero ``(exponent, coefficient)`` pairs in increasing order."""
        for k, c in enumerate(self.coeffs):
            if c:
                yield Fraction(self.val + k, self.scale), c

    def coefficient_list(self, start: int, stop: int) -> list[Fraction]:
        """Coefficients at integer exponents ``start..stop-1`` (scale 1 only)."""
        if self.scale != 1:
            raise SeriesError("coefficient_list needs integer exponents")
        return [self.coeff_num(n) for n in range(start, stop)]

    def leading(self) -> Fraction:
        if not self.coeffs:
            raise SeriesError("zero series has no leading coefficient")
        return self.coeffs[0]

    def _dense(self, start: int, stop: int) -> list[Fraction]:
        """Coefficient numerators ``start..stop-1`` with implicit zeros."""
        z = Fraction(0)
        out = []
        cs, v = self.coeffs, self.val
        for n in range(start, stop):
            k = n - v
            out.append(cs[k] if 0 <= k < len(cs) else z)
        return out

    def rescaled(self, scale: int) -> "PowerSeries":
        """Same series on a finer lattice (``scale`` a multiple of the current)."""
        if scale % self.scale:
            raise SeriesError("target scale must be a multiple")
        k = scale // self.scale
        s = object.__new__(PowerSeries)
        s.var, s.scale, s.val, s.coeffs, s.order = (
            self.var, scale, self.val * k, _spread(self.coeffs, k), self.order * k)
        return s

    def truncate(self, exponent: Scalar) -> "PowerSeries":
        """Drop everything at or above ``exponent``."""
        e = _frac(exponent) * self.scale
        o = math.ceil(e)
        return self.truncate_num(o)

    def truncate_num(self, o: int) -> "PowerSeries":
        if o >= self.order:
            return self
        return PowerSeries._raw(self.var, self.scale, self.val,
                                self.coeffs[: max(o - self.val, 0)], o)

    def __repr__(self) -> str:
        parts = []
        for e, c in self.terms():
            parts.append(f"{c}*{self.var}^{e}")
        body = " + ".join(parts) if parts else "0"
        return f"{body} + O({self.var}^{self.precision})"

    # -- equality -------------------------------------------------------

    def __eq__(self, other) -> bool:
        if isinstance(other, PowerSeries):
            return (self.var == other.var and self.scale == other.scale
                    and self.val == other.val and self.order == other.order
                    and self.coeffs == other.coeffs)
        return NotImplemented

    def __hash__(self):
        return hash((self.var, self.scale, self.val, self.order, tuple(self.coeffs)))

    def agrees_with(self, other: "PowerSeries") -> bool:
        """Equal on the common range of validity."""
        d = self - other
        return d.is_zero()

    # -- arithmetic -------------------------------------------------------

    def _coerce(self, other) -> "PowerSeries":
        if isinstance(other, PowerSeries):
            if other.var != self.var:
                raise SeriesError(f"variable mismatch: {self.var} vs {other.var}")
            return other
        if isinstance(other, (int, Fraction)):
            return PowerSeries._raw(self.var, self.scale, 0, [_frac(other)],
                                    max(self.order, 1) if self.order > 0 else 1 << 62)
        return NotImplemented

    @staticmethod
    def _unify(a: "PowerSeries", b: "PowerSeries"):
        if a.scale == b.scale:
            return a, b
        s = a.scale * b.scale // math.gcd(a.scale, b.scale)
        return a.rescaled(s), b.rescaled(s)

    def __add__(self, other):
        if isinstance(other, (int, Fraction)):
            return self._add_scalar(_frac(other))
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        a, b = self._unify(self, o)
        order = min(a.order, b.order)
        lo = min(a.val, b.val, order)
        top = min(order, max(a.val + len(a.coeffs), b.val + len(b.coeffs)))
        da = a._dense(lo, top)
        db = b._dense(lo, top)
        return PowerSeries._raw(a.var, a.scale, lo, [x + y for x, y in zip(da, db)], order)

    def _add_scalar(self, c: Fraction) -> "PowerSeries":
        if c == 0:
            return self
        if self.order <= 0:
            raise SeriesError("constant term is beyond the truncation order")
        lo = min(self.val, 0)
        top = max(self.val + len(self.coeffs), 1)
        cs = self._dense(lo, top)
        cs[-lo] += c
        return PowerSeries._raw(self.var, self.scale, lo, cs, self.order)

    __radd__ = __add__

    def __neg__(self):
        return PowerSeries._raw(self.var, self.scale, self.val, [-c for c in self.coeffs], self.order)

    def __sub__(self, other):
        if isinstance(other, (int, Fraction)):
            return self._add_scalar(-_frac(other))
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            c = _frac(other)
            return PowerSeries._raw(self.var, self.scale, self.val, [c * x for x in self.coeffs], self.order)
        if not isinstance(other, PowerSeries):
            return NotImplemented
        o = self._coerce(other)
        a, b = self._unify(self, o)
        val = a.val + b.val
        order = min(a.order + b.val, b.order + a.val)
        n = order - val
        cs = convolve(a.coeffs, b.coeffs, n) if n > 0 else []
        return PowerSeries._raw(a.var, a.scale, val, cs, order)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            c = _frac(other)
            if c == 0:
                raise ZeroDivisionError("division by zero")
            return self * (1 / c)
        if not isinstance(other, PowerSeries):
            return NotImplemented
        return divide(self, self._coerce(other))

    def __rtruediv__(self, other):
        if isinstance(other, (int, Fraction)):
            return inverse(self) * _frac(other)
        return NotImplemented

    def __pow__(self, e):
        if isinstance(e, int):
            return pow_rational(self, Fraction(e))
        if isinstance(e, Fraction):
            return pow_rational(self, e)
        return NotImplemented

    def mul_monomial(self, exponent: Scalar) -> "PowerSeries":
        """Multiply by ``x^exponent``."""
        e = _frac(exponent)
        s = self.scale * e.denominator // math.gcd(self.scale, e.denominator)
        a = self.rescaled(s)
        sh = int(e * s)
        return PowerSeries._raw(a.var, s, a.val + sh, list(a.coeffs), a.order + sh)

    def rename(self, var: str) -> "PowerSeries":
        return PowerSeries._raw(var, self.scale, self.val, list(self.coeffs), self.order)


def series_from_coeffs(var: str, coeffs: Sequence[Scalar], order: int | None = None) -> PowerSeries:
    """Integer-exponent series ``sum coeffs[n] x^n`` known below ``order``."""
    return PowerSeries(var, coeffs, 0, len(coeffs) if order is None else order)


def zero(var: str, order: int, scale: int = 1) -> PowerSeries:
    return PowerSeries._raw(var, scale, order, [], order)


def one(var: str, order: int) -> PowerSeries:
    return PowerSeries.constant(var, 1, order)


def variable(var: str, order: int) -> PowerSeries:
    return PowerSeries._raw(var, 1, 1, [Fraction(1)], order)


# -- division, powers, exp/log --------------------------------------------

def inverse(f: PowerSeries) -> PowerSeries:
    if f.is_zero():
        raise ZeroDivisionError("inverse of a series with no known nonzero term")
    one_ = PowerSeries._raw(f.var, f.scale, 0, [Fraction(1)], 1 << 62)
    return divide(one_, f)


def divide(f: PowerSeries, g: PowerSeries) -> PowerSeries:
    """``f / g``; ``g`` must have a known nonzero leading term."""
    if g.is_zero():
        raise ZeroDivisionError("division by a series with no known nonzero term")
    a, b = PowerSeries._unify(f, g)
    vb = b.val
    pb = b.order - vb
    val = a.val - vb
    order = min(a.order - vb, val + pb)
    n = order - val
    if n <= 0:
        return PowerSeries._raw(a.var, a.scale, order, [], order)
    num = a._dense(a.val, a.val + n)
    den = b.coeffs[:n]
    inv0 = 1 / den[0]
    ld = len(den)
    out: list[Fraction] = []
    for k in range(n):
        s = num[k]
        for i in range(1, min(k, ld - 1) + 1):
            di = den[i]
            if di:
                s -= di * out[k - i]
        out.append(s * inv0)
    return PowerSeries._raw(a.var, a.scale, val, out, order)


def _unit_power(cs: Sequence[Fraction], e: Fraction, n: int) -> list[Fraction]:
    """First ``n`` coefficients of ``(sum cs)^e`` where ``cs[0] == 1``."""
    u = [Fraction(1)] + [Fraction(0)] * (n - 1)
    lc = len(cs)
    nz = [k for k in range(1, min(lc, n)) if cs[k]]
    e1 = e + 1
    for m in range(1, n):
        s = Fraction(0)
        for k in nz:
            if k > m:
                break
            s += (e1 * k - m) * cs[k] * u[m - k]
        u[m] = s / m
    return u


def pow_rational(f: PowerSeries, e: Scalar) -> PowerSeries:
    """``f^e`` for rational ``e``.

    For non-integer ``e`` the leading coefficient must be 1; no root of a
    constant is ever chosen implicitly.
    """
    e = _frac(e)
    if f.is_zero():
        raise SeriesError("power of a series with no known nonzero term")
    c = f.coeffs[0]
    if e.denominator != 1 and c != 1:
        raise SeriesError("leading coefficient must be 1 for a fractional power")
    lead_exp = Fraction(f.val, f.scale) * e
    s = f.scale * lead_exp.denominator // math.gcd(f.scale, lead_exp.denominator)
    g = f.rescaled(s)
    p = g.order - g.val
    cs = g.coeffs if c == 1 else [x / c for x in g.coeffs]
    u = _unit_power(cs, e, p)
    if c != 1:
        ce = c ** int(e)
        u = [ce * x for x in u]
    v = int(lead_exp * s)
    return PowerSeries._raw(f.var, s, v, u, v + p)


def exp_series(f: PowerSeries) -> PowerSeries:
    """``exp(f)`` for ``f`` with positive valuation."""
    if f.val <= 0 and not f.is_zero():
        raise SeriesError("exp needs a series without constant or negative terms")
    n = f.order
    cs = f._dense(0, n)
    out = [Fraction(1)] + [Fraction(0)] * (n - 1)
    kc = [(k, k * cs[k]) for k in range(1, n) if cs[k]]
    for m in range(1, n):
        s = Fraction(0)
        for k, w in kc:
            if k > m:
                break
            s += w * out[m - k]
        out[m] = s / m
    return PowerSeries._raw(f.var, f.scale, 0, out, n)


def log_series(f: PowerSeries) -> PowerSeries:
    """``log(f)`` for ``f`` with constant term 1."""
    if f.val != 0 or f.coeffs[0] != 1:
        raise SeriesError("log needs constant term 1")
    n = f.order
    cs = f._dense(0, n)
    out = [Fraction(0)] * n
    for m in range(1, n):
        s = m * cs[m]
        for k in range(1, m):
            if cs[m - k]:
                s -= k * out[k] * cs[m - k]
        out[m] = s / m
    return PowerSeries._raw(f.var, f.scale, 0, out, n)


# -- derivations -------------------------------------------------------------

def derivative(f: PowerSeries) -> PowerSeries:
    """``d/dx``."""
    s = f.scale
    cs = [c * Fraction(f.val + k, s) for k, c in enumerate(f.coeffs)]
    return PowerSeries._raw(f.var, s, f.val - s, cs, f.order - s)


def theta_derivative(f: PowerSeries) -> PowerSeries:
    """``x d/dx``; exact on the whole known range."""
    s = f.scale
    cs = [c * Fraction(f.val + k, s) for k, c in enumerate(f.coeffs)]
    return PowerSeries._raw(f.var, s, f.val, cs, f.order)


def schwarzian(f: PowerSeries,
               d: Callable[[PowerSeries], PowerSeries] = derivative) -> PowerSeries:
    """``f'''/f' - 3/2 (f''/f')^2`` for a derivation ``d``."""
    d1 = d(f)
    d2 = d(d1)
    d3 = d(d2)
    r = d2 / d1
    return d3 / d1 - Fraction(3, 2) * r * r


# -- substitution ------------------------------------------------------------

def compose(f, g: PowerSeries) -> PowerSeries:
    """``f(g)``.

    ``f`` is a :class:`PowerSeries` (then ``g`` needs positive valuation) or
    any object with a dense ``coeffs`` list read as an exact polynomial (then
    ``g`` may carry a constant term).
    """
    if not isinstance(f, PowerSeries):
        return _horner(list(f.coeffs), g, None)
    if g.is_zero() or g.val <= 0:
        raise SeriesError("inner series must have positive valuation")
    if f.scale > 1:
        if g.coeffs[0] != 1:
            raise SeriesError("fractional outer exponents need a unit leading coefficient inside")
        g = pow_rational(g, Fraction(1, f.scale))
        f = PowerSeries._raw(f.var, 1, f.val, list(f.coeffs), f.order)
    vf = f.val
    big = f.order - vf
    target = min(big * g.val, g.order)
    body = _horner(f.coeffs, g, target)
    if vf:
        body = body * pow_rational(g, vf)
    return body


def _horner(cs: list, g: PowerSeries, target: int | None) -> PowerSeries:
    if target is not None:
        top = len(cs) - 1
        if g.val > 0:
            top = min(top, (target - 1) // g.val)
        cs = cs[: top + 1]
    if target is None:
        target = g.order
    r = PowerSeries._raw(g.var, g.scale, 0, [_frac(cs[-1])] if cs else [], 1 << 62)
    for c in reversed(cs[:-1]):
        r = (r * g).truncate_num(target)
        r = r._add_scalar(_frac(c))
    if r.order > target:
        r = r.truncate_num(target)
    return r


def revert(f: PowerSeries, var: str | None = None) -> PowerSeries:
    """Compositional inverse of ``f = c x + ...`` (``c != 0``).

    Uses Lagrange inversion: ``[y^n] f^{-1} = (1/n) [x^(n-1)] (x/f)^n``.
    """
    if f.scale != 1 or f.val != 1:
        raise SeriesError("revert needs an integer-exponent series of valuation exactly 1")
    var = f.var if var is None else var
    n = f.order
    p = n - 1
    h = divide(PowerSeries._raw(f.var, 1, 1, [Fraction(1)], 1 << 62), f)
    hc = h._dense(0, p)
    out = [Fraction(0)] * n
    pw = [Fraction(1)] + [Fraction(0)] * (p - 1)
    for m in range(1, n):
        pw = convolve(pw, hc, p)
        out[m] = pw[m - 1] / m
    return PowerSeries._raw(var, 1, 0, out, n)


def hadamard(f: PowerSeries, g: PowerSeries) -> PowerSeries:
    """Coefficient-wise product of two power series in nonnegative integer powers."""
    for h in (f, g):
        if h.scale != 1 or (h.val < 0 and not h.is_zero()):
            raise SeriesError("hadamard needs integer exponents and no negative powers")
    n = min(f.order, g.order)
    a = f._dense(0, n)
    b = g._dense(0, n)
    return PowerSeries._raw(f.var, 1, 0, [x * y for x, y in zip(a, b)], n)


def substitute_power(f: PowerSeries, k: int) -> PowerSeries:
    """``f(x^k)`` for a positive integer ``k``."""
    if k < 1:
        raise SeriesError("power must be positive")
    return PowerSeries._raw(f.var, f.scale, f.val * k, _spread(f.coeffs, k), f.order * k)


def scale_argument(f: PowerSeries, a: Scalar) -> PowerSeries:
    """``f(a x)`` for integer exponents."""
    if f.scale != 1:
        raise SeriesError("argument scaling needs integer exponents")
    a = _frac(a)
    cs = [c * a ** (f.val + k) for k, c in enumerate(f.coeffs)]
    return PowerSeries._raw(f.var, 1, f.val, cs, f.order)


# -- log-polynomial series ------------------------------------------------------

class LogSeries:
    """``sum_j parts[j] * L^j`` with ``L = ln(var)``."""

    __slots__ = ("var", "parts")

    def __init__(self, parts: Sequence[PowerSeries]):
        if not parts:
            raise SeriesError("a log series needs at least one part")
        self.var = parts[0].var
        self.parts = list(parts)

    @classmethod
    def log_var(cls, var: str, order: int) -> "LogSeries":
        return cls([zero(var, order), one(var, order)])

    @property
    def order(self) -> Fraction:
        return min(p.precision for p in self.parts)

    def is_zero(self) -> bool:
        return all(p.is_zero() for p in self.parts)

    def _lift(self, other) -> "LogSeries":
        if isinstance(other, LogSeries):
            return other
        if isinstance(other, PowerSeries):
            return LogSeries([other])
        return LogSeries([self.parts[0] * 0 + other])

    def __add__(self, other):
        o = self._lift(other)
        n = max(len(self.parts), len(o.parts))
        out = []
        for j in range(n):
            a = self.parts[j] if j < len(self.parts) else None
            b = o.parts[j] if j < len(o.parts) else None
            out.append(a + b if a is not None and b is not None else (a if b is None else b))
        return LogSeries(out)

    __radd__ = __add__

    def __neg__(self):
        return LogSeries([-p for p in self.parts])

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return LogSeries([p * other for p in self.parts])
        o = self._lift(other)
        out: list[PowerSeries | None] = [None] * (len(self.parts) + len(o.parts) - 1)
        for i, a in enumerate(self.parts):
            for j, b in enumerate(o.parts):
                t = a * b
                out[i + j] = t if out[i + j] is None else out[i + j] + t
        return LogSeries(out)

    __rmul__ = __mul__

    def derivative(self) -> "LogSeries":
        out = [derivative(p) for p in self.parts]
        for j in range(1, len(self.parts)):
            out[j - 1] = out[j - 1] + self.parts[j].mul_monomial(-1) * j
        return LogSeries(out)

    def theta(self) -> "LogSeries":
        out = [theta_derivative(p) for p in self.parts]
        for j in range(1, len(self.parts)):
            out[j - 1] = out[j - 1] + self.parts[j] * j
        return LogSeries(out)

    def __repr__(self) -> str:
        return " + ".join(f"({p!r})*L^{j}" for j, p in enumerate(self.parts))


# -- text format -----------------------------------------------------------------

def series_to_text(f: PowerSeries) -> str:
    """Canonical text: header line, then one line per nonzero term."""
    lines = [f"series {f.var} scale={f.scale} order={f.order}"]
    for k, c in enumerate(f.coeffs):
        if c:
            lines.append(f"  {f.val + k} {c.numerator}/{c.denominator}")
    return "\n".join(lines) + "\n"


def series_from_text(text: str) -> PowerSeries:
    lines = [ln for ln in text.splitlines() if ln.strip()]
    if not lines:
        raise SeriesError("empty series text")
    head = lines[0].split()
    if len(head) != 4 or head[0] != "series":
        raise SeriesError(f"bad series header: {lines[0]!r}")
    var = head[1]
    try:
        kv = dict(h.split("=", 1) for h in head[2:])
        scale = int(kv["scale"])
        order = int(kv["order"])
    except (KeyError, ValueError) as exc:
        raise SeriesError(f"bad series header: {lines[0]!r}") from exc
    terms: list[tuple[int, Fraction]] = []
    for ln in lines[1:]:
        parts = ln.split()
        if len(parts) != 2:
            raise SeriesError(f"bad term line: {ln!r}")
        try:
            n = int(parts[0])
            c = Fraction(parts[1])
        except ValueError as exc:
            raise SeriesError(f"bad term line: {ln!r}") from exc
        if terms and n <= terms[-1][0]:
            raise SeriesError("exponents must be strictly increasing")
        if n >= order:
            raise SeriesError("term beyond the truncation order")
        terms.append((n, c))
    if not terms:
        return PowerSeries._raw(var, scale, order, [], order)
    v = terms[0][0]
    cs = [Fraction(0)] * (terms[-1][0] - v + 1)
    for n, c in terms:
        cs[n - v] = c
    s = object.__new__(PowerSeries)
    s.var, s.scale, s.val, s.coeffs, s.order = var, scale, v, cs, order
    s._normalize()
    return s
