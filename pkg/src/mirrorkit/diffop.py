"""Linear differential operators with rational-function coefficients.

Operators are stored in D-form ``sum_k a_k(x) D^k`` with ``D = d/dx``; the
theta-form ``sum_k b_k(x) theta^k`` with ``theta = x D`` is available through
exact conversions.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import comb
from typing import Sequence, Union

from .linalg import PRIME, nullspace, rank_mod_p, rref
from .ratpoly import Poly, RatFun, poly_gcd
from .series import LogSeries, PowerSeries, SeriesError, derivative, hadamard

Scalar = Union[int, Fraction]
Coeff = Union[RatFun, Poly, int, Fraction]


class OperatorError(ValueError):
    pass


@lru_cache(maxsize=None)
def _stirling2(k: int) -> tuple[int, ...]:
    # theta^k = sum_j S(k, j) x^j D^j
    if k == 0:
        return (1,)
    prev = _stirling2(k - 1)
    out = [0] * (k + 1)
    for j, s in enumerate(prev):
        out[j] += j * s
        out[j + 1] += s
    return tuple(out)


@lru_cache(maxsize=None)
def _falling(k: int) -> tuple[int, ...]:
    # theta(theta-1)...(theta-k+1) as coefficients in theta
    out = [1]
    for i in range(k):
        nxt = [0] * (len(out) + 1)
        for j, c in enumerate(out):
            nxt[j + 1] += c
            nxt[j] -= i * c
        out = nxt
    return tuple(out)


def _rf(c: Coeff) -> RatFun:
    if isinstance(c, RatFun):
        return c
    return RatFun(c)


class DiffOp:
    """``sum_k coeffs[k] D^k`` in the variable ``var``."""

    __slots__ = ("var", "coeffs")

    def __init__(self, coeffs: Sequence[Coeff], var: str = "x"):
        cs = [_rf(c) for c in coeffs]
        while cs and cs[-1].is_zero():
            cs.pop()
        self.var = var
        self.coeffs = cs

    @classmethod
    def from_theta(cls, coeffs: Sequence[Coeff], var: str = "x") -> "DiffOp":
        out = [RatFun(0)] * len(coeffs)
        x = Poly.x()
        for k, b in enumerate(coeffs):
            b = _rf(b)
            if b.is_zero():
                continue
            for j, s in enumerate(_stirling2(k)):
                if s:
                    out[j] = out[j] + b * RatFun(x ** j * s)
        return cls(out, var)

    @property
    def order(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def theta_coeffs(self) -> list[RatFun]:
        """Exact coefficients of ``theta^k``."""
        out = [RatFun(0)] * len(self.coeffs)
        for k, a in enumerate(self.coeffs):
            if a.is_zero():
                continue
            ak = a / RatFun(Poly.x() ** k)
            for j, s in enumerate(_falling(k)):
                if s:
                    out[j] = out[j] + ak * s
        return out

    def __eq__(self, other) -> bool:
        return isinstance(other, DiffOp) and self.var == other.var and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.var, tuple(self.coeffs)))

    def __repr__(self) -> str:
        return " + ".join(f"[{c}]*D^{k}" for k, c in enumerate(self.coeffs) if not c.is_zero()) or "0"

    def __add__(self, other: "DiffOp") -> "DiffOp":
        n = max(len(self.coeffs), len(other.coeffs))
        z = RatFun(0)
        a = self.coeffs + [z] * (n - len(self.coeffs))
        b = other.coeffs + [z] * (n - len(other.coeffs))
        return DiffOp([p + q for p, q in zip(a, b)], self.var)

    def __neg__(self) -> "DiffOp":
        return DiffOp([-c for c in self.coeffs], self.var)

    def __sub__(self, other: "DiffOp") -> "DiffOp":
        return self + (-other)

    def __mul__(self, other) -> "DiffOp":
        if isinstance(other, DiffOp):
            return op_multiply(self, other)
        r = _rf(other)
        return DiffOp([r * c for c in self.coeffs], self.var)

    def __rmul__(self, other) -> "DiffOp":
        r = _rf(other)
        return DiffOp([r * c for c in self.coeffs], self.var)

    def monic(self) -> "DiffOp":
        lc = self.coeffs[-1]
        return DiffOp([c / lc for c in self.coeffs], self.var)

    def shift(self, c: Scalar, var: str | None = None) -> "DiffOp":
        """Recenter at ``x = c``: the result acts on functions of ``t = x - c``."""
        sub = RatFun(Poly([c, 1]))
        return DiffOp([a(sub) for a in self.coeffs], var or self.var)

    def polynomial_coeffs(self) -> list[Poly]:
        """Left multiple with polynomial coefficients, no common polynomial
        factor, integer content 1 and normalized sign (see :func:`_sign_key`)."""
        return _normalize_polys(_clear(self.coeffs))

    def normalized(self) -> "DiffOp":
        return DiffOp(self.polynomial_coeffs(), self.var)

    def theta_polynomial_coeffs(self) -> list[Poly]:
        """Theta-form left multiple with polynomial coefficients and the lowest
        power of ``x`` removed."""
        ps = _clear(self.theta_coeffs())
        v = min(p.valuation() for p in ps if not p.is_zero())
        ps = [Poly(p.coeffs[v:]) for p in ps]
        return _normalize_polys(ps, strip_gcd=False)

    def apply(self, f):
        return op_apply(self, f)


def _clear(cs: Sequence[RatFun]) -> list[Poly]:
    den = Poly([1])
    for c in cs:
        if c.den.degree > 0:
            den = den * c.den.exact_div(poly_gcd(den, c.den))
    return [c.num * den.exact_div(c.den) for c in cs]


def _sign_key(p: Poly) -> Fraction:
    # lowest-degree nonzero coefficient of the leading polynomial
    return p.coeffs[p.valuation()]


def _normalize_polys(ps: list[Poly], strip_gcd: bool = True) -> list[Poly]:
    if strip_gcd:
        g = Poly()
        for p in ps:
            if not p.is_zero():
                g = p if g.is_zero() else poly_gcd(g, p)
                if g.degree == 0:
                    break
        if g.degree > 0:
            ps = [p.exact_div(g) if not p.is_zero() else p for p in ps]
    content = Fraction(0)
    for p in ps:
        if not p.is_zero():
            c = p.content()
            content = c if content == 0 else Fraction(
                _gcd(content.numerator, c.numerator), _lcm(content.denominator, c.denominator))
    lead = next(p for p in reversed(ps) if not p.is_zero())
    k = 1 / content
    if _sign_key(lead) < 0:
        k = -k
    return [p * k for p in ps]


def _gcd(a: int, b: int) -> int:
    from math import gcd
    return gcd(a, b)


def _lcm(a: int, b: int) -> int:
    return a * b // _gcd(a, b)


def proportional(a: DiffOp, b: DiffOp) -> bool:
    """Equal up to a left factor that is a rational function."""
    return a.order == b.order and a.polynomial_coeffs() == b.polynomial_coeffs()


# -- constructors -------------------------------------------------------------------

def _theta_poly(roots_shift: Sequence[Fraction]) -> list[Fraction]:
    out = [Fraction(1)]
    for s in roots_shift:
        nxt = [Fraction(0)] * (len(out) + 1)
        for j, c in enumerate(out):
            nxt[j + 1] += c
            nxt[j] += s * c
        out = nxt
    return out


def hypergeometric_operator(upper: Sequence[Scalar], lower: Sequence[Scalar],
                            scale: Scalar = 1, var: str = "x") -> DiffOp:
    """``theta prod(theta + b_j - 1) - scale x prod(theta + a_i)``."""
    p = _theta_poly([Fraction(0)] + [Fraction(b) - 1 for b in lower])
    q = _theta_poly([Fraction(a) for a in upper])
    n = max(len(p), len(q))
    x = Poly.x()
    cs = []
    for k in range(n):
        pk = p[k] if k < len(p) else Fraction(0)
        qk = q[k] if k < len(q) else Fraction(0)
        cs.append(RatFun(Poly([pk]) - x * (Fraction(scale) * qk)))
    return DiffOp.from_theta(cs, var)


def theta_op(poly_coeffs: Sequence[Sequence[Scalar]], var: str = "x") -> DiffOp:
    """Operator from theta-form coefficient lists ``[[c0, c1, ...], ...]``."""
    return DiffOp.from_theta([Poly(c) for c in poly_coeffs], var)


def theta_product(polys: Sequence[Sequence[Scalar]], var: str = "x") -> DiffOp:
    """Product of theta polynomials with constant coefficients."""
    out = [Fraction(1)]
    for p in polys:
        nxt = [Fraction(0)] * (len(out) + len(p) - 1)
        for i, a in enumerate(out):
            for j, b in enumerate(p):
                nxt[i + j] += a * Fraction(b)
        out = nxt
    return DiffOp.from_theta([Poly([c]) for c in out], var)


# -- algebra ------------------------------------------------------------------------

def op_multiply(a: DiffOp, b: DiffOp) -> DiffOp:
    """Composition ``a . b``."""
    if a.var != b.var:
        raise OperatorError("variable mismatch")
    if a.is_zero() or b.is_zero():
        return DiffOp([], a.var)
    derivs = [list(b.coeffs)]
    for _ in range(a.order):
        derivs.append([c.derivative() for c in derivs[-1]])
    out = [RatFun(0)] * (a.order + b.order + 1)
    for i, ai in enumerate(a.coeffs):
        if ai.is_zero():
            continue
        for m in range(i + 1):
            cm = comb(i, m)
            for j, bj in enumerate(derivs[m]):
                if not bj.is_zero():
                    out[i - m + j] = out[i - m + j] + ai * bj * cm
    return DiffOp(out, a.var)


def op_apply(op: DiffOp, f):
    """Apply to a power series, a log series or a rational function."""
    if isinstance(f, RatFun) or isinstance(f, Poly):
        f = _rf(f)
        total = RatFun(0)
        d = f
        for k, a in enumerate(op.coeffs):
            if k:
                d = d.derivative()
            if not a.is_zero():
                total = total + a * d
        return total
    if isinstance(f, PowerSeries):
        if f.var != op.var:
            raise OperatorError("variable mismatch")
        return _apply_series(op, [f])[0]
    if isinstance(f, LogSeries):
        if f.var != op.var:
            raise OperatorError("variable mismatch")
        terms = []
        d = f
        for k, a in enumerate(op.coeffs):
            if k:
                d = d.derivative()
            if a.is_zero():
                continue
            terms.append(LogSeries([_mul_coeff(a, p) for p in d.parts]))
        if not terms:
            return LogSeries([f.parts[0] * 0])
        out = terms[0]
        for t in terms[1:]:
            out = out + t
        return out
    raise TypeError(f"cannot apply an operator to {type(f).__name__}")


def _mul_coeff(a: RatFun, s: PowerSeries) -> PowerSeries:
    """``a(x) * s`` with ``a`` expanded just far enough."""
    va = _valuation(a)
    if s.is_zero():
        need = va
    else:
        need = s.precision + va - s.valuation
    o = max(int(-(-need // 1)), va + 1)
    return a.to_series(s.var, o) * s


def _valuation(a: RatFun) -> int:
    return a.num.valuation() - a.den.valuation()


def _apply_series(op: DiffOp, fs: Sequence[PowerSeries]) -> list[PowerSeries]:
    out = []
    for f in fs:
        if f.precision <= op.order:
            raise OperatorError("series order is too small for the operator")
        d = f
        acc = None
        for k, a in enumerate(op.coeffs):
            if k:
                d = derivative(d)
            if a.is_zero():
                continue
            t = _mul_coeff(a, d)
            acc = t if acc is None else acc + t
        out.append(acc if acc is not None else f * 0)
    return out


# -- Frobenius solutions at a point of maximal unipotent monodromy -------------------

def _eps_mul(a: list[Fraction], b: list[Fraction], r: int) -> list[Fraction]:
    out = [Fraction(0)] * r
    for i, x in enumerate(a):
        if x:
            for j in range(r - i):
                out[i + j] += x * b[j]
    return out


def _eps_eval(p: list[Fraction], m: int, r: int) -> list[Fraction]:
    # p(m + eps) truncated at eps^r
    out = [Fraction(0)] * r
    for c in reversed(p):
        out = [m * out[i] + (out[i - 1] if i else 0) for i in range(r)]
        out[0] += c
    return out


@dataclass
class FrobeniusBasis:
    """``y_k = sum_{i<=k} tails[k-i] L^i / i!`` with ``tails[0] = y0``."""

    var: str
    tails: list[PowerSeries]

    @property
    def y0(self) -> PowerSeries:
        return self.tails[0]

    def solution(self, k: int) -> LogSeries:
        parts = []
        fact = 1
        for i in range(k + 1):
            if i:
                fact *= i
            parts.append(self.tails[k - i] * Fraction(1, fact))
        return LogSeries(parts)


def indicial_data(op: DiffOp) -> list[list[Fraction]]:
    """Theta-polynomials ``P_j`` with ``L ~ sum_j x^j P_j(theta)``."""
    ps = op.theta_polynomial_coeffs()
    top = max(p.degree for p in ps if not p.is_zero())
    out = []
    for j in range(top + 1):
        out.append([p.coeffs[j] if j < len(p.coeffs) else Fraction(0) for p in ps])
    return out


def frobenius_mum(op: DiffOp, order: int) -> FrobeniusBasis:
    """Frobenius basis at a point of maximal unipotent monodromy at 0.

    Fails unless the indicial polynomial is ``c rho^r``.
    """
    r = op.order
    if r < 1:
        raise OperatorError("operator of order zero")
    pj = indicial_data(op)
    p0 = pj[0]
    if any(p0[i] for i in range(r)) or not p0[r]:
        raise OperatorError("indicial polynomial is not a pure power: not a MUM point")
    c = p0[r]
    a: list[list[Fraction]] = [[Fraction(1)] + [Fraction(0)] * (r - 1)]
    jmax = len(pj) - 1
    for n in range(1, order):
        rhs = [Fraction(0)] * r
        for j in range(1, min(n, jmax) + 1):
            prev = a[n - j]
            if not any(prev):
                continue
            pv = _eps_eval(pj[j], n - j, r)
            t = _eps_mul(pv, prev, r)
            for i in range(r):
                rhs[i] -= t[i]
        # 1 / (c (n + eps)^r)
        inv = [Fraction(_binom_neg(r, i), n ** (r + i)) / c for i in range(r)]
        a.append(_eps_mul(rhs, inv, r))
    tails = [PowerSeries(op.var, [a[n][m] for n in range(order)], 0, order) for m in range(r)]
    return FrobeniusBasis(op.var, tails)


def _binom_neg(r: int, i: int) -> int:
    # binomial(-r, i)
    return (-1) ** i * comb(r + i - 1, i)


# -- guessing ----------------------------------------------------------------------

def _guess_rows(fs: Sequence[PowerSeries], r: int, d: int) -> tuple[list[list[Fraction]], int]:
    rows = []
    for f in fs:
        n_known = f.order
        cs = f._dense(0, n_known)
        for n in range(n_known):
            row = []
            for i in range(r + 1):
                for j in range(d + 1):
                    m = n - j
                    row.append(Fraction(m) ** i * cs[m] if m >= 0 and cs[m] else Fraction(0))
            rows.append(row)
    return rows, (r + 1) * (d + 1)


def guess_min_ode(fs: Sequence[PowerSeries] | PowerSeries, max_order: int, max_degree: int,
                  margin: int = 8) -> DiffOp | None:
    """Minimal operator (order first, then theta-degree) annihilating all series.

    The ansatz is ``sum_{i<=r, j<=d} c_ij x^j theta^i``.  Candidates are
    screened by a rank computation modulo a large prime and solved exactly
    over Q; the result is verified by applying it.  Returns ``None`` when
    nothing within the bounds annihilates the input.
    """
    if isinstance(fs, PowerSeries):
        fs = [fs]
    fs = list(fs)
    if not fs or all(f.is_zero() for f in fs):
        return None
    var = fs[0].var
    for f in fs:
        if f.scale != 1 or (f.val < 0 and not f.is_zero()) or f.var != var:
            raise OperatorError("guessing needs power series in one variable with integer exponents")
    for r in range(1, max_order + 1):
        for d in range(0, max_degree + 1):
            rows, n = _guess_rows(fs, r, d)
            if len(rows) < n + margin:
                raise OperatorError(f"not enough terms to guess order {r} degree {d}")
            rk = rank_mod_p(rows, n)
            if rk is not None and rk == n:
                continue
            basis = nullspace(rows, n)
            if not basis:
                continue
            vec = _min_leading_degree(basis, r, d)
            thetas = [Poly([vec[i * (d + 1) + j] for j in range(d + 1)]) for i in range(r + 1)]
            if thetas[-1].is_zero():
                continue
            op = DiffOp.from_theta(thetas, var).normalized()
            if all(op_apply(op, f).is_zero() for f in fs):
                return op
            return None
    return None


def _min_leading_degree(basis: list[list[Fraction]], r: int, d: int) -> list[Fraction]:
    n = (r + 1) * (d + 1)
    # columns: leading coefficient from high degree down, then the rest
    order = [r * (d + 1) + j for j in range(d, -1, -1)] + list(range(r * (d + 1)))
    perm = [[v[c] for c in order] for v in basis]
    red, _ = rref(perm, n)
    best = red[-1]
    out = [Fraction(0)] * n
    for k, c in enumerate(order):
        out[c] = best[k]
    return out


# -- exterior square -----------------------------------------------------------------

_EVAL_POINTS = (Fraction(7, 13), Fraction(-11, 17), Fraction(23, 5))


def _theta_vec(u: list[Poly]) -> list[Poly]:
    return [p.theta() for p in u]


def _apply_basis(u: list[Poly], b: list[Poly]) -> list[Poly]:
    # b4 * theta(e_i) expressed in the basis, applied to coefficient vector u
    b0, b1, b2, b3, b4 = b
    z = Poly()
    out = [z, z, z, z, z, z]
    u1, u2, u3, u4, u5, u6 = u

    def add(i, p):
        out[i] = out[i] + p

    add(1, u1 * b4)
    add(2, u2 * b4)
    add(3, u2 * b4)
    add(4, u3 * b4)
    add(2, -(u3 * b3))
    add(1, -(u3 * b2))
    add(0, -(u3 * b1))
    add(4, u4 * b4)
    add(5, u5 * b4)
    add(4, -(u5 * b3))
    add(3, -(u5 * b2))
    add(0, u5 * b0)
    add(5, -(u6 * b3))
    add(3, u6 * b1)
    add(1, u6 * b0)
    return out


def _rank_at(vecs: list[list[Poly]], x0: Fraction) -> int:
    from .linalg import rref as _r
    rows = [[p(x0) for p in v] for v in vecs]
    red, _ = _r(rows, 6)
    return len(red)


def exterior_square(op: DiffOp, max_degree: int = 80) -> DiffOp:
    """Minimal operator annihilating ``y1 y2' - y2 y1'`` for solutions of an
    order-4 operator (order 5 or 6)."""
    if op.order != 4:
        raise OperatorError("exterior square is implemented for order 4")
    b = op.theta_polynomial_coeffs()
    b4 = b[4]
    tb4 = b4.theta()
    one = Poly([1])
    z = Poly()
    us = [[one, z, z, z, z, z]]
    for k in range(6):
        u = us[-1]
        tu = _theta_vec(u)
        mu = _apply_basis(u, b)
        nxt = [b4 * tu[i] - tb4 * u[i] * k + mu[i] for i in range(6)]
        us.append(nxt)
        kk = len(us) - 1
        pts = [p for p in _EVAL_POINTS if b4(p) != 0][:2]
        if all(_rank_at(us, p) == kk + 1 for p in pts[:1]):
            continue
        rel = _polynomial_relation(us, b4, max_degree)
        if rel is not None:
            lt = DiffOp.from_theta(rel, op.var)
            res = op_multiply(lt, DiffOp([RatFun(Poly.x())], op.var))
            return res.normalized()
    raise OperatorError("no relation found for the exterior square")


def _polynomial_relation(us: list[list[Poly]], b4: Poly, max_degree: int) -> list[Poly] | None:
    k = len(us) - 1
    scaled = []
    for j, u in enumerate(us):
        f = b4 ** (k - j)
        scaled.append([p * f for p in u])
    for d in range(max_degree + 1):
        top = max(max((p.degree for p in v), default=0) for v in scaled) + d + 1
        ncols = (k + 1) * (d + 1)
        rows = []
        for comp in range(6):
            for m in range(top):
                row = []
                for j in range(k + 1):
                    p = scaled[j][comp]
                    pc = p.coeffs
                    for e in range(d + 1):
                        idx = m - e
                        row.append(pc[idx] if 0 <= idx < len(pc) else Fraction(0))
                if any(row):
                    rows.append(row)
        rk = rank_mod_p(rows, ncols)
        if rk is not None and rk == ncols:
            continue
        basis = nullspace(rows, ncols)
        if not basis:
            continue
        v = basis[0]
        return [Poly(v[j * (d + 1):(j + 1) * (d + 1)]) for j in range(k + 1)]
    return None


def symplectic_head_vanishes(op: DiffOp) -> bool:
    """Whether the monic order-4 operator satisfies
    ``a1 = a2 a3/2 - a3^3/8 + a2' - 3/4 a3 a3' - a3''/2``."""
    if op.order != 4:
        raise OperatorError("symplectic test needs order 4")
    m = op.monic()
    _, a1, a2, a3, _ = m.coeffs
    d3 = a3.derivative()
    rhs = (a2 * a3 * Fraction(1, 2) - a3 * a3 * a3 * Fraction(1, 8) + a2.derivative()
           - a3 * d3 * Fraction(3, 4) - d3.derivative() * Fraction(1, 2))
    return (a1 - rhs).is_zero()


# -- rational solutions ----------------------------------------------------------------

def rational_kernel(op: DiffOp, degree_bound: int) -> list[RatFun]:
    """Rational solutions whose numerator and denominator degrees are at most
    ``degree_bound``, with poles among the roots of the leading coefficient."""
    ps = op.polynomial_coeffs()
    r = len(ps) - 1
    lead = ps[-1]
    s = lead.exact_div(poly_gcd(lead, lead.derivative())).monic()
    m = degree_bound
    nmax = degree_bound + m * s.degree
    ts = [Poly([1])]
    sd = s.derivative()
    for i in range(r):
        ts.append(ts[-1].derivative() * s - sd * ts[-1] * (m + i))
    spow = [s ** i for i in range(r + 1)]
    cols = []
    for j in range(nmax + 1):
        acc = Poly()
        for k, pk in enumerate(ps):
            if pk.is_zero():
                continue
            inner = Poly()
            for i in range(k + 1):
                l = k - i
                if l > j:
                    continue
                ff = 1
                for t in range(l):
                    ff *= j - t
                nd = Poly([0] * (j - l) + [ff])
                inner = inner + nd * ts[i] * spow[r - i] * comb(k, i)
            acc = acc + pk * inner
        cols.append(acc)
    height = max((c.degree for c in cols), default=0) + 1
    rows = [[c.coeffs[e] if e < len(c.coeffs) else Fraction(0) for c in cols] for e in range(height)]
    basis = nullspace(rows, nmax + 1)
    if not basis:
        return []
    red, _ = rref(basis, nmax + 1)
    den = s ** m
    out = []
    for v in red:
        f = RatFun(Poly(v), den)
        num = f.num.primitive()
        if _sign_key(num) < 0:
            num = -num
        out.append(RatFun(num, f.den, True))
    return [f for f in out if f.num.degree <= degree_bound and f.den.degree <= degree_bound]


# -- Hadamard products of local solutions ---------------------------------------------------

def local_basis(op: DiffOp, terms: int) -> list[PowerSeries]:
    """Solutions with ``y_i^{(j)}(0) = delta_ij`` at an ordinary point 0."""
    r = op.order
    m = op.monic()
    for c in m.coeffs:
        if c.den(Fraction(0)) == 0:
            raise OperatorError("0 is not an ordinary point")
    a = [c.to_series(op.var, terms) for c in m.coeffs[:-1]]
    ac = [s._dense(0, terms) for s in a]
    sols = []
    for i in range(r):
        y = [Fraction(0)] * (terms + r)
        fact = 1
        for t in range(1, i + 1):
            fact *= t
        y[i] = Fraction(1, fact)
        for n in range(0, terms - r):
            s = Fraction(0)
            for k in range(r):
                ak = ac[k]
                for mm in range(n + 1):
                    if ak[mm]:
                        l = n - mm
                        ff = 1
                        for t in range(1, k + 1):
                            ff *= l + t
                        s += ak[mm] * ff * y[l + k]
            ff = 1
            for t in range(1, r + 1):
                ff *= n + t
            y[n + r] = -s / ff
        sols.append(PowerSeries(op.var, y[:terms], 0, terms))
    return sols


def hadamard_square_at_point(op: DiffOp, c: Scalar, terms: int, max_order: int,
                             max_degree: int) -> DiffOp | None:
    """Annihilator of all Hadamard products of local analytic solutions at ``c``.

    At an ordinary point the basis ``y_i^{(j)}(c) = delta_ij`` is used; at a
    point of maximal unipotent monodromy the analytic Frobenius solution.
    """
    local = op.shift(c) if c != 0 else op
    m = local.monic()
    if all(co.den(Fraction(0)) != 0 for co in m.coeffs):
        basis = local_basis(local, terms)
    else:
        basis = [frobenius_mum(local, terms).y0]
    prods = []
    for i in range(len(basis)):
        for j in range(i, len(basis)):
            prods.append(hadamard(basis[i], basis[j]))
    return guess_min_ode(prods, max_order, max_degree)


# -- text format --------------------------------------------------------------------------

def _poly_text(p: Poly) -> str:
    if p.is_zero():
        return "0"
    return " ".join(f"+ {c.numerator}/{c.denominator} x^{k}" for k, c in enumerate(p.coeffs) if c)


def _poly_parse(s: str) -> Poly:
    s = s.strip()
    if s == "0":
        return Poly()
    toks = s.split()
    cs: dict[int, Fraction] = {}
    i = 0
    while i < len(toks):
        if toks[i] != "+" or i + 2 >= len(toks) or not toks[i + 2].startswith("x^"):
            raise OperatorError(f"bad monomial list: {s!r}")
        k = int(toks[i + 2][2:])
        cs[k] = cs.get(k, Fraction(0)) + Fraction(toks[i + 1])
        i += 3
    top = max(cs) if cs else -1
    return Poly([cs.get(k, Fraction(0)) for k in range(top + 1)])


def diffop_to_text(op: DiffOp, form: str = "D") -> str:
    if form == "D":
        ps = op.polynomial_coeffs()
    elif form == "theta":
        ps = op.theta_polynomial_coeffs()
    else:
        raise OperatorError("form must be D or theta")
    lines = [f"diffop {op.var} order={len(ps) - 1} form={form}"]
    lines += [_poly_text(p) for p in ps]
    return "\n".join(lines) + "\n"


def diffop_from_text(text: str) -> DiffOp:
    lines = [ln for ln in text.splitlines() if ln.strip()]
    head = lines[0].split() if lines else []
    if len(head) != 4 or head[0] != "diffop":
        raise OperatorError("bad diffop header")
    var = head[1]
    kv = dict(h.split("=", 1) for h in head[2:])
    r = int(kv["order"])
    form = kv["form"]
    body = lines[1:]
    if len(body) != r + 1:
        raise OperatorError("wrong number of coefficient lines")
    ps = [_poly_parse(ln) for ln in body]
    if form == "D":
        return DiffOp(ps, var)
    if form == "theta":
        return DiffOp.from_theta(ps, var)
    raise OperatorError("form must be D or theta")
