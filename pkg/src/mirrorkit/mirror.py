"""Mirror-map quantities for operators with a point of maximal unipotent
monodromy at 0, plus the checks built on them."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .diffop import DiffOp, FrobeniusBasis, exterior_square, frobenius_mum, hypergeometric_operator, op_apply
from .ratpoly import MPoly, Poly, RatFun
from .series import (LogSeries, PowerSeries, SeriesError, compose, derivative, divide,
                     exp_series, pow_rational, revert, scale_argument, schwarzian,
                     substitute_power, theta_derivative)

HALF = Fraction(1, 2)


def theta4_operator(var: str = "x") -> DiffOp:
    """``theta^4 - 256 x (theta + 1/2)^4``."""
    return hypergeometric_operator([HALF] * 4, [1, 1, 1], 256, var)


@dataclass
class MirrorBundle:
    operator: DiffOp
    basis: FrobeniusBasis
    nome: PowerSeries
    mirror: PowerSeries
    yukawa: PowerSeries | None
    order: int


def nome_series(basis: FrobeniusBasis) -> PowerSeries:
    """``x exp(y1~/y0)``."""
    y0, t1 = basis.tails[0], basis.tails[1]
    return exp_series(t1 / y0).mul_monomial(1)


def build_mirror_bundle(op: DiffOp, order: int, qvar: str = "q") -> MirrorBundle:
    """Frobenius basis, nome, mirror map and (for order >= 3) the Yukawa coupling
    ``(q d/dq)^2 (y2/y0)`` re-expanded in ``q``."""
    if order < 2:
        raise SeriesError("order too small")
    basis = frobenius_mum(op, order)
    if op.order < 2:
        raise SeriesError("need an operator of order at least 2")
    nome = nome_series(basis)
    mirror = revert(nome, qvar)
    yuk = None
    if op.order >= 3:
        y0, t1, t2 = basis.tails[:3]
        s = t1 / y0
        # y2/y0 = tau^2/2 + (y2~/y0 - s^2/2) with tau = ln q = ln x + s
        g = t2 / y0 - s * s * HALF
        gq = compose(g, mirror)
        yuk = theta_derivative(theta_derivative(gq)) + 1
    return MirrorBundle(op, basis, nome, mirror, yuk, order)


# -- Schwarzian checks ----------------------------------------------------------

def theta4_q2() -> RatFun:
    """``(1/2)(327680 z^2 - 1792 z + 5) / (z^2 (1 - 256 z)^2)``."""
    z = Poly.x()
    return RatFun(Poly([5, -1792, 327680]) * HALF, z * z * Poly([1, -256]) ** 2)


def quantum_schwarzian_residual(bundle: MirrorBundle, q2: RatFun | None = None) -> PowerSeries:
    """``(q2(z)/5) z'^2 + {z, tau} - (2/5) K''/K + (1/2) (K'/K)^2`` with
    derivatives in ``tau = ln q``."""
    if bundle.yukawa is None:
        raise SeriesError("the bundle has no Yukawa coupling")
    q2 = theta4_q2() if q2 is None else q2
    z = bundle.mirror
    k = bundle.yukawa
    z1 = theta_derivative(z)
    k1 = theta_derivative(k)
    k2 = theta_derivative(k1)
    r = k1 / k
    return (q2(z) * z1 * z1 * Fraction(1, 5) + schwarzian(z, theta_derivative)
            - (k2 / k) * Fraction(2, 5) + r * r * HALF)


def gauss_q() -> RatFun:
    """Schwarzian potential for ``2F1(1/2, 1/2; 1; t)``: ``{tau, t} = 2 Q(t)``
    with ``Q = (t^2 - t + 1) / (4 t^2 (t - 1)^2)``."""
    return RatFun(Poly([1, -1, 1]), Poly([0, 0, 4]) * Poly([-1, 1]) ** 2)


def classical_schwarzian_residual(op: DiffOp, q: RatFun, order: int) -> PowerSeries:
    """``2 Q(t) (dt/dtau)^2 + {t, tau}`` for the mirror map of an order-2 operator."""
    if op.order != 2:
        raise SeriesError("classical Schwarzian check needs an order-2 operator")
    b = build_mirror_bundle(op, order)
    t = b.mirror
    t1 = theta_derivative(t)
    return q(t) * t1 * t1 * 2 + schwarzian(t, theta_derivative)


def appendix_c_residuals(op: DiffOp, order: int, nome: PowerSeries | None = None) -> dict[str, LogSeries | PowerSeries]:
    """Consistency residuals tying the nome to the operator and its exterior square.

    Keys: ``ext2_wronskian`` for ``L5(y0^2 q'/q)``, ``log_solution`` for
    ``L(y0 ln q)``, ``analytic_solution`` for ``L(y0)`` and the ``d_`` variants
    with one extra derivative.
    """
    basis = frobenius_mum(op, order)
    y0 = basis.y0
    q = nome_series(basis) if nome is None else nome
    l5 = exterior_square(op)
    lq = divide(derivative(q), q)
    # ln q = ln x + ln(q/x)
    lnq = LogSeries([_log_unit(q.mul_monomial(-1)), PowerSeries.constant(op.var, 1, order)])
    w = y0 * y0 * lq
    r1 = op_apply(l5, w)
    r2 = op_apply(op, LogSeries([y0]) * lnq)
    r3 = op_apply(op, y0)
    return {
        "ext2_wronskian": r1,
        "log_solution": r2,
        "analytic_solution": r3,
        "d_log_solution": r2.derivative(),
        "d_analytic_solution": derivative(r3),
    }


def _log_unit(u: PowerSeries) -> PowerSeries:
    from .series import log_series
    c = u.leading()
    if u.val != 0:
        raise SeriesError("nome must have valuation 1")
    if c != 1:
        raise SeriesError("nome must be monic")
    return log_series(u)


def first_nonzero(f) -> tuple[Fraction | None, Fraction | None]:
    """Exponent and coefficient of the first known nonzero term (log parts
    are scanned from the top power of the logarithm down)."""
    if isinstance(f, LogSeries):
        best = None
        for p in f.parts:
            if not p.is_zero():
                e = p.valuation
                if best is None or e < best[0]:
                    best = (e, p.leading())
        return best if best is not None else (None, None)
    if f.is_zero():
        return None, None
    return f.valuation, f.leading()


# -- polynomial ODE residuals -----------------------------------------------------

ROLES = ("q-of-z", "z-of-tau", "tau-of-z")


def _derivs(f, role: str, count: int):
    out = [f]
    for _ in range(count):
        g = out[-1]
        if role == "z-of-tau":
            out.append(theta_derivative(g))
        elif isinstance(g, LogSeries):
            out.append(g.derivative())
        else:
            out.append(derivative(g))
    return out


def _as_power(g) -> PowerSeries:
    if isinstance(g, PowerSeries):
        return g
    if any(not p.is_zero() for p in g.parts[1:]):
        raise SeriesError("derivative still carries a logarithm")
    return g.parts[0]


def nonlinear_ode_residual(p: MPoly, f, role: str, order: int | None = None) -> PowerSeries:
    """Evaluate ``P(x, u0, ..., u7)`` with ``u_m`` the m-th derivative of ``f``.

    ``q-of-z``: ``f`` is a series in ``z`` and derivatives are ``d/dz``;
    ``z-of-tau``: ``f`` is a series in ``q`` and derivatives are ``q d/dq``;
    ``tau-of-z``: ``f`` is a log series ``tau(z)``, ``u0`` must not occur.
    ``x`` is bound to the series variable.
    """
    if role not in ROLES:
        raise SeriesError(f"unknown role {role!r}")
    names = list(p.vars)
    if names[0] != "x" or any(n != f"u{i}" for i, n in enumerate(names[1:])):
        raise SeriesError("polynomial variables must be x, u0, u1, ...")
    nd = len(names) - 1
    used = [any(e[i + 1] for e in p.terms) for i in range(nd)]
    top = max((i for i in range(nd) if used[i]), default=0)
    if role == "tau-of-z" and used and used[0]:
        raise SeriesError("tau-of-z polynomials cannot involve u0")
    if order is not None and not isinstance(f, LogSeries):
        f = f.truncate_num(order * f.scale) if f.order > order * f.scale else f
    ds = _derivs(f, role, top)
    var = f.var
    vals = [PowerSeries(var, [0, 1], 0, 1 << 40)]
    for i in range(nd):
        if i <= top and used[i]:
            vals.append(_as_power(ds[i]))
        else:
            vals.append(PowerSeries.constant(var, 0, 1 << 40))
    one = PowerSeries.constant(var, 1, 1 << 40)
    return p.evaluate(vals, one)


def check_report(check: str, residual, order) -> dict:
    e, c = first_nonzero(residual)
    return {
        "check": check,
        "order": str(order),
        "status": "PASS" if e is None else "FAIL",
        "first_nonzero_exponent": None if e is None else _fmt(e),
        "witness_coefficient": None if c is None else _fmt(c),
    }


def skipped_report(check: str, order) -> dict:
    return {"check": check, "order": str(order), "status": "SKIPPED",
            "first_nonzero_exponent": None, "witness_coefficient": None}


def _fmt(v: Fraction) -> str:
    v = Fraction(v)
    return f"{v.numerator}/{v.denominator}"


def power_family_check(p: MPoly, base, powers: Sequence[int], order: int,
                       role: str, mode: str = "power", name: str = "power-family") -> list[dict]:
    """Residual reports for transforms of ``base``.

    ``mode="power"`` uses ``base^m``; ``"substitute"`` uses ``base(q^m)``;
    ``"scale"`` uses ``base(m q)``.
    """
    out = []
    for m in powers:
        if mode == "power":
            f = base ** m if not isinstance(base, LogSeries) else base * m
        elif mode == "substitute":
            f = substitute_power(base, m)
        elif mode == "scale":
            f = scale_argument(base, m)
        else:
            raise SeriesError("mode must be power, substitute or scale")
        r = nonlinear_ode_residual(p, f, role)
        out.append(check_report(f"{name}[{mode}={m}]", r, order))
    return out


def integrality_report(f: PowerSeries, rescale: Fraction | int = 1, order: int | None = None,
                       check: str = "integrality") -> dict:
    """Whether all coefficients of ``f(rescale * x)`` below ``order`` are integers."""
    g = scale_argument(f, rescale) if rescale != 1 else f
    n = g.order if order is None else min(order, g.order)
    for e, c in g.terms():
        if e >= n:
            break
        if c.denominator != 1:
            return {"check": check, "order": str(n), "status": "FAIL",
                    "first_nonzero_exponent": _fmt(e), "witness_coefficient": _fmt(c)}
    return {"check": check, "order": str(n), "status": "PASS",
            "first_nonzero_exponent": None, "witness_coefficient": None}


# -- numerics -------------------------------------------------------------------------

GUARD_BITS = 16


@dataclass
class QsResult:
    value: object
    error_bound: object
    x0: object
    x1: object
    terms: int
    precision: int


def qs_numeric(precision_bits: int = 128, terms: int = 20000) -> QsResult:
    """``exp(x1/x0)`` where ``x0 = sum t_n`` and ``x1 = sum 4 t_n (psi(n+1/2) - psi(n+1))``
    with ``t_n = ((1/2)_n / n!)^4``: the nome at the conifold point ``x = 1/256``.

    Partial sums are combined with rigorous tail enclosures from the bounds
    ``(n + 1/4)^(1/2) < Gamma(n+1)/Gamma(n+1/2) < (n - 1/2 + sqrt(3)/2)^(1/2)``
    and ``1/(2n+1) < psi(n+1) - psi(n+1/2) < 1/(2n)``.
    """
    import mpmath

    if precision_bits < 64:
        raise ValueError("precision below 64 bits cannot certify the value")
    ctx = mpmath.MPContext()
    ctx.prec = precision_bits + GUARD_BITS
    mpf = ctx.mpf
    half = mpf(1) / 2
    t = mpf(1)
    d = -2 * ctx.log(2)
    s0 = mpf(0)
    s1 = mpf(0)
    n_terms = terms
    for n in range(n_terms + 1):
        s0 += t
        s1 += 4 * t * d
        r = (n + half) / (n + 1)
        t *= r ** 4
        d += 1 / (n + half) - mpf(1) / (n + 1)
    n = n_terms
    pi2 = ctx.pi ** 2
    c1 = ctx.sqrt(3) / 2 - half
    lo0 = 1 / (pi2 * (n + 1 + c1))
    hi0 = 1 / (pi2 * (n + mpf(1) / 4))
    lo1 = 1 / (pi2 * (n + mpf(3) / 2) ** 2)
    hi1 = 1 / (pi2 * mpf(n) ** 2)
    x0_lo, x0_hi = s0 + lo0, s0 + hi0
    x1_lo, x1_hi = s1 - hi1, s1 - lo1
    r_lo = x1_lo / x0_lo
    r_hi = x1_hi / x0_hi
    q_lo, q_hi = ctx.exp(r_lo), ctx.exp(r_hi)
    value = (q_lo + q_hi) / 2
    err = (q_hi - q_lo) / 2 + ctx.mpf(2) ** (-precision_bits)
    return QsResult(value, err, (x0_lo + x0_hi) / 2, (x1_lo + x1_hi) / 2, n_terms, precision_bits)


def radius_estimate(coeffs: Sequence[Fraction]) -> Fraction:
    """Ratio-test estimate ``|c_{n-1} / c_n|`` from the last two coefficients."""
    cs = [c for c in coeffs]
    if len(cs) < 2 or cs[-1] == 0:
        raise ValueError("need at least two coefficients with a nonzero last one")
    return abs(Fraction(cs[-2]) / Fraction(cs[-1]))
