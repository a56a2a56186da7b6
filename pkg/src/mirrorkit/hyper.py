"""Hypergeometric series, theta constants and eta quotients as exact series."""

from __future__ import annotations

from fractions import Fraction
from math import comb
from typing import Sequence, Union

from .series import (PowerSeries, SeriesError, compose, hadamard, pow_rational,
                     substitute_power)

Scalar = Union[int, Fraction]

DEFAULT_ORDER = 60
ETA_ORDER = 150


def pfq_coefficients(upper: Sequence[Scalar], lower: Sequence[Scalar], scale: Scalar,
                     n: int) -> list[Fraction]:
    """``prod (a_i)_k / prod (b_j)_k * scale^k / k!`` for ``k < n``."""
    up = [Fraction(a) for a in upper]
    lo = [Fraction(b) for b in lower]
    for b in lo:
        if b <= 0 and b.denominator == 1:
            raise SeriesError("lower parameter is a non-positive integer")
    s = Fraction(scale)
    out = [Fraction(1)]
    t = Fraction(1)
    for k in range(n - 1):
        num = s
        for a in up:
            num *= a + k
        den = Fraction(k + 1)
        for b in lo:
            den *= b + k
        t = t * num / den
        out.append(t)
    return out[:n]


def pfq_series(upper: Sequence[Scalar], lower: Sequence[Scalar], scale: Scalar = 1,
               arg: PowerSeries | None = None, order: int = DEFAULT_ORDER,
               var: str = "x") -> PowerSeries:
    """``pFq(upper; lower; scale * arg)`` with ``arg`` defaulting to the variable."""
    if arg is None:
        return PowerSeries(var, pfq_coefficients(upper, lower, scale, order), 0, order)
    if arg.is_zero() or arg.val <= 0:
        raise SeriesError("argument must have positive valuation")
    need = -(-arg.order // arg.val) if arg.val else arg.order
    base = PowerSeries("_", pfq_coefficients(upper, lower, scale, need), 0, need)
    return compose(base, arg)


# -- q-series ---------------------------------------------------------------

def euler_product(order: int, var: str = "q") -> PowerSeries:
    """``prod_{n>=1} (1 - q^n)`` through the pentagonal number theorem."""
    cs = [Fraction(0)] * order
    k = 0
    while True:
        done = True
        for kk in ((k, -k) if k else (0,)):
            e = kk * (3 * kk - 1) // 2
            if e < order:
                cs[e] = Fraction(-1 if kk % 2 else 1)
                done = False
        if done and k:
            break
        k += 1
    return PowerSeries(var, cs, 0, order)


def eta_quotient_qseries(factors: Sequence[tuple[int, int]], order: int = ETA_ORDER,
                         var: str = "q") -> PowerSeries:
    """``prod eta(N tau)^e`` for ``(N, e)`` pairs, in ``q`` with ``eta(tau) =
    q^(1/24) prod(1 - q^n)``; known below ``q^order`` relative to the leading
    power."""
    lead = sum(Fraction(n * e, 24) for n, e in factors)
    body = None
    for n, e in factors:
        if n < 1:
            raise SeriesError("eta level must be positive")
        if e == 0:
            continue
        base = euler_product(-(-order // n), var)
        p = substitute_power(pow_rational(base, e), n) if e != 1 else substitute_power(base, n)
        if p.order > order:
            p = p.truncate_num(order)
        body = p if body is None else body * p
    if body is None:
        body = PowerSeries.constant(var, 1, order)
    return body.mul_monomial(lead)


def theta_null_qseries(which: int, order: int = DEFAULT_ORDER, var: str = "q") -> PowerSeries:
    """Jacobi theta constants: ``theta3 = sum q^(n^2)``, ``theta4 = sum (-1)^n q^(n^2)``,
    ``theta2 = 2 q^(1/4) sum_{n>=0} q^(n(n+1))``; known below ``q^order``."""
    if which in (3, 4):
        cs = [Fraction(0)] * order
        cs[0] = Fraction(1)
        n = 1
        while n * n < order:
            cs[n * n] = Fraction(2 if which == 3 or n % 2 == 0 else -2)
            n += 1
        return PowerSeries(var, cs, 0, order)
    if which == 2:
        o4 = 4 * order
        cs = [Fraction(0)] * o4
        n = 0
        while 4 * n * (n + 1) + 1 < o4:
            cs[4 * n * (n + 1) + 1] = Fraction(2)
            n += 1
        return PowerSeries(var, cs, 0, o4, scale=4)
    raise SeriesError("theta constant index must be 2, 3 or 4")


def parse_eta_quotient(text: str) -> list[tuple[int, int]]:
    """Parse ``"1^24,2^-24"`` into ``[(1, 24), (2, -24)]``."""
    out = []
    for part in text.split(","):
        part = part.strip()
        if not part:
            continue
        if "^" in part:
            n, e = part.split("^", 1)
        else:
            n, e = part, "1"
        try:
            out.append((int(n), int(e)))
        except ValueError:
            raise SeriesError(f"bad eta factor {part!r}") from None
    if not out:
        raise SeriesError("empty eta quotient")
    return out


def delta_qseries(order: int = ETA_ORDER, var: str = "q") -> PowerSeries:
    """``q prod (1 - q^n)^24``."""
    return eta_quotient_qseries([(1, 24)], order, var)


def j2_qseries(order: int = ETA_ORDER, var: str = "q") -> PowerSeries:
    """``Delta(q) / Delta(q^2)``."""
    return eta_quotient_qseries([(1, 24), (2, -24)], order, var)


# -- families -----------------------------------------------------------------

def _integer(v: Scalar, what: str) -> int:
    v = Fraction(v)
    if v.denominator != 1 or v < 0:
        raise SeriesError(f"{what} must be a non-negative integer")
    return int(v)


def form_factor_series(k: Scalar, n: Scalar, order: int = DEFAULT_ORDER,
                       normalized: bool = False, var: str = "x") -> PowerSeries:
    """``a(k, n) = binom(k+n, k) * 4F3(...; 16x)``; with ``normalized`` the bare
    ``4F3`` (constant term 1)."""
    k = _integer(k, "k")
    n = _integer(n, "n")
    s = k + n
    up = [Fraction(1 + s, 2)] * 2 + [Fraction(2 + s, 2)] * 2
    lo = [1 + k, 1 + n, 1 + s]
    b = pfq_series(up, lo, 16, order=order, var=var)
    return b if normalized else b * comb(s, k)


def hadamard_power_family(n: int, base: str = "sqrt", order: int = DEFAULT_ORDER,
                          var: str = "x") -> PowerSeries:
    """``n``-fold Hadamard power of ``(1-4x)^(-1/2)`` (``base="sqrt"``) or of
    ``2F1(1/2, 1/2; 1; 16x)`` (``base="K"``)."""
    if n < 1:
        raise SeriesError("Hadamard power must be at least 1")
    h = Fraction(1, 2)
    if base == "sqrt":
        f = pfq_series([h], [], 4, order=order, var=var)
    elif base == "K":
        f = pfq_series([h, h], [1], 16, order=order, var=var)
    else:
        raise SeriesError("base must be 'sqrt' or 'K'")
    out = f
    for _ in range(n - 1):
        out = hadamard(out, f)
    return out


def parse_pfq(text: str) -> tuple[list[Fraction], list[Fraction], Fraction]:
    """Parse ``"a1,a2;b1;scale"``."""
    parts = text.split(";")
    if len(parts) not in (2, 3):
        raise SeriesError("pfq parameters are 'upper;lower[;scale]'")

    def nums(s: str) -> list[Fraction]:
        return [Fraction(t) for t in s.split(",") if t.strip()]

    scale = Fraction(parts[2]) if len(parts) == 3 else Fraction(1)
    return nums(parts[0]), nums(parts[1]), scale
