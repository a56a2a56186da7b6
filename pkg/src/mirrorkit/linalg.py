"""Exact nullspaces over Q with a modular rank pre-check."""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence

PRIME = (1 << 61) - 1


def _modp(c: Fraction, p: int) -> int | None:
    d = c.denominator % p
    if d == 0:
        return None
    return c.numerator * pow(d, -1, p) % p


def rank_mod_p(rows: Sequence[Sequence[Fraction]], ncols: int, p: int = PRIME) -> int | None:
    """Rank of the reduction mod ``p``; ``None`` if a denominator vanishes."""
    m = []
    for r in rows:
        rr = []
        for c in r:
            v = _modp(c, p) if c else 0
            if v is None:
                return None
            rr.append(v)
        m.append(rr)
    rank = 0
    for col in range(ncols):
        piv = None
        for i in range(rank, len(m)):
            if m[i][col]:
                piv = i
                break
        if piv is None:
            continue
        m[rank], m[piv] = m[piv], m[rank]
        inv = pow(m[rank][col], -1, p)
        prow = [(v * inv) % p for v in m[rank]]
        m[rank] = prow
        for i in range(len(m)):
            if i != rank and m[i][col]:
                f = m[i][col]
                row = m[i]
                for j in range(col, ncols):
                    if prow[j]:
                        row[j] = (row[j] - f * prow[j]) % p
        rank += 1
        if rank == len(m):
            break
    return rank


def rref(rows: Sequence[Sequence[Fraction]], ncols: int) -> tuple[list[list[Fraction]], list[int]]:
    """Reduced row echelon form and pivot columns."""
    m = [list(r) for r in rows]
    pivots: list[int] = []
    rank = 0
    for col in range(ncols):
        piv = None
        for i in range(rank, len(m)):
            if m[i][col]:
                piv = i
                break
        if piv is None:
            continue
        m[rank], m[piv] = m[piv], m[rank]
        inv = 1 / m[rank][col]
        prow = [v * inv if v else v for v in m[rank]]
        m[rank] = prow
        nz = [j for j in range(col, ncols) if prow[j]]
        for i in range(len(m)):
            if i != rank:
                f = m[i][col]
                if f:
                    row = m[i]
                    for j in nz:
                        row[j] -= f * prow[j]
        pivots.append(col)
        rank += 1
        if rank == len(m):
            break
    return m[:rank], pivots


def nullspace(rows: Sequence[Sequence[Fraction]], ncols: int) -> list[list[Fraction]]:
    """Basis of ``{v : rows v = 0}``."""
    red, pivots = rref(rows, ncols)
    free = [j for j in range(ncols) if j not in set(pivots)]
    basis = []
    for f in free:
        v = [Fraction(0)] * ncols
        v[f] = Fraction(1)
        for r, pc in zip(red, pivots):
            v[pc] = -r[f]
        basis.append(v)
    return basis
