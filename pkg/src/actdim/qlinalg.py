"""Small exact linear algebra over the rationals (Fraction entries)."""

from __future__ import annotations

from fractions import Fraction
from typing import Optional, Sequence

Vec = tuple[Fraction, ...]


def frac(x) -> Fraction:
    return x if isinstance(x, Fraction) else Fraction(x)


def rref(rows: Sequence[Sequence[Fraction]]) -> tuple[tuple[Vec, ...], list[int]]:
    """Reduced row echelon form; returns (nonzero rows, pivot columns)."""
    m = [list(map(frac, r)) for r in rows]
    if not m:
        return (), []
    ncols = len(m[0])
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        pivot = next((i for i in range(r, len(m)) if m[i][c] != 0), None)
        if pivot is None:
            continue
        m[r], m[pivot] = m[pivot], m[r]
        inv = m[r][c]
        m[r] = [x / inv for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    return tuple(tuple(row) for row in m[:r]), pivots


def rank(rows: Sequence[Sequence[Fraction]]) -> int:
    return len(rref(rows)[0])


def solve(rows: Sequence[Sequence[Fraction]], rhs: Sequence[Fraction]) -> Optional[Vec]:
    """A particular solution of A x = b, or None if inconsistent."""
    if not rows:
        return ()
    n = len(rows[0])
    aug = [list(map(frac, r)) + [frac(b)] for r, b in zip(rows, rhs)]
    red, pivots = rref(aug)
    if n in pivots:
        return None
    x = [Fraction(0)] * n
    for row, c in zip(red, pivots):
        x[c] = row[-1]
    return tuple(x)


def invert(rows: Sequence[Sequence[Fraction]]) -> Optional[list[list[Fraction]]]:
    n = len(rows)
    aug = [list(map(frac, r)) + [Fraction(int(i == j)) for j in range(n)]
           for i, r in enumerate(rows)]
    red, pivots = rref(aug)
    if pivots != list(range(n)):
        return None
    return [list(row[n:]) for row in red]


def matvec(rows, x) -> Vec:
    return tuple(sum(a * b for a, b in zip(r, x)) for r in rows)
