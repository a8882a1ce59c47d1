"""GF(2) linear algebra on int bitsets.

Rows are Python ints; bit j is column j. Everything is exact and
deterministic: pivots are always the lowest-index usable column.
"""

from __future__ import annotations

from typing import Iterable, Optional


def rank(rows: Iterable[int], ncols: int) -> int:
    """Rank over GF(2) by Gaussian elimination."""
    work = [r for r in rows if r]
    rk = 0
    for col in range(ncols):
        bit = 1 << col
        pivot = None
        for i in range(rk, len(work)):
            if work[i] & bit:
                pivot = i
                break
        if pivot is None:
            continue
        work[rk], work[pivot] = work[pivot], work[rk]
        for i in range(len(work)):
            if i != rk and (work[i] & bit):
                work[i] ^= work[rk]
        rk += 1
        if rk == len(work):
            break
    return rk


def nullspace(rows: Iterable[int], ncols: int) -> list[int]:
    """Basis of the right kernel {x : A x = 0}, echelon order.

    Column j of A is the j-th bit of each row. Basis vectors are returned
    as column bitmasks, one per free column, free columns ascending.
    """
    work = list(rows)
    pivots: list[tuple[int, int]] = []  # (row index in work, column)
    rk = 0
    for col in range(ncols):
        bit = 1 << col
        pivot = None
        for i in range(rk, len(work)):
            if work[i] & bit:
                pivot = i
                break
        if pivot is None:
            continue
        work[rk], work[pivot] = work[pivot], work[rk]
        for i in range(len(work)):
            if i != rk and (work[i] & bit):
                work[i] ^= work[rk]
        pivots.append((rk, col))
        rk += 1
    pivot_cols = {col for _, col in pivots}
    basis = []
    for free in range(ncols):
        if free in pivot_cols:
            continue
        vec = 1 << free
        fbit = 1 << free
        for i, col in pivots:
            if work[i] & fbit:
                vec |= 1 << col
        basis.append(vec)
    return basis


class Solver:
    """Reduced row echelon factorization of A for repeated solves of A x = b.

    Tracks the row transform so each echelon row knows which original rows
    it sums; for an inconsistent system that combination is an exact
    infeasibility witness (y with y^T A = 0, y^T b = 1).
    """

    def __init__(self, rows: list[int], ncols: int):
        self.ncols = ncols
        self.nrows = len(rows)
        work = list(rows)
        trans = [1 << i for i in range(len(rows))]
        pivots: list[tuple[int, int]] = []
        rk = 0
        for col in range(ncols):
            bit = 1 << col
            pivot = None
            for i in range(rk, len(work)):
                if work[i] & bit:
                    pivot = i
                    break
            if pivot is None:
                continue
            work[rk], work[pivot] = work[pivot], work[rk]
            trans[rk], trans[pivot] = trans[pivot], trans[rk]
            for i in range(len(work)):
                if i != rk and (work[i] & bit):
                    work[i] ^= work[rk]
                    trans[i] ^= trans[rk]
            pivots.append((rk, col))
            rk += 1
        self.work = work
        self.trans = trans
        self.pivots = pivots
        self.rank = rk

    def solve(self, b: int) -> Optional[int]:
        """A solution bitmask of A x = b, or None if inconsistent."""
        sol, _ = self.solve_or_witness(b)
        return sol

    def solve_or_witness(self, b: int) -> tuple[Optional[int], Optional[int]]:
        """(solution, None) if solvable, else (None, witness row set).

        The witness is a bitmask y over the original rows with
        y^T A = 0 and y^T b = 1.
        """
        bprime = [(self.trans[i] & b).bit_count() & 1 for i in range(self.nrows)]
        for i in range(self.rank, self.nrows):
            if bprime[i]:
                return None, self.trans[i]
        x = 0
        for i, col in self.pivots:
            if bprime[i]:
                x |= 1 << col
        return x, None


def mask_from_indices(indices: Iterable[int]) -> int:
    m = 0
    for i in indices:
        m |= 1 << i
    return m


def indices_from_mask(mask: int) -> list[int]:
    out = []
    i = 0
    while mask:
        if mask & 1:
            out.append(i)
        mask >>= 1
        i += 1
    return out
