"""Pattern matrices of a digraph and exact kernel-support checks.

All arithmetic uses :class:`fractions.Fraction`; there is no tolerance anywhere.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .digraph import Digraph, as_mask

__all__ = [
    "PatternMatrix",
    "OFF_DIAGONAL_VALUES",
    "DIAGONAL_VALUES",
    "sample_pattern_matrix",
    "rational_rank",
    "verify_kernel_support",
]

OFF_DIAGONAL_VALUES = tuple(Fraction(x) for x in (1, -1, 2, -2, 3, -3)) + (Fraction(1, 2), Fraction(-1, 2))
DIAGONAL_VALUES = (Fraction(0), Fraction(1), Fraction(-1))


@dataclass(frozen=True)
class PatternMatrix:
    """Square rational matrix whose off-diagonal support is the arc set of ``pattern``."""

    entries: tuple[tuple[Fraction, ...], ...]
    pattern: Digraph

    def __post_init__(self):
        n = self.pattern.n
        if len(self.entries) != n or any(len(row) != n for row in self.entries):
            raise ValueError("matrix shape does not match the digraph order")

    def matches_pattern(self, d: Digraph | None = None) -> bool:
        d = self.pattern if d is None else d
        if d.n != len(self.entries):
            return False
        for i, row in enumerate(self.entries):
            for j, x in enumerate(row):
                if i != j and (x != 0) != d.has_arc(i, j):
                    return False
        return True

    def column(self, j: int) -> list[Fraction]:
        return [row[j] for row in self.entries]


def sample_pattern_matrix(d: Digraph, seed: int) -> PatternMatrix:
    """Deterministic member of S(D) for ``seed``.

    Off-diagonal nonzeros come from {±1, ±2, ±3, ±1/2}; the diagonal from {0, ±1}.
    """
    if d.has_loops:
        raise ValueError("pattern matrices are sampled for loopless digraphs only")
    rng = random.Random(seed)
    n = d.n
    rows = []
    for i in range(n):
        row = []
        for j in range(n):
            if i == j:
                row.append(rng.choice(DIAGONAL_VALUES))
            elif d.has_arc(i, j):
                row.append(rng.choice(OFF_DIAGONAL_VALUES))
            else:
                row.append(Fraction(0))
        rows.append(tuple(row))
    return PatternMatrix(tuple(rows), d)


def rational_rank(rows: Sequence[Sequence]) -> int:
    """Rank by fraction-exact Gaussian elimination."""
    m = [[Fraction(x) for x in r] for r in rows]
    if not m:
        return 0
    ncols = len(m[0])
    rank = 0
    for c in range(ncols):
        pivot = next((r for r in range(rank, len(m)) if m[r][c] != 0), None)
        if pivot is None:
            continue
        m[rank], m[pivot] = m[pivot], m[rank]
        p = m[rank][c]
        for r in range(rank + 1, len(m)):
            f = m[r][c]
            if f:
                f /= p
                row_r, row_p = m[r], m[rank]
                for k in range(c, ncols):
                    row_r[k] -= f * row_p[k]
        rank += 1
        if rank == len(m):
            break
    return rank


def verify_kernel_support(d: Digraph, s, m: PatternMatrix) -> bool:
    """True iff the only kernel vector of ``m`` vanishing on ``s`` is zero.

    Equivalent to the columns indexed by ``V \\ s`` being linearly independent.
    """
    if not m.matches_pattern(d):
        raise ValueError("matrix does not match the digraph pattern")
    s = as_mask(s)
    cols = [j for j in range(d.n) if not s >> j & 1]
    if not cols:
        return True
    sub = [[m.entries[i][j] for j in cols] for i in range(d.n)]
    return rational_rank(sub) == len(cols)
