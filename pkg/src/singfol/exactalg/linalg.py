"""Exact dense linear algebra over Q(i)."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .gaussian import ONE, ZERO, GaussianRational


@dataclass(frozen=True)
class ExactMatrix:
    rows: int
    cols: int
    entries: tuple

    def __post_init__(self):
        if len(self.entries) != self.rows or any(len(r) != self.cols for r in self.entries):
            raise ValueError("entry grid does not match rows x cols")

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence], cols: int | None = None) -> "ExactMatrix":
        grid = tuple(tuple(GaussianRational.coerce(v) for v in r) for r in rows)
        if cols is None:
            cols = len(grid[0]) if grid else 0
        return cls(len(grid), cols, grid)

    @classmethod
    def identity(cls, n: int) -> "ExactMatrix":
        return cls.from_rows([[ONE if i == j else ZERO for j in range(n)] for i in range(n)], n)

    def row(self, i):
        return self.entries[i]


def bareiss_echelon(rows: Sequence[Sequence[GaussianRational]]):
    """Fraction-free forward elimination.

    Columns are scanned left to right; the pivot is the first remaining row
    with a nonzero entry in the column. Returns (echelon rows, pivot columns).
    """
    m = [list(r) for r in rows]
    nrows = len(m)
    ncols = len(m[0]) if m else 0
    prev = ONE
    pivots = []
    k = 0
    for col in range(ncols):
        if k == nrows:
            break
        piv = next((i for i in range(k, nrows) if m[i][col]), None)
        if piv is None:
            continue
        if piv != k:
            m[k], m[piv] = m[piv], m[k]
        p = m[k][col]
        for i in range(k + 1, nrows):
            a = m[i][col]
            row_i = m[i]
            row_k = m[k]
            if a:
                for j in range(col + 1, ncols):
                    row_i[j] = (p * row_i[j] - a * row_k[j]) / prev
            else:
                for j in range(col + 1, ncols):
                    if row_i[j]:
                        row_i[j] = (p * row_i[j]) / prev
            row_i[col] = ZERO
        prev = p
        pivots.append(col)
        k += 1
    return m, pivots


def matrix_rank(m) -> int:
    rows = m.entries if isinstance(m, ExactMatrix) else m
    if not rows or not rows[0]:
        return 0
    _, pivots = bareiss_echelon(rows)
    return len(pivots)


def independent_rows(vectors: Sequence[Sequence[GaussianRational]]) -> list[int]:
    """Indices of a maximal independent subset, greedily in input order."""
    chosen: list[int] = []
    basis: list[list[GaussianRational]] = []
    pivcols: list[int] = []
    for idx, v in enumerate(vectors):
        w = list(v)
        for b, pc in zip(basis, pivcols):
            if w[pc]:
                f = w[pc] / b[pc]
                w = [x - f * y for x, y in zip(w, b)]
        pc = next((j for j, x in enumerate(w) if x), None)
        if pc is not None:
            chosen.append(idx)
            basis.append(w)
            pivcols.append(pc)
    return chosen


def in_span(vectors: Sequence[Sequence[GaussianRational]], target: Sequence[GaussianRational]) -> bool:
    if not any(target):
        return True
    if not vectors:
        return False
    return matrix_rank([list(v) for v in vectors] + [list(target)]) == matrix_rank([list(v) for v in vectors])


def intersection_dim(a: Sequence[Sequence], b: Sequence[Sequence]) -> int:
    """dim(span a ∩ span b) = rank a + rank b - rank(a ∪ b)."""
    ra = matrix_rank([list(v) for v in a]) if a else 0
    rb = matrix_rank([list(v) for v in b]) if b else 0
    both = [list(v) for v in a] + [list(v) for v in b]
    rab = matrix_rank(both) if both else 0
    return ra + rb - rab
