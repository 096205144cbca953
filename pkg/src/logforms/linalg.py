"""Exact sparse linear algebra over a FieldSpec.

Matrices are handled as lists of sparse rows (``{column: value}``) or, for
linear maps, as lists of sparse columns (``{row key: value}``) whose row keys
may be any hashable coordinate label.  Elimination is incremental Gauss-Jordan:
each incoming row is reduced against the current pivots, its smallest surviving
column becomes a new pivot, and that column is cleared from older pivot rows.
The resulting reduced row echelon form is unique, so every output here is
independent of row order.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Sequence

from .poly import FieldSpec

SparseVec = dict


def _axpy(row: dict, factor, pivot_row: dict, p: int | None) -> None:
    """row -= factor * pivot_row, in place."""
    get = row.get
    if p is None:
        for c, v in pivot_row.items():
            nv = get(c, 0) - factor * v
            if nv:
                row[c] = nv
            else:
                row.pop(c, None)
    else:
        for c, v in pivot_row.items():
            nv = (get(c, 0) - factor * v) % p
            if nv:
                row[c] = nv
            else:
                row.pop(c, None)


class Echelon:
    """Incrementally maintained reduced row echelon form."""

    def __init__(self, field: FieldSpec):
        self.field = field
        self.pivots: dict = {}  # pivot column -> normalized row

    @property
    def rank(self) -> int:
        return len(self.pivots)

    def reduce(self, row: dict) -> dict:
        row = {c: v for c, v in row.items() if v}
        p = self.field.p
        for c in [c for c in row if c in self.pivots]:
            f = row.get(c)
            if f:
                _axpy(row, f, self.pivots[c], p)
        return row

    def add(self, row: dict) -> bool:
        """Insert a row; returns True when it raised the rank."""
        row = self.reduce(row)
        if not row:
            return False
        field = self.field
        col = min(row)
        inv = field.inv(row[col])
        if field.p is None:
            row = {c: _norm(v * inv) for c, v in row.items()}
        else:
            row = {c: v * inv % field.p for c, v in row.items()}
        for prow in self.pivots.values():
            f = prow.get(col)
            if f:
                _axpy(prow, f, row, field.p)
        self.pivots[col] = row
        return True


def _norm(v):
    if isinstance(v, Fraction) and v.denominator == 1:
        return v.numerator
    return v


def transpose(columns: Sequence[dict]) -> list:
    """Sparse columns (row key -> value) to sparse rows (column index -> value)."""
    rows: dict = {}
    for j, col in enumerate(columns):
        for r, v in col.items():
            if v:
                rows.setdefault(r, {})[j] = v
    return list(rows.values())


def rank(rows: Iterable[dict], field: FieldSpec) -> int:
    ech = Echelon(field)
    for r in rows:
        ech.add(r)
    return ech.rank


def column_rank(columns: Sequence[dict], field: FieldSpec) -> int:
    # row rank of the transpose; the columns themselves serve as rows
    return rank([dict(c) for c in columns], field)


def nullspace(columns: Sequence[dict], ncols: int, field: FieldSpec) -> list:
    """Basis of ``{x : sum_j x_j columns[j] = 0}`` as sparse dicts ``j -> x_j``."""
    return kernel(columns, ncols, field)[0]


def kernel(columns: Sequence[dict], ncols: int, field: FieldSpec) -> tuple:
    """Kernel basis together with its free columns.

    Basis vector ``k`` has a 1 at ``free[k]`` and 0 at every other free column,
    so the coordinates of a kernel element are its entries at ``free``.
    """
    ech = Echelon(field)
    for r in transpose(columns):
        ech.add(r)
    free = [j for j in range(ncols) if j not in ech.pivots]
    basis = []
    neg = (lambda v: -v) if field.p is None else (lambda v: (-v) % field.p)
    for f in free:
        vec = {f: 1}
        for pc, prow in ech.pivots.items():
            v = prow.get(f)
            if v:
                vec[pc] = neg(v)
        basis.append(vec)
    return basis, free


def solve(columns: Sequence[dict], rhs: dict, ncols: int, field: FieldSpec) -> dict | None:
    """One solution ``x`` of ``sum_j x_j columns[j] = rhs`` (free variables 0), or None."""
    aug = list(columns) + [rhs]
    ech = Echelon(field)
    for r in transpose(aug):
        ech.add(r)
    if ncols in ech.pivots:
        return None
    x = {}
    for pc, prow in ech.pivots.items():
        v = prow.get(ncols)
        if v:
            x[pc] = v
    return x


def combine(columns: Sequence[dict], x: dict, field: FieldSpec) -> dict:
    """``sum_j x_j columns[j]`` as a sparse vector."""
    out: dict = {}
    p = field.p
    for j, c in x.items():
        if not c:
            continue
        for r, v in columns[j].items():
            out[r] = out.get(r, 0) + c * v
    if p is None:
        return {r: _norm(v) for r, v in out.items() if v}
    return {r: v % p for r, v in out.items() if v % p}


def span_contains(columns: Sequence[dict], vec: dict, field: FieldSpec) -> bool:
    """Whether ``vec`` lies in the span of ``columns`` (row keys must be mutually orderable)."""
    ech = Echelon(field)
    for c in columns:
        ech.add(c)
    return not ech.reduce(vec)
