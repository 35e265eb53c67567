"""Polynomial matrices and the Smith normal form with unimodular transformers."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .errors import FieldMismatchError, UsageError
from .field import Field
from .poly import Poly, poly_divmod


class PolyMatrix:
    """Dense ``rows x cols`` matrix of :class:`Poly` entries."""

    __slots__ = ("field", "rows", "cols", "entries")

    def __init__(self, field: Field, entries: Sequence[Sequence], cols: int | None = None):
        self.field = field
        data = [[_as_poly(field, x) for x in row] for row in entries]
        self.rows = len(data)
        if cols is None:
            cols = len(data[0]) if data else 0
        if any(len(r) != cols for r in data):
            raise UsageError("ragged polynomial matrix")
        self.cols = cols
        self.entries = data

    @classmethod
    def zeros(cls, field: Field, rows: int, cols: int) -> PolyMatrix:
        z = Poly.zero(field)
        return cls(field, [[z] * cols for _ in range(rows)], cols=cols)

    @classmethod
    def identity(cls, field: Field, n: int) -> PolyMatrix:
        out = cls.zeros(field, n, n)
        for i in range(n):
            out.entries[i][i] = Poly.one(field)
        return out

    @classmethod
    def from_scalar(cls, field: Field, mat: np.ndarray) -> PolyMatrix:
        return cls(field, [[Poly.constant(field, x) for x in row] for row in mat], cols=mat.shape[1])

    @classmethod
    def diag(cls, field: Field, diagonal: Sequence[Poly], rows: int | None = None, cols: int | None = None) -> PolyMatrix:
        rows = len(diagonal) if rows is None else rows
        cols = len(diagonal) if cols is None else cols
        out = cls.zeros(field, rows, cols)
        for i, d in enumerate(diagonal):
            out.entries[i][i] = _as_poly(field, d)
        return out

    @property
    def shape(self) -> tuple[int, int]:
        return self.rows, self.cols

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i][j]

    def copy(self) -> PolyMatrix:
        return PolyMatrix(self.field, [list(r) for r in self.entries], cols=self.cols)

    def transpose(self) -> PolyMatrix:
        return PolyMatrix(
            self.field, [[self.entries[i][j] for i in range(self.rows)] for j in range(self.cols)], cols=self.rows
        )

    @property
    def T(self) -> PolyMatrix:
        return self.transpose()

    def column(self, j: int) -> list[Poly]:
        return [row[j] for row in self.entries]

    def row(self, i: int) -> list[Poly]:
        return list(self.entries[i])

    def _check(self, other):
        if not isinstance(other, PolyMatrix):
            raise UsageError("expected a PolyMatrix")
        if other.field != self.field:
            raise FieldMismatchError("matrices over different fields")

    def __add__(self, other: PolyMatrix) -> PolyMatrix:
        return polymat_add(self, other)

    def __sub__(self, other: PolyMatrix) -> PolyMatrix:
        self._check(other)
        if self.shape != other.shape:
            raise UsageError(f"shape mismatch {self.shape} - {other.shape}")
        return PolyMatrix(
            self.field, [[a - b for a, b in zip(r1, r2)] for r1, r2 in zip(self.entries, other.entries)], cols=self.cols
        )

    def __matmul__(self, other: PolyMatrix) -> PolyMatrix:
        return polymat_mul(self, other)

    def __eq__(self, other):
        if not isinstance(other, PolyMatrix):
            return NotImplemented
        return self.field == other.field and self.shape == other.shape and self.entries == other.entries

    def is_scalar(self) -> bool:
        return all(x.degree <= 0 for r in self.entries for x in r)

    def to_scalar(self) -> np.ndarray:
        if not self.is_scalar():
            raise UsageError("matrix has non-constant entries")
        out = self.field.zeros(self.rows, self.cols)
        for i, r in enumerate(self.entries):
            for j, x in enumerate(r):
                out[i, j] = x.coeff(0)
        return out

    def __repr__(self):
        body = "; ".join(", ".join(str(x) for x in r) for r in self.entries)
        return f"PolyMatrix({self.field!r}, {self.rows}x{self.cols}: [{body}])"


def _as_poly(field: Field, x) -> Poly:
    if isinstance(x, Poly):
        if x.field != field:
            raise FieldMismatchError("entry over a different field")
        return x
    return Poly.constant(field, x)


def polymat_add(a: PolyMatrix, b: PolyMatrix) -> PolyMatrix:
    a._check(b)
    if a.shape != b.shape:
        raise UsageError(f"shape mismatch {a.shape} + {b.shape}")
    return PolyMatrix(a.field, [[x + y for x, y in zip(r1, r2)] for r1, r2 in zip(a.entries, b.entries)], cols=a.cols)


def polymat_mul(a: PolyMatrix, b: PolyMatrix) -> PolyMatrix:
    a._check(b)
    if a.cols != b.rows:
        raise UsageError(f"shape mismatch {a.shape} @ {b.shape}")
    zero = Poly.zero(a.field)
    out = []
    for i in range(a.rows):
        row = []
        for j in range(b.cols):
            acc = zero
            for k in range(a.cols):
                x = a.entries[i][k]
                if x:
                    y = b.entries[k][j]
                    if y:
                        acc = acc + x * y
            row.append(acc)
        out.append(row)
    return PolyMatrix(a.field, out, cols=b.cols)


def s_minus(field: Field, a: np.ndarray) -> PolyMatrix:
    """The characteristic matrix ``sI - A`` of a square scalar matrix."""
    n, m = a.shape
    if n != m:
        raise UsageError("sI - A needs a square matrix")
    s = Poly.s(field)
    rows = []
    for i in range(n):
        row = []
        for j in range(n):
            c = Poly.constant(field, field.neg(a[i, j]))
            row.append(c + s if i == j else c)
        rows.append(row)
    return PolyMatrix(field, rows, cols=n)


def polymat_det(a: PolyMatrix) -> Poly:
    """Determinant by fraction-free (Bareiss) elimination over K[s]."""
    if a.rows != a.cols:
        raise UsageError("determinant of a non-square matrix")
    n = a.rows
    f = a.field
    if n == 0:
        return Poly.one(f)
    m = [list(r) for r in a.entries]
    sign = 1
    prev = Poly.one(f)
    for k in range(n - 1):
        if m[k][k].is_zero():
            piv = next((i for i in range(k + 1, n) if m[i][k]), None)
            if piv is None:
                return Poly.zero(f)
            m[k], m[piv] = m[piv], m[k]
            sign = -sign
        pk = m[k][k]
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * pk - m[i][k] * m[k][j]).exact_div(prev)
            m[i][k] = Poly.zero(f)
        prev = pk
    d = m[n - 1][n - 1]
    return -d if sign < 0 else d


def is_unimodular(a: PolyMatrix) -> bool:
    if a.rows != a.cols:
        raise UsageError("unimodularity is defined for square matrices")
    d = polymat_det(a)
    return d.degree == 0


@dataclass(frozen=True)
class SmithDecomposition:
    """``U @ A @ V == S`` with unimodular ``U``, ``V``.

    ``U_inv`` and ``V_inv`` are the exact inverses, accumulated alongside.
    """

    U: PolyMatrix
    S: PolyMatrix
    V: PolyMatrix
    U_inv: PolyMatrix
    V_inv: PolyMatrix

    @property
    def invariant_factors(self) -> list[Poly]:
        out = []
        for i in range(min(self.S.rows, self.S.cols)):
            d = self.S.entries[i][i]
            if d.is_zero():
                break
            out.append(d)
        return out

    @property
    def rank(self) -> int:
        return len(self.invariant_factors)


class _Workspace:
    # Elementary operations that keep A, U, V, U^-1, V^-1 in sync.

    def __init__(self, a: PolyMatrix):
        f = a.field
        self.field = f
        self.a = [list(r) for r in a.entries]
        self.u = [list(r) for r in PolyMatrix.identity(f, a.rows).entries]
        self.ui = [list(r) for r in PolyMatrix.identity(f, a.rows).entries]
        self.v = [list(r) for r in PolyMatrix.identity(f, a.cols).entries]
        self.vi = [list(r) for r in PolyMatrix.identity(f, a.cols).entries]

    def swap_rows(self, i, j):
        if i == j:
            return
        for m in (self.a, self.u):
            m[i], m[j] = m[j], m[i]
        for r in self.ui:
            r[i], r[j] = r[j], r[i]

    def swap_cols(self, i, j):
        if i == j:
            return
        for m in (self.a, self.v):
            for r in m:
                r[i], r[j] = r[j], r[i]
        self.vi[i], self.vi[j] = self.vi[j], self.vi[i]

    def add_row(self, dst, src, c: Poly):
        # row_dst += c * row_src
        for m in (self.a, self.u):
            m[dst] = [x + c * y if y else x for x, y in zip(m[dst], m[src])]
        for r in self.ui:
            if r[dst]:
                r[src] = r[src] - c * r[dst]

    def add_col(self, dst, src, c: Poly):
        # col_dst += c * col_src
        for m in (self.a, self.v):
            for r in m:
                if r[src]:
                    r[dst] = r[dst] + c * r[src]
        self.vi[src] = [x - c * y if y else x for x, y in zip(self.vi[src], self.vi[dst])]

    def scale_row(self, i, c):
        f = self.field
        inv = f.inv(c)
        for m in (self.a, self.u):
            m[i] = [x.scale(c) for x in m[i]]
        for r in self.ui:
            r[i] = r[i].scale(inv)

    def result(self, a: PolyMatrix) -> SmithDecomposition:
        f = self.field
        return SmithDecomposition(
            U=PolyMatrix(f, self.u, cols=a.rows),
            S=PolyMatrix(f, self.a, cols=a.cols),
            V=PolyMatrix(f, self.v, cols=a.cols),
            U_inv=PolyMatrix(f, self.ui, cols=a.rows),
            V_inv=PolyMatrix(f, self.vi, cols=a.cols),
        )


def smith_form(a: PolyMatrix) -> SmithDecomposition:
    """Smith normal form by minimal-degree pivoting and division.

    Pivots are the nonzero entries of least degree in the trailing block,
    ties broken by smallest (row, column).  When the pivot fails to divide
    some trailing entry, that entry's row is added to the pivot row and the
    step restarts.
    """
    w = _Workspace(a)
    m = w.a
    rows, cols = a.rows, a.cols
    for t in range(min(rows, cols)):
        while True:
            best = None
            for i in range(t, rows):
                for j in range(t, cols):
                    x = m[i][j]
                    if x and (best is None or x.degree < best[0]):
                        best = (x.degree, i, j)
            if best is None:
                return w.result(a)
            _, i, j = best
            w.swap_rows(t, i)
            w.swap_cols(t, j)
            pivot = m[t][t]
            clean = True
            for i in range(t + 1, rows):
                if m[i][t]:
                    q, r = poly_divmod(m[i][t], pivot)
                    w.add_row(i, t, -q)
                    if r:
                        clean = False
            for j in range(t + 1, cols):
                if m[t][j]:
                    q, r = poly_divmod(m[t][j], pivot)
                    w.add_col(j, t, -q)
                    if r:
                        clean = False
            if not clean:
                continue
            bad = None
            for i in range(t + 1, rows):
                for j in range(t + 1, cols):
                    if m[i][j] and poly_divmod(m[i][j], pivot)[1]:
                        bad = i
                        break
                if bad is not None:
                    break
            if bad is not None:
                w.add_row(t, bad, Poly.one(w.field))
                continue
            if m[t][t].lc != w.field.one:
                w.scale_row(t, w.field.inv(m[t][t].lc))
            break
    return w.result(a)
