"""Exact linear algebra on 2-D numpy object arrays of raw field values."""
from __future__ import annotations

import numpy as np

from .errors import UsageError
from .field import Field


def matmul(field: Field, a: np.ndarray, b: np.ndarray) -> np.ndarray:
    if a.shape[1] != b.shape[0]:
        raise UsageError(f"shape mismatch {a.shape} @ {b.shape}")
    if a.shape[1] == 0:
        return field.zeros(a.shape[0], b.shape[1])
    out = a.dot(b)
    return reduce(field, out)


def reduce(field: Field, a: np.ndarray) -> np.ndarray:
    out = np.empty(a.shape, dtype=object)
    flat_in = a.ravel()
    flat_out = out.ravel()
    for i, x in enumerate(flat_in):
        flat_out[i] = field.reduce(x)
    return out


def add(field: Field, a: np.ndarray, b: np.ndarray) -> np.ndarray:
    if a.shape != b.shape:
        raise UsageError(f"shape mismatch {a.shape} + {b.shape}")
    return reduce(field, a + b)


def sub(field: Field, a: np.ndarray, b: np.ndarray) -> np.ndarray:
    if a.shape != b.shape:
        raise UsageError(f"shape mismatch {a.shape} - {b.shape}")
    return reduce(field, a - b)


def scale(field: Field, c, a: np.ndarray) -> np.ndarray:
    return reduce(field, a * field.convert(c))


def kron(field: Field, a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Kronecker product ``(a_ij * b)``."""
    ra, ca = a.shape
    rb, cb = b.shape
    out = field.zeros(ra * rb, ca * cb)
    for i in range(ra):
        for j in range(ca):
            if a[i, j]:
                out[i * rb:(i + 1) * rb, j * cb:(j + 1) * cb] = reduce(field, a[i, j] * b)
    return out


def block_diag(field: Field, blocks: list[np.ndarray]) -> np.ndarray:
    n = sum(b.shape[0] for b in blocks)
    m = sum(b.shape[1] for b in blocks)
    out = field.zeros(n, m)
    r = c = 0
    for b in blocks:
        out[r:r + b.shape[0], c:c + b.shape[1]] = b
        r += b.shape[0]
        c += b.shape[1]
    return out


def equal(a: np.ndarray, b: np.ndarray) -> bool:
    return a.shape == b.shape and all(x == y for x, y in zip(a.ravel(), b.ravel()))


def row_echelon(field: Field, a: np.ndarray) -> tuple[np.ndarray, list[int]]:
    """Reduced row echelon form with first-nonzero pivoting; returns pivot columns."""
    m = [list(row) for row in a]
    rows = len(m)
    cols = a.shape[1]
    pivots = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        piv = next((i for i in range(r, rows) if m[i][c]), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        inv = field.inv(m[r][c])
        m[r] = [field.mul(x, inv) for x in m[r]]
        for i in range(rows):
            if i != r and m[i][c]:
                f = m[i][c]
                m[i] = [field.sub(x, field.mul(f, y)) for x, y in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
    out = field.zeros(rows, cols)
    for i in range(rows):
        for j in range(cols):
            out[i, j] = m[i][j]
    return out, pivots


def rank(field: Field, a: np.ndarray) -> int:
    if a.size == 0:
        return 0
    return len(row_echelon(field, a)[1])


def inverse(field: Field, a: np.ndarray) -> np.ndarray:
    n, m = a.shape
    if n != m:
        raise UsageError("inverse of a non-square matrix")
    if n == 0:
        return field.zeros(0, 0)
    aug = np.concatenate([a, field.eye(n)], axis=1)
    red, pivots = row_echelon(field, aug)
    if pivots[:n] != list(range(n)):
        raise ZeroDivisionError("matrix is singular")
    return red[:, n:]


def det(field: Field, a: np.ndarray) -> object:
    n, m = a.shape
    if n != m:
        raise UsageError("determinant of a non-square matrix")
    rows = [list(r) for r in a]
    d = field.one
    for c in range(n):
        piv = next((i for i in range(c, n) if rows[i][c]), None)
        if piv is None:
            return field.zero
        if piv != c:
            rows[c], rows[piv] = rows[piv], rows[c]
            d = field.neg(d)
        d = field.mul(d, rows[c][c])
        inv = field.inv(rows[c][c])
        for i in range(c + 1, n):
            if rows[i][c]:
                f = field.mul(rows[i][c], inv)
                rows[i] = [field.sub(x, field.mul(f, y)) for x, y in zip(rows[i], rows[c])]
    return d


def matrix_power(field: Field, a: np.ndarray, e: int) -> np.ndarray:
    out = field.eye(a.shape[0])
    for _ in range(e):
        out = matmul(field, out, a)
    return out
