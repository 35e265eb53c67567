"""Symbolic checks: exact transfer matrices, minimality and McMillan degree."""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import linalg
from .field import Field
from .mcmillan import smith_mcmillan
from .poly import Poly
from .polymat import polymat_det, s_minus
from .ratfun import RatFun, RatMatrix, partial_fractions
from .realize import Realization


def characteristic_polynomial(field: Field, a: np.ndarray) -> Poly:
    return polymat_det(s_minus(field, a))


def _adjugate_terms(field: Field, a: np.ndarray, charpoly: Poly) -> list[np.ndarray]:
    # adj(sI - A) = sum_i s^(n-1-i) B_i with B_0 = I, B_i = A B_{i-1} + c_{n-i} I
    n = a.shape[0]
    terms = [field.eye(n)]
    for i in range(1, n):
        b = linalg.matmul(field, a, terms[-1])
        c = charpoly.coeff(n - i)
        if c:
            for j in range(n):
                b[j, j] = field.add(b[j, j], c)
        terms.append(b)
    return terms


def _assemble(field: Field, terms: list[np.ndarray], charpoly: Poly) -> RatMatrix:
    n = len(terms)
    rows, cols = terms[0].shape if terms else (0, 0)
    out = []
    for r in range(rows):
        row = []
        for c in range(cols):
            coeffs = [terms[n - 1 - d][r, c] for d in range(n)]
            row.append(RatFun(Poly(field, coeffs), charpoly))
        out.append(row)
    return RatMatrix(field, out, cols=cols)


def resolvent(field: Field, a: np.ndarray) -> RatMatrix:
    """Exact ``(sI - A)^-1`` as adjugate over determinant."""
    n = a.shape[0]
    if n == 0:
        return RatMatrix.zeros(field, 0, 0)
    chi = characteristic_polynomial(field, a)
    return _assemble(field, _adjugate_terms(field, a, chi), chi)


def transfer_of(r: Realization) -> RatMatrix:
    """Exact ``H (sI - F)^-1 G``."""
    f = r.field
    if r.dimension == 0:
        return RatMatrix.zeros(f, r.outputs, r.inputs)
    chi = characteristic_polynomial(f, r.F)
    terms = [linalg.matmul(f, linalg.matmul(f, r.H, b), r.G) for b in _adjugate_terms(f, r.F, chi)]
    return _assemble(f, terms, chi)


def controllability_matrix(r: Realization) -> np.ndarray:
    f = r.field
    blocks = [r.G]
    for _ in range(1, r.dimension):
        blocks.append(linalg.matmul(f, r.F, blocks[-1]))
    return np.concatenate(blocks, axis=1) if blocks else f.zeros(0, 0)


def observability_matrix(r: Realization) -> np.ndarray:
    f = r.field
    blocks = [r.H]
    for _ in range(1, r.dimension):
        blocks.append(linalg.matmul(f, blocks[-1], r.F))
    return np.concatenate(blocks, axis=0) if blocks else f.zeros(0, 0)


@dataclass(frozen=True)
class MinimalityReport:
    dimension: int
    controllability_rank: int
    observability_rank: int

    @property
    def minimal(self) -> bool:
        return self.controllability_rank == self.dimension == self.observability_rank

    def __bool__(self):
        return self.minimal


def is_minimal(r: Realization) -> MinimalityReport:
    if r.dimension == 0:
        return MinimalityReport(0, 0, 0)
    return MinimalityReport(
        dimension=r.dimension,
        controllability_rank=linalg.rank(r.field, controllability_matrix(r)),
        observability_rank=linalg.rank(r.field, observability_matrix(r)),
    )


def mcmillan_degree(T: RatMatrix, seed: int | None = None) -> int:
    """Sum of ``deg(p) * k`` over all prime components and Smith-McMillan exponents."""
    return sum(smith_mcmillan(c).degree() for c in partial_fractions(T, seed=seed))
