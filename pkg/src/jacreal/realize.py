"""Minimal state-space realizations with the state matrix in Jacobson normal form.

A strictly proper transfer matrix is split into prime components, each
component is written as a sum of rank-one terms ``h p^-k g^T`` through its
Smith-McMillan form, every rank-one term is realized by a single Jacobson
block, and the pieces are joined by a direct sum.
"""
from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from typing import Sequence

import numpy as np

from . import linalg
from .errors import UsageError
from .field import Field
from .mcmillan import SmithMcMillan, smith_mcmillan
from .poly import Poly, coeff_matrix, padic_expand, poly_gcd, vector_gcd
from .ratfun import PrimeComponent, RatMatrix, partial_fractions


@dataclass(frozen=True)
class Realization:
    """State-space triple with ``H (sI - F)^-1 G`` as transfer matrix.

    ``blocks`` lists the ``(prime, k)`` of the Jacobson blocks along the
    diagonal of ``F``.
    """

    F: np.ndarray
    G: np.ndarray
    H: np.ndarray
    field: Field
    blocks: tuple = dc_field(default=())

    def __post_init__(self):
        n = self.F.shape[0]
        if self.F.shape != (n, n) or self.G.shape[0] != n or self.H.shape[1] != n:
            raise UsageError(
                f"inconsistent realization shapes F{self.F.shape} G{self.G.shape} H{self.H.shape}"
            )

    @property
    def dimension(self) -> int:
        return self.F.shape[0]

    @property
    def outputs(self) -> int:
        return self.H.shape[0]

    @property
    def inputs(self) -> int:
        return self.G.shape[1]

    @classmethod
    def empty(cls, field: Field, outputs: int, inputs: int) -> Realization:
        return cls(
            F=field.zeros(0, 0), G=field.zeros(0, inputs), H=field.zeros(outputs, 0), field=field, blocks=()
        )


# -- structured matrices ---------------------------------------------------


def _check_monic(p: Poly):
    if p.degree < 1:
        raise UsageError(f"{p} must have degree >= 1")
    if not p.is_monic():
        raise UsageError(f"{p} is not monic")


def companion(p: Poly) -> np.ndarray:
    """Companion matrix: ones on the superdiagonal, last row ``-a_0 .. -a_{n-1}``."""
    _check_monic(p)
    f = p.field
    n = p.degree
    c = f.zeros(n, n)
    for i in range(n - 1):
        c[i, i + 1] = f.one
    for j in range(n):
        c[n - 1, j] = f.neg(p.coeff(j))
    return c


def v_matrix(field: Field, n: int) -> np.ndarray:
    """``e_n e_1^T``: a single one in the bottom-left corner."""
    v = field.zeros(n, n)
    v[n - 1, 0] = field.one
    return v


def nilpotent(field: Field, k: int) -> np.ndarray:
    """``N_k``: ones on the superdiagonal."""
    nk = field.zeros(k, k)
    for i in range(k - 1):
        nk[i, i + 1] = field.one
    return nk


def m_matrix(p: Poly) -> np.ndarray:
    """Symmetric Hankel matrix ``M[i, j] = a_{i+j+1}`` (``a_n = 1``, zero beyond)."""
    _check_monic(p)
    f = p.field
    n = p.degree
    m = f.zeros(n, n)
    for i in range(n):
        for j in range(n):
            if i + j + 1 <= n:
                m[i, j] = p.coeff(i + j + 1)
    return m


def m_matrix_inverse(p: Poly) -> np.ndarray:
    return linalg.inverse(p.field, m_matrix(p))


def jacobson_block(p: Poly, k: int) -> np.ndarray:
    """``J(p^k) = I_k (x) C(p) + N_k (x) e_n e_1^T``."""
    if k < 1:
        raise UsageError("Jacobson block exponent must be >= 1")
    f = p.field
    c = companion(p)
    n = p.degree
    return linalg.add(f, linalg.kron(f, f.eye(k), c), linalg.kron(f, nilpotent(f, k), v_matrix(f, n)))


# -- realizations ------------------------------------------------------------


def realize_rank1(h: Sequence[Poly], g: Sequence[Poly], p: Poly, k: int) -> Realization:
    """Minimal realization of the strictly proper part of ``h p^-k g^T`` with ``F = J(p^k)``.

    ``p`` must be monic irreducible and neither ``h`` nor ``g`` may vanish
    identically modulo ``p``.
    """
    _check_monic(p)
    if k < 1:
        raise UsageError("exponent k must be >= 1")
    f = p.field
    h, g = list(h), list(g)
    for name, vec in (("h", h), ("g", g)):
        if not vec:
            raise UsageError(f"{name} is empty")
        gg = poly_gcd(vector_gcd(vec), p)
        if not gg.is_one():
            raise UsageError(f"not a coprime factorization: gcd(content({name}), p) = {gg}")
    n = p.degree
    hx = padic_expand(h, p)
    gx = padic_expand(g, p)
    minv = m_matrix_inverse(p)
    H = np.concatenate([coeff_matrix(hx.digit(i), n, f) for i in range(k)], axis=1)
    g_blocks = [linalg.matmul(f, coeff_matrix(gx.digit(i), n, f), minv) for i in range(k)]
    G = np.concatenate([g_blocks[i].T for i in range(k - 1, -1, -1)], axis=0)
    return Realization(F=jacobson_block(p, k), G=G, H=H, field=f, blocks=((p, k),))


def direct_sum(rs: Sequence[Realization], outputs: int | None = None, inputs: int | None = None,
               field: Field | None = None) -> Realization:
    """Block-diagonal ``F``, stacked ``G``, concatenated ``H``."""
    rs = list(rs)
    if not rs:
        if outputs is None or inputs is None or field is None:
            raise UsageError("an empty direct sum needs outputs, inputs and field")
        return Realization.empty(field, outputs, inputs)
    fld = rs[0].field
    q, t = rs[0].outputs, rs[0].inputs
    for r in rs:
        if r.field != fld or r.outputs != q or r.inputs != t:
            raise UsageError("direct sum of realizations with different fields or I/O sizes")
    if (outputs is not None and outputs != q) or (inputs is not None and inputs != t):
        raise UsageError("declared I/O size does not match the realizations")
    if len(rs) == 1:
        return rs[0]
    F = linalg.block_diag(fld, [r.F for r in rs])
    G = np.concatenate([r.G for r in rs], axis=0)
    H = np.concatenate([r.H for r in rs], axis=1)
    blocks = tuple(b for r in rs for b in r.blocks)
    return Realization(F=F, G=G, H=H, field=fld, blocks=blocks)


def realize_prime_component(c: PrimeComponent, smf: SmithMcMillan | None = None) -> Realization:
    """Realize a prime component as a direct sum of rank-one Jacobson realizations.

    ``smf`` may supply a precomputed Smith-McMillan form (any valid ``U``,
    ``V``); by default it is computed.
    """
    if smf is None:
        smf = smith_mcmillan(c)
    T = c.component
    p = smf.prime
    parts = []
    for i, (a, k) in enumerate(zip(smf.numerators, smf.exponents)):
        if k <= 0:
            continue
        a_tilde = a % p**k
        u = smf.U.column(i)
        v = smf.V.column(i)
        parts.append(realize_rank1([x * a_tilde for x in u], v, p, k))
    return direct_sum(parts, outputs=T.rows, inputs=T.cols, field=T.field)


def realize_full(T: RatMatrix, seed: int | None = None) -> Realization:
    """Minimal realization of a strictly proper transfer matrix, ``F`` in Jacobson form."""
    if not T.is_strictly_proper():
        raise UsageError("transfer matrix is not strictly proper; apply pi_minus_matrix first")
    parts = [realize_prime_component(c) for c in partial_fractions(T, seed=seed)]
    parts = [r for r in parts if r.dimension]
    return direct_sum(parts, outputs=T.rows, inputs=T.cols, field=T.field)
