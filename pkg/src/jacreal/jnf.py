"""Jacobson normal form of a square matrix through a realization of its resolvent."""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import linalg
from .errors import InvariantViolation, UsageError
from .factor import factor
from .field import Field
from .polymat import s_minus, smith_form
from .realize import jacobson_block, realize_full
from .verify import resolvent


@dataclass(frozen=True)
class JacobsonForm:
    """``A = S @ J @ S^-1`` with ``J`` block diagonal in Jacobson blocks."""

    J: np.ndarray
    S: np.ndarray
    elementary_divisors: tuple
    field: Field


def _canonical_order(divisors):
    # primes in factor order, exponents ascending within a prime
    return sorted(divisors, key=lambda pk: (pk[0].sort_key(), pk[1]))


def elementary_divisors(field: Field, a: np.ndarray, seed: int | None = None) -> list:
    """Prime powers ``(p, k)`` of the invariant factors of ``sI - A``, canonically ordered."""
    if a.shape[0] != a.shape[1]:
        raise UsageError("elementary divisors need a square matrix")
    out = []
    for d in smith_form(s_minus(field, a)).invariant_factors:
        if d.degree > 0:
            out.extend(factor(d, seed=seed).factors)
    return _canonical_order(out)


def jacobson_matrix(field: Field, divisors) -> np.ndarray:
    """Block diagonal of ``J(p^k)`` in the given order."""
    return linalg.block_diag(field, [jacobson_block(p, k) for p, k in divisors])


def jacobson_normal_form(field: Field, a: np.ndarray, seed: int | None = None) -> JacobsonForm:
    """Realize ``(sI - A)^-1`` minimally; the output map transforms ``A`` into Jacobson form."""
    n, m = a.shape
    if n != m:
        raise UsageError("Jacobson normal form needs a square matrix")
    if n == 0:
        return JacobsonForm(J=field.zeros(0, 0), S=field.zeros(0, 0), elementary_divisors=(), field=field)
    r = realize_full(resolvent(field, a), seed=seed)
    if r.dimension != n or not linalg.equal(linalg.matmul(field, r.H, r.G), field.eye(n)):
        raise InvariantViolation("realization of the resolvent does not satisfy H G = I")

    offsets = []
    pos = 0
    for p, k in r.blocks:
        offsets.append(pos)
        pos += p.degree * k
    order = sorted(range(len(r.blocks)), key=lambda i: (r.blocks[i][0].sort_key(), r.blocks[i][1]))
    perm = []
    for i in order:
        p, k = r.blocks[i]
        perm.extend(range(offsets[i], offsets[i] + p.degree * k))
    J = r.F[np.ix_(perm, perm)]
    S = r.H[:, perm]
    divisors = tuple(r.blocks[i] for i in order)

    if not linalg.equal(linalg.matmul(field, a, S), linalg.matmul(field, S, J)):
        raise InvariantViolation("A S != S J after block reordering")
    if list(divisors) != elementary_divisors(field, a, seed=seed):
        raise InvariantViolation("resolvent route and Smith-form route disagree on elementary divisors")
    return JacobsonForm(J=J, S=S, elementary_divisors=divisors, field=field)
