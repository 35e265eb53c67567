"""Shared data and generators for the test suite.

The worked example over GF(5) is transcribed here once; every test that
needs it imports from this module.
"""
from __future__ import annotations

import itertools
import random
from pathlib import Path

import numpy as np
from hypothesis import strategies as st

from jacreal import (
    GF,
    QQ,
    Poly,
    PolyMatrix,
    PrimeComponent,
    RatFun,
    RatMatrix,
    linalg,
    parse_expr,
    pi_minus_matrix,
    polymat_det,
    resolvent,
)
from jacreal.poly import poly_gcd
from jacreal.ratfun import kron as ratkron
from jacreal.realize import companion, jacobson_block, m_matrix, nilpotent
from jacreal.factor import is_irreducible

DATA = Path(__file__).resolve().parent.parent / "data"
F5 = GF(5)


def P(text: str, field=F5) -> Poly:
    """Polynomial from an expression string."""
    r = parse_expr(text, field)
    assert r.is_polynomial(), text
    return r.num


def R(text: str, field=F5):
    return parse_expr(text, field)


def ratmat(rows, field=F5) -> RatMatrix:
    return RatMatrix(field, [[R(x, field) if isinstance(x, str) else x for x in row] for row in rows])


def polymat(rows, field=F5) -> PolyMatrix:
    return PolyMatrix(field, [[P(x, field) if isinstance(x, str) else x for x in row] for row in rows])


def arr(rows, field=F5) -> np.ndarray:
    return field.array(rows)


# -- the worked example -----------------------------------------------------

P1 = P("s^2+s+2")
P2 = P("s^3+3*s^2+s+1")
DEN = "((s^2+s+2)^2*(s^3+3*s^2+s+1))"

T_EXAMPLE = ratmat(
    [
        [f"(2*s^6+3*s^3+2*s^2+s+4)/{DEN}", f"(s^6+4*s^3+s^2+2*s+2)/{DEN}"],
        [f"(2*s^6+3*s^3+2*s^2+s+1)/{DEN}", f"2*(3*s^6+2*s^3+3*s^2+s+3)/{DEN}"],
    ]
)

T_P1 = ratmat(
    [
        ["(3*s^3+4*s^2+s)/(s^2+s+2)^2", "(3*s^3+2*s^2+3*s+4)/(s^2+s+2)^2"],
        ["(s+3)/(s^2+s+2)^2", "(2*s^3+4*s^2+3*s)/(s^2+s+2)^2"],
    ]
)

T_P2 = ratmat(
    [
        ["(4*s^2+4*s+1)/(s^3+3*s^2+s+1)", "(3*s^2+3*s+2)/(s^3+3*s^2+s+1)"],
        ["(2*s^2+s+2)/(s^3+3*s^2+s+1)", "(4*s^2+2*s+4)/(s^3+3*s^2+s+1)"],
    ]
)

SIGMA_P1 = [R("1/(s^2+s+2)^2"), R("(s+1)*(s^3+3*s^2+4)/(s^2+s+2)")]
SIGMA_P2 = [R("1/(s^3+3*s^2+s+1)"), R("0")]

U_P1 = polymat([["s*(3*s^2+4*s+1)", "4*s^2+3"], ["s+3", "3"]])
V_P1 = polymat([["1", "0"], ["2*s^5+4*s^4+s^3+4*s^2+2", "1"]])
U_P2 = polymat([["4*s^2+4*s+1", "s"], ["2*s^2+s+2", "3*s+1"]])
V_P2 = polymat([["1", "0"], ["2", "1"]])

# sub-problem inputs (h, g, p, k) and the matrices displayed for them
RANK1_CASES = {
    "p1_squared": dict(
        h=[P("3*s^3+4*s^2+s"), P("s+3")],
        g=[P("1"), P("2*s^5+4*s^4+s^3+4*s^2+2")],
        p=P1,
        k=2,
        H=[[3, 4, 1, 3], [3, 1, 0, 0]],
        H_digits=[[[3, 4], [3, 1]], [[1, 3], [0, 0]]],
        G_digits=[[[0, 1], [0, 2]], [[0, 0], [1, -1]]],
        G=[[0, 1], [0, 4], [0, 0], [1, 2]],
        F=[[0, 1, 0, 0], [3, 4, 1, 0], [0, 0, 0, 1], [0, 0, 3, 4]],
    ),
    "p1_simple": dict(
        h=[P("2*s^2+4"), P("4")],
        g=[P("0"), P("1")],
        p=P1,
        k=1,
        h_digits=[[P("3*s"), P("4")], [P("2"), P("0")]],
        H=[[0, 3], [4, 0]],
        G=[[0, 0], [0, 1]],
        F=[[0, 1], [3, 4]],
    ),
    "p2": dict(
        h=[P("4*s^2+4*s+1"), P("2*s^2+s+2")],
        g=[P("1"), P("2")],
        p=P2,
        k=1,
        H=[[1, 4, 4], [2, 1, 2]],
        G=[[0, 0], [0, 0], [1, 2]],
        F=[[0, 1, 0], [0, 0, 1], [4, 4, 2]],
    ),
}

F_FULL = [
    [0, 1, 0, 0, 0, 0, 0, 0, 0],
    [3, 4, 1, 0, 0, 0, 0, 0, 0],
    [0, 0, 0, 1, 0, 0, 0, 0, 0],
    [0, 0, 3, 4, 0, 0, 0, 0, 0],
    [0, 0, 0, 0, 0, 1, 0, 0, 0],
    [0, 0, 0, 0, 3, 4, 0, 0, 0],
    [0, 0, 0, 0, 0, 0, 0, 1, 0],
    [0, 0, 0, 0, 0, 0, 0, 0, 1],
    [0, 0, 0, 0, 0, 0, 4, 4, 2],
]
H_FULL = [[3, 4, 1, 3, 0, 3, 1, 4, 4], [3, 1, 0, 0, 4, 0, 2, 1, 2]]
G_FULL = [[0, 1], [0, -1], [0, 0], [1, 2], [0, 0], [0, 1], [0, 0], [0, 0], [1, 2]]


# -- random generators --------------------------------------------------------

FIELDS = [GF(2), GF(5), GF(101), QQ]


def rand_scalar(rng: random.Random, field, nonzero=False):
    while True:
        if field.is_prime_field:
            x = rng.randrange(field.modulus)
        else:
            x = field.convert(f"{rng.randint(-9, 9)}/{rng.randint(1, 4)}")
        if x or not nonzero:
            return x


def rand_poly(rng: random.Random, field, degree: int, monic=False) -> Poly:
    """Polynomial of degree at most ``degree`` (exactly ``degree`` when monic)."""
    if degree < 0:
        return Poly.zero(field)
    coeffs = [rand_scalar(rng, field) for _ in range(degree)]
    coeffs.append(field.one if monic else rand_scalar(rng, field))
    return Poly(field, coeffs)


def rand_irreducible(rng: random.Random, field, degree: int) -> Poly:
    """Monic irreducible of the given degree (rejection sampling)."""
    while True:
        p = rand_poly(rng, field, degree, monic=True)
        if is_irreducible(p):
            return p


def rand_matrix(rng: random.Random, field, rows: int, cols: int) -> np.ndarray:
    return field.array([[rand_scalar(rng, field) for _ in range(cols)] for _ in range(rows)])


def rand_invertible(rng: random.Random, field, n: int) -> np.ndarray:
    while True:
        m = rand_matrix(rng, field, n, n)
        if linalg.det(field, m) != 0:
            return m


# -- hypothesis strategies ------------------------------------------------------


def scalars(field):
    if field.is_prime_field:
        return st.integers(0, field.modulus - 1)
    return st.fractions(min_value=-20, max_value=20, max_denominator=6)


def polys(field, max_degree=6, min_degree=-1):
    return st.lists(scalars(field), min_size=min_degree + 1, max_size=max_degree + 1).map(
        lambda cs: Poly(field, cs)
    )


def monic_polys(field, min_degree=1, max_degree=5):
    return st.integers(min_degree, max_degree).flatmap(
        lambda d: st.lists(scalars(field), min_size=d, max_size=d).map(
            lambda cs: Poly(field, list(cs) + [field.one])
        )
    )


fields = st.sampled_from(FIELDS)


# -- resolvent identities for C(p) and J(p^k) -------------------------------------


def basis_column(field, n: int) -> RatMatrix:
    """``b = (1, s, ..., s^(n-1))^T``."""
    return RatMatrix(field, [[RatFun(Poly.monomial(field, i))] for i in range(n)])


def toeplitz_inverse(p: Poly, k: int) -> RatMatrix:
    """Upper-triangular Toeplitz matrix with entries p^-1, ..., p^-k."""
    f = p.field
    return RatMatrix(
        f,
        [[RatFun(Poly.one(f), p ** (j - i + 1)) if j >= i else RatFun.zero(f) for j in range(k)] for i in range(k)],
    )


def resolvent_identities(p: Poly, k: int) -> dict[str, bool]:
    """Check each identity exactly; map a short name to the outcome."""
    f = p.field
    n = p.degree
    C = companion(p)
    M = RatMatrix.from_scalar(f, m_matrix(p))
    b = basis_column(f, n)
    inv_p = RatFun(Poly.one(f), p)
    sI_C = _pencil(f, C)
    res_c = resolvent(f, C)
    out = {}

    # (sI - C) pi_-(p^-1 b b^T M) = I
    out["pencil_inverse"] = sI_C @ pi_minus_matrix((b @ b.T @ M).scale(inv_p)) == RatMatrix.identity(f, n)

    # (sI - C)^-1 e_n = p^-1 b  and  e_1^T (sI - C)^-1 = p^-1 b^T M
    e_n = RatMatrix.from_scalar(f, unit_row(f, n, n - 1).T)
    e_1 = RatMatrix.from_scalar(f, unit_row(f, n, 0))
    out["last_column"] = res_c @ e_n == b.scale(inv_p)
    out["first_row"] = e_1 @ res_c == (b.T @ M).scale(inv_p)

    # pi_-(s^j (sI - C)^-1) = C^j (sI - C)^-1 for j <= n
    ok = True
    for j in range(n + 1):
        lhs = pi_minus_matrix(res_c.scale(RatFun(Poly.monomial(f, j))))
        rhs = RatMatrix.from_scalar(f, linalg.matrix_power(f, C, j)) @ res_c
        ok = ok and lhs == rhs
    out["shift"] = ok

    # (p I_k - N_k)^-1 is the Toeplitz matrix of p^-1 .. p^-k
    pI_N = RatMatrix.identity(f, k).scale(RatFun(p)) - RatMatrix.from_scalar(f, nilpotent(f, k))
    tz = toeplitz_inverse(p, k)
    out["toeplitz"] = pI_N @ tz == RatMatrix.identity(f, k) == tz @ pI_N

    # (sI - J(p^k))^-1 = pi_-[(p I_k - N_k)^-1 (x) b b^T M]
    out["block_resolvent"] = resolvent(f, jacobson_block(p, k)) == pi_minus_matrix(ratkron(tz, b @ b.T @ M))
    return out


def _pencil(field, a) -> RatMatrix:
    n = a.shape[0]
    s = RatFun(Poly.s(field))
    return RatMatrix.identity(field, n).scale(s) - RatMatrix.from_scalar(field, a)


def unit_row(field, n: int, i: int):
    """Row vector ``e_{i+1}^T`` of length ``n``."""
    e = field.zeros(1, n)
    e[0, i] = field.one
    return e


# -- Smith-McMillan oracle ----------------------------------------------------------


def minors_sigma(c: PrimeComponent) -> list[RatFun]:
    """Smith-McMillan diagonal from determinantal divisors of the numerator matrix."""
    T, p = c.component, c.prime
    ell = c.exponent
    pl = p**ell
    N = [[x.num * pl.exact_div(x.den) for x in row] for row in T.entries]
    q, t = T.rows, T.cols
    divisors = [Poly.one(T.field)]
    for k in range(1, min(q, t) + 1):
        g = Poly.zero(T.field)
        for rows in itertools.combinations(range(q), k):
            for cols in itertools.combinations(range(t), k):
                sub = PolyMatrix(T.field, [[N[i][j] for j in cols] for i in rows], cols=k)
                minor = polymat_det(sub)
                if minor:
                    g = poly_gcd(g, minor)
        if g.is_zero():
            break
        divisors.append(g)
    inv = [divisors[k].exact_div(divisors[k - 1]) for k in range(1, len(divisors))]
    out = [RatFun(d, pl) for d in inv]
    return out + [RatFun.zero(T.field)] * (min(q, t) - len(out))



# fixed table of monic irreducibles for the structural checks
IRREDUCIBLE_TABLE = [
    P(text, field)
    for field, texts in [
        (GF(2), ["s+1", "s^2+s+1", "s^3+s+1", "s^4+s+1"]),
        (GF(3), ["s^2+1", "s^3+2*s+1"]),
        (GF(5), ["s+3", "s^2+s+2", "s^3+3*s^2+s+1"]),
        (GF(101), ["s^2+2", "s^3+s+1"]),
        (QQ, ["s-2", "s^2+1", "s^3-2", "s^4+1"]),
    ]
    for text in texts
]
