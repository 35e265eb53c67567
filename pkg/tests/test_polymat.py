import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from helpers import F5, P, P1, P2, U_P1, U_P2, V_P1, V_P2, polymat, polys, rand_poly
from jacreal import (
    GF,
    QQ,
    Poly,
    PolyMatrix,
    UsageError,
    is_unimodular,
    polymat_add,
    polymat_det,
    polymat_mul,
    s_minus,
    smith_form,
)
from jacreal.realize import companion, jacobson_block, m_matrix


def cofactor_det(a: PolyMatrix) -> Poly:
    """Laplace expansion along the first row."""
    n = a.rows
    if n == 0:
        return Poly.one(a.field)
    if n == 1:
        return a[0, 0]
    total = Poly.zero(a.field)
    for j in range(n):
        minor = PolyMatrix(a.field, [row[:j] + row[j + 1:] for row in a.entries[1:]], cols=n - 1)
        term = a[0, j] * cofactor_det(minor)
        total = total + term if j % 2 == 0 else total - term
    return total


def poly_matrices(field, n, m=None, max_degree=2):
    m = n if m is None else m
    return st.lists(
        st.lists(polys(field, max_degree), min_size=m, max_size=m), min_size=n, max_size=n
    ).map(lambda rows: PolyMatrix(field, rows, cols=m))


def check_smith(a: PolyMatrix):
    sd = smith_form(a)
    assert sd.U @ a @ sd.V == sd.S
    assert is_unimodular(sd.U) and is_unimodular(sd.V)
    assert sd.U @ sd.U_inv == PolyMatrix.identity(a.field, a.rows)
    assert sd.V @ sd.V_inv == PolyMatrix.identity(a.field, a.cols)
    for i in range(sd.S.rows):
        for j in range(sd.S.cols):
            if i != j:
                assert sd.S[i, j].is_zero()
    inv = sd.invariant_factors
    assert all(d.is_monic() for d in inv)
    for d, e in zip(inv, inv[1:]):
        assert (e % d).is_zero()
    diag = [sd.S[i, i] for i in range(min(sd.S.rows, sd.S.cols))]
    assert diag[: len(inv)] == inv and all(x.is_zero() for x in diag[len(inv):])
    return sd


# -- arithmetic ------------------------------------------------------------------

def test_identity_and_zero():
    a = polymat([["s+1", "2"], ["s^2", "0"]])
    i2 = PolyMatrix.identity(F5, 2)
    assert polymat_mul(a, i2) == a
    assert polymat_add(PolyMatrix.zeros(F5, 2, 2), a) == a
    with pytest.raises(UsageError):
        polymat_mul(a, PolyMatrix.zeros(F5, 3, 3))
    with pytest.raises(UsageError):
        polymat_add(a, PolyMatrix.zeros(F5, 2, 3))


def test_mc_equals_ct_m_as_polymatrices():
    m = PolyMatrix.from_scalar(F5, m_matrix(P2))
    c = PolyMatrix.from_scalar(F5, companion(P2))
    assert m @ c == c.transpose() @ m


# -- determinants ------------------------------------------------------------------

def test_det_of_companion_pencil():
    a = s_minus(F5, companion(P2))
    assert polymat_det(a) == P2 == cofactor_det(a)
    assert polymat_det(PolyMatrix.identity(F5, 4)) == Poly.one(F5)


def test_det_of_example_transformers():
    for u in (U_P1, U_P2, V_P1, V_P2):
        d = u[0, 0] * u[1, 1] - u[0, 1] * u[1, 0]
        assert polymat_det(u) == d
        assert d.is_constant() and d


def test_det_non_square():
    with pytest.raises(UsageError):
        polymat_det(PolyMatrix.zeros(F5, 2, 3))


@settings(max_examples=40, deadline=None)
@given(st.sampled_from([GF(2), GF(5), GF(101), QQ]), st.integers(1, 3), st.data())
def test_det_matches_cofactor_and_is_multiplicative(field, n, data):
    a = data.draw(poly_matrices(field, n))
    b = data.draw(poly_matrices(field, n))
    assert polymat_det(a) == cofactor_det(a)
    assert polymat_det(a @ b) == polymat_det(a) * polymat_det(b)


# -- unimodularity --------------------------------------------------------------------

def test_is_unimodular_examples():
    assert is_unimodular(V_P1)
    assert not is_unimodular(polymat([["s", "0"], ["0", "1"]]))
    assert is_unimodular(PolyMatrix.identity(F5, 3))
    with pytest.raises(UsageError):
        is_unimodular(PolyMatrix.zeros(F5, 1, 2))


# -- Smith form ----------------------------------------------------------------------

def test_smith_of_jacobson_pencil():
    sd = check_smith(s_minus(F5, jacobson_block(P1, 2)))
    assert [sd.S[i, i] for i in range(4)] == [Poly.one(F5)] * 3 + [P1**2]


def test_smith_of_identity_and_zero():
    sd = check_smith(PolyMatrix.identity(F5, 3))
    assert sd.S == PolyMatrix.identity(F5, 3)
    sd = check_smith(PolyMatrix.zeros(F5, 2, 3))
    assert sd.rank == 0 and sd.S == PolyMatrix.zeros(F5, 2, 3)


def test_smith_random_3x3_gf5():
    rng = random.Random(7)
    for _ in range(20):
        a = PolyMatrix(F5, [[rand_poly(rng, F5, 2) for _ in range(3)] for _ in range(3)])
        sd = check_smith(a)
        # the product of invariant factors is the monic determinant
        prod = Poly.one(F5)
        for d in sd.invariant_factors:
            prod = prod * d
        det = polymat_det(a)
        if det:
            assert sd.rank == 3 and prod == det.monic()
        else:
            assert sd.rank < 3


@settings(max_examples=40, deadline=None)
@given(st.sampled_from([GF(2), GF(5), QQ]), st.integers(1, 3), st.integers(1, 3), st.data())
def test_smith_properties(field, n, m, data):
    a = data.draw(poly_matrices(field, n, m))
    sd = check_smith(a)
    # idempotent in content
    assert smith_form(sd.S).S == sd.S


def test_smith_detects_divisibility_repair():
    # diag(s, s+1) is not in Smith form: invariant factors are 1, s(s+1)
    sd = check_smith(polymat([["s", "0"], ["0", "s+1"]]))
    assert sd.invariant_factors == [Poly.one(F5), P("s^2+s")]
