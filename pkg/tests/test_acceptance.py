"""Acceptance suite: one test per criterion, each printing a PASS/FAIL line.

The lines are printed with output capture suspended, so they show up in a
plain ``pytest`` run. The module also runs as a script::

    python tests/test_acceptance.py
"""
from __future__ import annotations

import random
import sys
import time
from collections import Counter
from contextlib import contextmanager
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).resolve().parent))

from helpers import (  # noqa: E402
    DATA,
    F5,
    F_FULL,
    G_FULL,
    H_FULL,
    IRREDUCIBLE_TABLE,
    P1,
    P2,
    RANK1_CASES,
    SIGMA_P1,
    SIGMA_P2,
    T_P1,
    T_P2,
    T_EXAMPLE,
    U_P1,
    U_P2,
    V_P1,
    V_P2,
    R,
    arr,
    minors_sigma,
    rand_invertible,
    rand_irreducible,
    rand_poly,
    resolvent_identities,
)
from jacreal import (  # noqa: E402
    GF,
    QQ,
    Poly,
    PrimeComponent,
    RatFun,
    RatMatrix,
    coeff_matrix,
    companion,
    direct_sum,
    elementary_divisors,
    is_minimal,
    jacobson_block,
    jacobson_matrix,
    jacobson_normal_form,
    linalg,
    m_matrix,
    mcmillan_degree,
    padic_expand,
    parse_problem,
    partial_fractions,
    pi_minus,
    realize_full,
    realize_prime_component,
    realize_rank1,
    s_minus,
    smith_form,
    smith_mcmillan,
    smith_mcmillan_from_fixture,
    transfer_of,
)
from jacreal.poly import poly_divmod  # noqa: E402
from jacreal.ratfun import outer, pi_minus_matrix  # noqa: E402
from jacreal.realize import m_matrix_inverse, nilpotent, v_matrix  # noqa: E402


@pytest.fixture
def emit(capsys):
    def _emit(line):
        with capsys.disabled():
            print(line)

    return _emit


@contextmanager
def criterion(emit, number: int, summary: str, budget: float | None = None):
    start = time.perf_counter()
    try:
        yield
    except BaseException as exc:
        emit(f"criterion {number}: FAIL {summary} ({type(exc).__name__}: {exc})")
        raise
    elapsed = time.perf_counter() - start
    if budget is not None and elapsed >= budget:
        emit(f"criterion {number}: FAIL {summary} ({elapsed:.2f}s, budget {budget:g}s)")
        raise AssertionError(f"criterion {number} took {elapsed:.2f}s, budget {budget:g}s")
    emit(f"criterion {number}: PASS {summary} ({elapsed:.2f}s)")


def same(a, b) -> bool:
    return a.shape == b.shape and linalg.equal(a, b)


def block_key(pk):
    p, k = pk
    return (str(p.field), p.degree, str(p), k)


def multiplicity(d: Poly, p: Poly) -> int:
    e = 0
    while d.degree >= p.degree:
        q, r = poly_divmod(d, p)
        if r:
            break
        d, e = q, e + 1
    return e


def smith_blocks(field, F, primes) -> list:
    """Elementary divisors of ``sI - F`` read off its Smith form, for the given primes.

    Also checks that no other prime divides the invariant factors.
    """
    inv = smith_form(s_minus(field, F)).invariant_factors
    product = Poly.one(field)
    for d in inv:
        product = product * d
    out, expected = [], Poly.one(field)
    for p in primes:
        for d in inv:
            e = multiplicity(d, p)
            if e:
                out.append((p, e))
                expected = expected * p**e
    assert product == expected, "invariant factors contain an unexpected prime"
    return out


# -- 1 --------------------------------------------------------------------------------


def test_criterion_1_golden_pipeline(emit):
    with criterion(emit, 1, "golden pipeline over GF(5): dim 9, blocks, exact transfer, minimal", budget=5):
        prob = parse_problem((DATA / "worked_example.txt").read_bytes())
        assert prob.field == F5 and prob.matrix == T_EXAMPLE
        r = realize_full(prob.matrix)
        assert r.dimension == 9
        assert Counter(r.blocks) == Counter([(P1, 2), (P1, 1), (P2, 1)])
        assert transfer_of(r) == prob.matrix
        assert is_minimal(r)


# -- 2 --------------------------------------------------------------------------------


def test_criterion_2_fixtures(emit):
    with criterion(emit, 2, "rank-one sub-problems and 9x9 direct sum reproduced verbatim"):
        for name, case in sorted(RANK1_CASES.items()):
            r = realize_rank1(case["h"], case["g"], case["p"], case["k"])
            assert r.H.tolist() == case["H"], name
            assert r.G.tolist() == case["G"], name
            assert r.F.tolist() == case["F"], name
        # H = (H_0, H_1) and G = (G_1^T; G_0^T) for the k = 2 case
        case = RANK1_CASES["p1_squared"]
        r = realize_rank1(case["h"], case["g"], case["p"], case["k"])
        H0, H1 = (arr(d) for d in case["H_digits"])
        G0, G1 = (arr(d) for d in case["G_digits"])
        assert same(r.H[:, :2], H0) and same(r.H[:, 2:], H1)
        assert same(r.G[:2], G1.T) and same(r.G[2:], G0.T)
        # the k = 1 case uses only the lowest p-adic digit of h
        case = RANK1_CASES["p1_simple"]
        exp = padic_expand(case["h"], case["p"])
        assert [exp.digit(i) for i in range(2)] == case["h_digits"]
        assert coeff_matrix(exp.digit(0), case["p"].degree).tolist() == case["H"]

        smf1 = smith_mcmillan_from_fixture(U_P1, SIGMA_P1, V_P1, P1, check=T_P1)
        smf2 = smith_mcmillan_from_fixture(U_P2, SIGMA_P2, V_P2, P2, check=T_P2)
        r1 = realize_prime_component(PrimeComponent(P1, T_P1), smf1)
        r2 = realize_prime_component(PrimeComponent(P2, T_P2), smf2)
        full = direct_sum([r1, r2])
        assert same(full.F, arr(F_FULL))
        assert same(full.H, arr(H_FULL))
        assert same(full.G, arr(G_FULL))
        assert transfer_of(full) == T_EXAMPLE


# -- 3 --------------------------------------------------------------------------------


def test_criterion_3_intermediates(emit):
    with criterion(emit, 3, "partial fractions, both Smith-McMillan diagonals, pi_-(a2/p)"):
        comps = partial_fractions(T_EXAMPLE)
        assert [c.prime for c in comps] == [P1, P2]
        assert comps[0].component == T_P1 and comps[1].component == T_P2
        for comp, sigma in zip(comps, [SIGMA_P1, SIGMA_P2]):
            smf = smith_mcmillan(comp)
            diag = smf.sigma()
            assert [diag[i, i] for i in range(2)] == sigma
            assert minors_sigma(comp) == sigma
        assert pi_minus(SIGMA_P1[1]) == R("3/(s^2+s+2)")


# -- 4 --------------------------------------------------------------------------------


def test_criterion_4_resolvent_identities(emit):
    rng = random.Random(4)
    fields = [GF(2), GF(5), GF(101), QQ]
    count = 0
    with criterion(emit, 4, "resolvent identities on 52 random (p, k), deg p <= 5, k <= 3", budget=60):
        for field in fields:
            for i in range(13):
                p = rand_irreducible(rng, field, 1 + i % 5)
                k = 1 + i % 3
                checks = resolvent_identities(p, k)
                assert checks["pencil_inverse"] and checks["block_resolvent"], (field, p, k, checks)
                assert all(checks.values()), (field, p, k, checks)
                count += 1
        assert count >= 50


# -- 5 --------------------------------------------------------------------------------


def coprime_vector(rng, field, length, p, max_degree):
    while True:
        v = [rand_poly(rng, field, max_degree) for _ in range(length)]
        if any(poly_divmod(x, p)[1] for x in v):
            return v


def test_criterion_5_rank_one(emit):
    rng = random.Random(5)
    count = 0
    with criterion(emit, 5, "realize_rank1 on 100 random coprime instances over GF(5), GF(101)", budget=120):
        for field in (GF(5), GF(101)):
            for _ in range(50):
                p = rand_irreducible(rng, field, rng.randint(1, 3))
                k = rng.randint(1, 3)
                top = p.degree * k + 2
                h = coprime_vector(rng, field, rng.randint(1, 3), p, top)
                g = coprime_vector(rng, field, rng.randint(1, 3), p, top)
                r = realize_rank1(h, g, p, k)
                w = outer(h, RatFun(Poly.one(field), p**k), g)
                assert transfer_of(r) == pi_minus_matrix(w)
                assert r.dimension == k * p.degree
                assert is_minimal(r)
                count += 1
        assert count >= 100


# -- 6 --------------------------------------------------------------------------------


def random_transfer(rng, field):
    """Strictly proper T with at most two primes and lcm denominator degree <= 6."""
    while True:
        primes = []
        budget = 6
        for _ in range(rng.randint(1, 2)):
            if budget < 1:
                break
            p = rand_irreducible(rng, field, rng.randint(1, min(3, budget)))
            if p in [q for q, _ in primes]:
                continue
            e = rng.randint(1, budget // p.degree)
            primes.append((p, e))
            budget -= p.degree * e
        den = Poly.one(field)
        for p, e in primes:
            den = den * p**e
        q, t = rng.randint(1, 3), rng.randint(1, 3)
        T = RatMatrix(
            field, [[RatFun(rand_poly(rng, field, den.degree - 1), den) for _ in range(t)] for _ in range(q)]
        )
        if not T.is_zero():
            assert T.is_strictly_proper() and T.lcd().degree <= 6
            return T, [p for p, _ in primes]


def test_criterion_6_pipeline(emit):
    rng = random.Random(6)
    with criterion(emit, 6, "realize_full on 50 random strictly proper T over GF(5)", budget=300):
        for _ in range(50):
            T, primes = random_transfer(rng, F5)
            r = realize_full(T)
            assert transfer_of(r) == T
            assert r.dimension == mcmillan_degree(T)
            oracle = sum(
                c.prime.degree * max(0, x.den.degree // c.prime.degree)
                for c in partial_fractions(T)
                for x in minors_sigma(c)
            )
            assert r.dimension == oracle
            assert sorted(smith_blocks(F5, r.F, primes), key=block_key) == sorted(r.blocks, key=block_key)
            assert same(r.F, jacobson_matrix(F5, r.blocks))


# -- 7 --------------------------------------------------------------------------------


def random_jacobson_data(rng, field, size):
    blocks, used = [], 0
    while used < size:
        p = rand_irreducible(rng, field, rng.randint(1, min(3, size - used)))
        k = rng.randint(1, (size - used) // p.degree)
        blocks.append((p, k))
        used += p.degree * k
    return blocks


def test_criterion_7_jacobson_normal_form(emit):
    rng = random.Random(7)
    count = 0
    with criterion(emit, 7, "jacobson_normal_form on 50 conjugated Jacobson forms over GF(5), Q"):
        for field in (F5, QQ):
            for _ in range(25):
                blocks = random_jacobson_data(rng, field, rng.randint(1, 8))
                J0 = jacobson_matrix(field, blocks)
                S0 = rand_invertible(rng, field, J0.shape[0])
                A = linalg.matmul(field, linalg.matmul(field, S0, J0), linalg.inverse(field, S0))
                jf = jacobson_normal_form(field, A)
                assert sorted(jf.elementary_divisors, key=block_key) == sorted(blocks, key=block_key)
                assert linalg.det(field, jf.S) != 0
                SJ = linalg.matmul(field, jf.S, jf.J)
                assert same(A, linalg.matmul(field, SJ, linalg.inverse(field, jf.S)))
                oracle = elementary_divisors(field, A)
                assert sorted(oracle, key=block_key) == sorted(blocks, key=block_key)
                count += 1
        assert count >= 50


# -- 8 --------------------------------------------------------------------------------


def test_criterion_8_structure(emit):
    with criterion(emit, 8, f"structured matrices for {len(IRREDUCIBLE_TABLE)} irreducibles, k = 1..3"):
        assert len(IRREDUCIBLE_TABLE) >= 10
        for p in IRREDUCIBLE_TABLE:
            f, n = p.field, p.degree
            C, M = companion(p), m_matrix(p)
            assert same(linalg.matmul(f, M, C), linalg.matmul(f, C.T, M))
            assert same(M, M.T)
            assert linalg.det(f, M) != 0
            assert same(linalg.matmul(f, M, m_matrix_inverse(p)), f.eye(n))
            for k in (1, 2, 3):
                J = jacobson_block(p, k)
                kron = linalg.add(
                    f, linalg.kron(f, f.eye(k), C), linalg.kron(f, nilpotent(f, k), v_matrix(f, n))
                )
                assert same(J, kron)
                assert smith_form(s_minus(f, J)).invariant_factors == [Poly.one(f)] * (n * k - 1) + [p**k]


if __name__ == "__main__":
    failed = 0
    for name, fn in sorted(globals().items()):
        if name.startswith("test_criterion_"):
            try:
                fn(print)
            except Exception:  # the FAIL line has already been printed
                failed += 1
    sys.exit(1 if failed else 0)
