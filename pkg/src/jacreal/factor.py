"""Factorization of univariate polynomials into monic irreducibles.

Over GF(p) the classical pipeline is used: squarefree decomposition,
distinct-degree splitting and Cantor-Zassenhaus equal-degree splitting
driven by a seeded :class:`random.Random`.

Over Q each squarefree part is certified irreducible when it stays
squarefree and irreducible modulo some prime ``q <= 1000``.  Parts of
degree at most 8 that are reducible modulo every such prime are split by
Hensel lifting and brute-force recombination of the modular factors
(Zassenhaus).  Anything else raises :class:`FactorizationError`.
"""
from __future__ import annotations

import contextlib
import contextvars
import itertools
import math
import random
from dataclasses import dataclass
from fractions import Fraction

from .errors import FactorizationError, UsageError
from .field import GF, QQ, Field, is_prime
from .poly import Poly, poly_ext_gcd, poly_gcd, powmod

Q_PRIME_LIMIT = 1000
Q_RECOMBINATION_MAX_DEGREE = 8

_default_seed = contextvars.ContextVar("jacreal_factor_seed", default=0)


@contextlib.contextmanager
def factor_seed(seed: int):
    """Fix the seed used by the equal-degree splitter inside the block."""
    token = _default_seed.set(seed)
    try:
        yield
    finally:
        _default_seed.reset(token)


@dataclass(frozen=True)
class Factorization:
    unit: object
    factors: tuple  # of (Poly, int)
    field: Field

    def expand(self) -> Poly:
        out = Poly.constant(self.field, self.unit)
        for f, e in self.factors:
            out = out * f**e
        return out

    def primes(self) -> list[Poly]:
        return [f for f, _ in self.factors]

    def multiplicity(self, prime: Poly) -> int:
        for f, e in self.factors:
            if f == prime:
                return e
        return 0


def factor(a: Poly, seed: int | None = None) -> Factorization:
    """Factor ``a`` as ``unit * prod(f_i**e_i)`` with sorted monic irreducible ``f_i``."""
    if a.is_zero():
        raise UsageError("cannot factor the zero polynomial")
    field = a.field
    unit = a.lc
    f = a.monic()
    if f.degree == 0:
        return Factorization(unit=unit, factors=(), field=field)
    rng = random.Random(_default_seed.get() if seed is None else seed)
    out = []
    if field.is_prime_field:
        for part, mult in squarefree_decomposition(f):
            for g, d in distinct_degree_factorization(part):
                for h in equal_degree_factorization(g, d, rng):
                    out.append((h, mult))
    else:
        for part, mult in squarefree_decomposition(f):
            for h in _factor_squarefree_rational(part, rng):
                out.append((h, mult))
    out.sort(key=lambda fe: fe[0].sort_key())
    return Factorization(unit=unit, factors=tuple(out), field=field)


def is_irreducible(f: Poly) -> bool:
    """Irreducibility test (Rabin's test over GF(p), factorization over Q)."""
    if f.degree < 1:
        return False
    if f.degree == 1:
        return True
    if not f.field.is_prime_field:
        fac = factor(f)
        return len(fac.factors) == 1 and fac.factors[0][1] == 1
    f = f.monic()
    n = f.degree
    p = f.field.modulus
    x = Poly.s(f.field)
    for r in _prime_divisors(n):
        h = _frobenius_power(x, p, n // r, f)
        if not poly_gcd(h - x, f).is_one():
            return False
    return _frobenius_power(x, p, n, f) == x


def _prime_divisors(n: int) -> list[int]:
    return [r for r in range(2, n + 1) if n % r == 0 and is_prime(r)]


def _frobenius_power(h: Poly, p: int, k: int, mod: Poly) -> Poly:
    for _ in range(k):
        h = powmod(h, p, mod)
    return h


# -- squarefree decomposition ---------------------------------------------


def squarefree_decomposition(f: Poly) -> list[tuple[Poly, int]]:
    """Pairs ``(g_i, i)`` with squarefree, pairwise coprime monic ``g_i``."""
    f = f.monic()
    if f.degree < 1:
        return []
    if f.field.is_prime_field:
        out = _sqf_prime(f)
    else:
        out = _sqf_char0(f)
    return sorted(out, key=lambda ge: ge[1])


def _sqf_char0(f: Poly) -> list[tuple[Poly, int]]:
    # Yun's algorithm
    out = []
    df = f.derivative()
    b = poly_gcd(f, df)
    c = f.exact_div(b)
    d = df.exact_div(b) - c.derivative()
    i = 1
    while c.degree > 0:
        a = poly_gcd(c, d)
        if a.degree > 0:
            out.append((a, i))
        c = c.exact_div(a)
        d = d.exact_div(a) - c.derivative()
        i += 1
    return out


def _pth_root(f: Poly) -> Poly:
    p = f.field.modulus
    # in GF(p) every coefficient is its own p-th root
    return Poly._make(f.field, list(f.coeffs[::p]))


def _sqf_prime(f: Poly) -> list[tuple[Poly, int]]:
    p = f.field.modulus
    df = f.derivative()
    if df.is_zero():
        return [(g, m * p) for g, m in _sqf_prime(_pth_root(f))]
    out = []
    c = poly_gcd(f, df)
    w = f.exact_div(c)
    i = 1
    while not w.is_one():
        y = poly_gcd(w, c)
        z = w.exact_div(y)
        if z.degree > 0:
            out.append((z, i))
        i += 1
        w = y
        c = c.exact_div(y)
    if c.degree > 0:
        out.extend((g, m * p) for g, m in _sqf_prime(_pth_root(c)))
    return out


# -- GF(p) splitting --------------------------------------------------------


def distinct_degree_factorization(f: Poly) -> list[tuple[Poly, int]]:
    """Split monic squarefree ``f`` into products of equal-degree irreducibles."""
    p = f.field.modulus
    x = Poly.s(f.field)
    out = []
    h = x % f
    i = 1
    while f.degree >= 2 * i:
        h = powmod(h, p, f)
        g = poly_gcd(h - x, f)
        if not g.is_one():
            out.append((g, i))
            f = f.exact_div(g)
            h = h % f
        i += 1
    if f.degree > 0:
        out.append((f, f.degree))
    return out


def equal_degree_factorization(f: Poly, d: int, rng: random.Random) -> list[Poly]:
    """Cantor-Zassenhaus: split ``f``, a product of degree-``d`` irreducibles."""
    if f.degree == d:
        return [f]
    field = f.field
    p = field.modulus
    n = f.degree
    while True:
        a = Poly._make(field, [rng.randrange(p) for _ in range(n)])
        if a.degree < 1:
            continue
        g = poly_gcd(a, f)
        if g.degree < 1:
            if p == 2:
                # trace map to GF(2)
                t, b = a, a
                for _ in range(d - 1):
                    t = t * t % f
                    b = b + t
            else:
                b = powmod(a, (p**d - 1) // 2, f) - Poly.one(field)
            g = poly_gcd(b, f)
        if 0 < g.degree < n:
            return equal_degree_factorization(g, d, rng) + equal_degree_factorization(
                f.exact_div(g), d, rng
            )


# -- rational factorization -----------------------------------------------


def _to_primitive_int(f: Poly) -> list[int]:
    den = 1
    for c in f.coeffs:
        den = den * c.denominator // math.gcd(den, c.denominator)
    ints = [int(c * den) for c in f.coeffs]
    g = 0
    for c in ints:
        g = math.gcd(g, c)
    ints = [c // g for c in ints]
    if ints[-1] < 0:
        ints = [-c for c in ints]
    return ints


def _int_poly_to_monic_q(ints: list[int]) -> Poly:
    return Poly(QQ, [Fraction(c) for c in ints]).monic()


def _mod_poly(ints: list[int], q: int) -> Poly:
    return Poly(GF(q), ints)


def _factor_squarefree_rational(f: Poly, rng: random.Random) -> list[Poly]:
    if f.degree == 1:
        return [f]
    F = _to_primitive_int(f)
    n = len(F) - 1
    best = None
    for q in range(2, Q_PRIME_LIMIT + 1):
        if not is_prime(q) or F[-1] % q == 0:
            continue
        fq = _mod_poly(F, q)
        if not poly_gcd(fq, fq.derivative()).is_one():
            continue
        mods = []
        for g, d in distinct_degree_factorization(fq.monic()):
            mods.extend(equal_degree_factorization(g, d, rng))
        if len(mods) == 1:
            return [f]
        if best is None or len(mods) < len(best[1]):
            best = (q, mods)
    if best is None:
        raise FactorizationError(
            f"factorization out of supported range: {f} is not squarefree modulo any prime <= {Q_PRIME_LIMIT}"
        )
    if n > Q_RECOMBINATION_MAX_DEGREE:
        raise FactorizationError(
            f"factorization out of supported range: cannot certify irreducibility of "
            f"degree-{n} part {f} and recombination is limited to degree {Q_RECOMBINATION_MAX_DEGREE}"
        )
    q, mods = best
    factors = _zassenhaus(F, q, mods)
    out = [_int_poly_to_monic_q(g) for g in factors]
    check = Poly.one(QQ)
    for g in out:
        check = check * g
    if check != f:
        raise FactorizationError(f"recombination failed to reproduce {f}")
    return out


def _mignotte_bound(F: list[int]) -> int:
    n = len(F) - 1
    norm2 = math.isqrt(sum(c * c for c in F)) + 1
    return (math.isqrt(n + 1) + 1) * 2**n * norm2 * abs(F[-1])


def _sym(c: int, m: int) -> int:
    c %= m
    return c - m if c > m // 2 else c


def _zmul(a: list[int], b: list[int], m: int) -> list[int]:
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return [c % m for c in out]


def _zsub(a: list[int], b: list[int]) -> list[int]:
    n = max(len(a), len(b))
    a = a + [0] * (n - len(a))
    b = b + [0] * (n - len(b))
    return [x - y for x, y in zip(a, b)]


def _hensel_lift(F: list[int], g: Poly, h: Poly, q: int, a: int) -> tuple[list[int], list[int]]:
    """Lift ``F = g*h (mod q)``, ``g`` monic, to ``F = G*H (mod q**a)``."""
    one, _, t = poly_ext_gcd(g, h)
    if not one.is_one():
        raise FactorizationError("modular factors are not coprime")
    G = [int(c) for c in g.coeffs]
    H = [int(c) for c in h.coeffs]
    qj = q
    for _ in range(1, a):
        m = qj * q
        err = _zsub(F, _zmul(G, H, m))
        e = Poly(GF(q), [(c % m) // qj for c in err])
        dg = (t * e) % g
        gp = Poly(GF(q), G)
        hp = Poly(GF(q), H)
        dh = (e - hp * dg).exact_div(gp)
        G = [(x + qj * int(y)) % m for x, y in itertools.zip_longest(G, dg.coeffs, fillvalue=0)]
        H = [(x + qj * int(y)) % m for x, y in itertools.zip_longest(H, dh.coeffs, fillvalue=0)]
        qj = m
        g = gp
    return G, H


def _zassenhaus(F: list[int], q: int, mods: list[Poly]) -> list[list[int]]:
    bound = 2 * _mignotte_bound(F) + 1
    a = 1
    while q**a <= bound:
        a += 1
    m = q**a
    lcF = F[-1]
    # lift one factor at a time off the remaining product
    lifted = []
    rest_int = F
    remaining = list(mods)
    gfq = GF(q)
    while len(remaining) > 1:
        g = remaining[0]
        h = Poly.constant(gfq, rest_int[-1])
        for r in remaining[1:]:
            h = h * r
        G, H = _hensel_lift(rest_int, g, h, q, a)
        lifted.append(G)
        rest_int = H
        remaining = remaining[1:]
    inv = pow(rest_int[-1], -1, m)
    lifted.append([c * inv % m for c in rest_int])

    factors = []
    current = F
    idx = list(range(len(lifted)))
    size = 1
    while 2 * size <= len(idx):
        for subset in itertools.combinations(idx, size):
            cand = [current[-1] % m]
            for i in subset:
                cand = _zmul(cand, lifted[i], m)
            cand = [_sym(c, m) for c in cand]
            while cand and cand[-1] == 0:
                cand.pop()
            cont = 0
            for c in cand:
                cont = math.gcd(cont, c)
            cand = [c // cont for c in cand]
            quot = _int_exact_div(current, cand)
            if quot is not None:
                factors.append(cand)
                current = quot
                idx = [i for i in idx if i not in subset]
                break
        else:
            size += 1
    factors.append(current)
    return factors


def _int_exact_div(a: list[int], b: list[int]) -> list[int] | None:
    """Return ``a / b`` over Z if ``b`` divides ``a`` exactly, else None."""
    if len(b) > len(a):
        return None
    r = list(a)
    db = len(b) - 1
    q = [0] * (len(a) - db)
    for k in range(len(q) - 1, -1, -1):
        c, rem = divmod(r[k + db], b[-1])
        if rem:
            return None
        q[k] = c
        if c:
            for j in range(db + 1):
                r[k + j] -= c * b[j]
    if any(r):
        return None
    if q[-1] < 0:
        q = [-c for c in q]
    return q
