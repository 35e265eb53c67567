"""Dense univariate polynomials over a :class:`~jacreal.field.Field`.

Coefficients are stored ascending (index ``i`` holds the coefficient of
``s**i``) as raw field values, with trailing zeros stripped so the zero
polynomial has an empty coefficient tuple and degree ``-1``.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import numpy as np

from .errors import FieldMismatchError, UsageError
from .field import Field, FieldElement

VARIABLE = "s"


def _strip(coeffs: list) -> tuple:
    n = len(coeffs)
    while n and not coeffs[n - 1]:
        n -= 1
    return tuple(coeffs[:n])


class Poly:
    """Immutable polynomial in ``s`` with coefficients in ``field``."""

    __slots__ = ("field", "coeffs", "_hash")

    def __init__(self, field: Field, coeffs: Sequence = ()):
        self.field = field
        self.coeffs = _strip([field.convert(c) for c in coeffs])
        self._hash = None

    @classmethod
    def _make(cls, field: Field, coeffs: list) -> Poly:
        # coeffs are already normalised raw values
        p = cls.__new__(cls)
        p.field = field
        p.coeffs = _strip(coeffs)
        p._hash = None
        return p

    # -- constructors -----------------------------------------------
    @classmethod
    def zero(cls, field: Field) -> Poly:
        return cls._make(field, [])

    @classmethod
    def one(cls, field: Field) -> Poly:
        return cls._make(field, [field.one])

    @classmethod
    def constant(cls, field: Field, c) -> Poly:
        return cls._make(field, [field.convert(c)])

    @classmethod
    def monomial(cls, field: Field, k: int, c=1) -> Poly:
        return cls._make(field, [field.zero] * k + [field.convert(c)])

    @classmethod
    def s(cls, field: Field) -> Poly:
        return cls.monomial(field, 1)

    # -- basic properties -------------------------------------------
    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def lc(self):
        """Leading coefficient (raw value); zero for the zero polynomial."""
        return self.coeffs[-1] if self.coeffs else self.field.zero

    def coeff(self, i: int):
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else self.field.zero

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_one(self) -> bool:
        return len(self.coeffs) == 1 and self.coeffs[0] == self.field.one

    def is_constant(self) -> bool:
        return len(self.coeffs) <= 1

    def is_monic(self) -> bool:
        return bool(self.coeffs) and self.coeffs[-1] == self.field.one

    def __bool__(self):
        return bool(self.coeffs)

    def __len__(self):
        return len(self.coeffs)

    # -- coercion ----------------------------------------------------
    def _coerce(self, other):
        if isinstance(other, Poly):
            if other.field != self.field:
                raise FieldMismatchError(f"cannot combine polynomials over {self.field} and {other.field}")
            return other
        if isinstance(other, (int, Fraction, FieldElement, np.integer)):
            return Poly.constant(self.field, other)
        return NotImplemented

    # -- ring operations ---------------------------------------------
    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        add = self.field.add
        out = list(a)
        for i, c in enumerate(b):
            out[i] = add(out[i], c)
        return Poly._make(self.field, out)

    __radd__ = __add__

    def __neg__(self):
        neg = self.field.neg
        return Poly._make(self.field, [neg(c) for c in self.coeffs])

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other + (-self)

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return Poly.zero(self.field)
        if len(b) == 1:
            c = b[0]
            mul = self.field.mul
            return Poly._make(self.field, [mul(x, c) for x in a])
        out = [0] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if not x:
                continue
            for j, y in enumerate(b):
                out[i + j] += x * y
        reduce = self.field.reduce
        return Poly._make(self.field, [reduce(c) for c in out])

    __rmul__ = __mul__

    def __pow__(self, e: int) -> Poly:
        if e < 0:
            raise UsageError("negative polynomial power")
        result = Poly.one(self.field)
        base = self
        while e:
            if e & 1:
                result = result * base
            e >>= 1
            if e:
                base = base * base
        return result

    def __divmod__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return poly_divmod(self, other)

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def exact_div(self, other: Poly) -> Poly:
        q, r = poly_divmod(self, other)
        if r:
            raise UsageError(f"{other} does not divide {self}")
        return q

    def scale(self, c) -> Poly:
        return self * Poly.constant(self.field, c)

    def monic(self) -> Poly:
        if not self.coeffs or self.coeffs[-1] == self.field.one:
            return self
        return self.scale(self.field.inv(self.coeffs[-1]))

    def derivative(self) -> Poly:
        f = self.field
        return Poly._make(f, [f.mul(f.reduce(i), c) for i, c in enumerate(self.coeffs)][1:])

    def __call__(self, x):
        """Evaluate at a raw field value (Horner)."""
        f = self.field
        x = f.convert(x)
        acc = f.zero
        for c in reversed(self.coeffs):
            acc = f.add(f.mul(acc, x), c)
        return acc

    # -- comparison ----------------------------------------------------
    def __eq__(self, other):
        if isinstance(other, Poly):
            return self.field == other.field and self.coeffs == other.coeffs
        if isinstance(other, (int, Fraction, FieldElement)):
            return self == self._coerce(other)
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.field, self.coeffs))
        return self._hash

    def sort_key(self):
        """Order by degree, then coefficients from the leading one down."""
        return (self.degree, tuple(reversed(self.coeffs)))

    # -- display -------------------------------------------------------
    def __str__(self):
        return format_poly(self)

    def __repr__(self):
        return f"Poly({self.field!r}, {format_poly(self)!r})"


def format_poly(p: Poly, var: str = VARIABLE) -> str:
    """Human-readable form, highest power first, e.g. ``s^2+s+2``."""
    if p.is_zero():
        return "0"
    parts = []
    for i in range(p.degree, -1, -1):
        c = p.coeffs[i]
        if not c:
            continue
        neg = not p.field.is_prime_field and c < 0
        mag = -c if neg else c
        if i == 0:
            body = str(mag)
        else:
            mono = var if i == 1 else f"{var}^{i}"
            if mag == 1:
                body = mono
            elif isinstance(mag, Fraction) and mag.denominator != 1:
                body = f"({mag})*{mono}"
            else:
                body = f"{mag}*{mono}"
        if not parts:
            parts.append(("-" if neg else "") + body)
        else:
            parts.append(("-" if neg else "+") + body)
    return "".join(parts)


def poly_divmod(a: Poly, b: Poly) -> tuple[Poly, Poly]:
    """Euclidean division: ``a = q*b + r`` with ``deg r < deg b``."""
    if a.field != b.field:
        raise FieldMismatchError("polynomials over different fields")
    if b.is_zero():
        raise ZeroDivisionError("polynomial division by zero")
    f = a.field
    db = b.degree
    if a.degree < db:
        return Poly.zero(f), a
    inv_lc = f.inv(b.lc)
    r = list(a.coeffs)
    q = [f.zero] * (a.degree - db + 1)
    bc = b.coeffs
    if f.is_prime_field:
        m = f.modulus
        for k in range(len(q) - 1, -1, -1):
            c = r[k + db] * inv_lc % m
            q[k] = c
            if c:
                for j in range(db):
                    r[k + j] = (r[k + j] - c * bc[j]) % m
            r[k + db] = 0
    else:
        for k in range(len(q) - 1, -1, -1):
            c = r[k + db] * inv_lc
            q[k] = c
            if c:
                for j in range(db):
                    r[k + j] -= c * bc[j]
            r[k + db] = f.zero
    return Poly._make(f, q), Poly._make(f, r[:db])


def poly_gcd(a: Poly, b: Poly) -> Poly:
    """Monic gcd; ``gcd(0, 0) = 0``."""
    while b:
        a, b = b, poly_divmod(a, b)[1]
    return a.monic()


def poly_ext_gcd(a: Poly, b: Poly) -> tuple[Poly, Poly, Poly]:
    """Return ``(g, u, v)`` with ``g`` monic and ``g = u*a + v*b``."""
    if a.is_zero() and b.is_zero():
        raise UsageError("gcd of two zero polynomials is undefined")
    f = a.field
    r0, r1 = a, b
    u0, u1 = Poly.one(f), Poly.zero(f)
    v0, v1 = Poly.zero(f), Poly.one(f)
    while r1:
        q, r = poly_divmod(r0, r1)
        r0, r1 = r1, r
        u0, u1 = u1, u0 - q * u1
        v0, v1 = v1, v0 - q * v1
    c = f.inv(r0.lc)
    return r0.scale(c), u0.scale(c), v0.scale(c)


def poly_lcm(a: Poly, b: Poly) -> Poly:
    if a.is_zero() or b.is_zero():
        return Poly.zero(a.field)
    return (a * b.exact_div(poly_gcd(a, b))).monic()


def powmod(base: Poly, e: int, mod: Poly) -> Poly:
    result = Poly.one(base.field)
    base = base % mod
    while e:
        if e & 1:
            result = result * base % mod
        e >>= 1
        if e:
            base = base * base % mod
    return result


def valuation(a: Poly, p: Poly) -> int:
    """Largest ``e`` with ``p**e`` dividing nonzero ``a``."""
    if a.is_zero():
        raise UsageError("valuation of the zero polynomial")
    if p.degree < 1:
        raise UsageError("valuation base must be nonconstant")
    e = 0
    while True:
        q, r = poly_divmod(a, p)
        if r:
            return e
        a, e = q, e + 1


def vector_gcd(v: Sequence[Poly]) -> Poly:
    """Monic gcd of all entries (zero for the zero vector)."""
    if not v:
        raise UsageError("empty polynomial vector")
    g = Poly.zero(v[0].field)
    for x in v:
        g = poly_gcd(g, x)
        if g.is_one():
            break
    return g


def vector_degree(v: Sequence[Poly]) -> int:
    """Max entry degree, ``-1`` for the zero vector."""
    return max((x.degree for x in v), default=-1)


@dataclass(frozen=True)
class PadicExpansion:
    """Digits of a polynomial vector in powers of ``base``.

    ``digits[i]`` is the vector multiplying ``base**i``.
    """

    base: Poly
    size: int
    digits: tuple

    def digit(self, i: int) -> list[Poly]:
        if i < len(self.digits):
            return list(self.digits[i])
        return [Poly.zero(self.base.field)] * self.size

    def reassemble(self) -> list[Poly]:
        out = [Poly.zero(self.base.field)] * self.size
        power = Poly.one(self.base.field)
        for d in self.digits:
            out = [x + y * power for x, y in zip(out, d)]
            power = power * self.base
        return out


def padic_expand(v: Sequence[Poly], base: Poly) -> PadicExpansion:
    """Expand the vector ``v`` in powers of the monic polynomial ``base``."""
    if base.degree < 1:
        raise UsageError("p-adic base must have degree >= 1")
    if not base.is_monic():
        raise UsageError("p-adic base must be monic")
    columns = []
    for x in v:
        if x.field != base.field:
            raise FieldMismatchError("vector and base over different fields")
        ds = []
        while x:
            x, r = poly_divmod(x, base)
            ds.append(r)
        columns.append(ds)
    ndig = max((len(c) for c in columns), default=0)
    zero = Poly.zero(base.field)
    digits = tuple(
        tuple(c[i] if i < len(c) else zero for c in columns) for i in range(ndig)
    )
    return PadicExpansion(base=base, size=len(v), digits=digits)


def coeff_matrix(digit: Sequence[Poly], n: int, field: Field | None = None) -> np.ndarray:
    """Row ``j`` holds the ascending coefficients of ``digit[j]`` padded to ``n``."""
    if field is None:
        if not digit:
            raise UsageError("field required for an empty vector")
        field = digit[0].field
    out = field.zeros(len(digit), n)
    for j, x in enumerate(digit):
        if x.degree >= n:
            raise UsageError(f"entry {j} has degree {x.degree} >= {n}")
        for i, c in enumerate(x.coeffs):
            out[j, i] = c
    return out


def basis_vector(field: Field, n: int) -> list[Poly]:
    """``(1, s, ..., s^(n-1))`` as a list of polynomials."""
    return [Poly.monomial(field, i) for i in range(n)]


def apply_coeff_matrix(mat: np.ndarray, field: Field) -> list[Poly]:
    """Inverse of :func:`coeff_matrix`: ``mat @ (1, s, ..., s^(n-1))^T``."""
    return [Poly(field, list(row)) for row in mat]
