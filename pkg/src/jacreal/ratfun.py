"""Rational functions, rational matrices and the prime-wise partial fraction split."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterable, Sequence

import numpy as np

from .errors import FieldMismatchError, UsageError
from .factor import factor
from .field import Field, FieldElement
from .poly import Poly, poly_divmod, poly_ext_gcd, poly_gcd, poly_lcm, valuation


class RatFun:
    """Reduced fraction ``num/den`` with monic ``den``; zero is ``0/1``."""

    __slots__ = ("num", "den")

    def __init__(self, num: Poly, den: Poly | None = None):
        if den is None:
            den = Poly.one(num.field)
        if num.field != den.field:
            raise FieldMismatchError("numerator and denominator over different fields")
        if den.is_zero():
            raise ZeroDivisionError("rational function with zero denominator")
        if num.is_zero():
            num, den = num, Poly.one(num.field)
        else:
            g = poly_gcd(num, den)
            if not g.is_one():
                num, den = num.exact_div(g), den.exact_div(g)
            c = den.lc
            if c != num.field.one:
                inv = num.field.inv(c)
                num, den = num.scale(inv), den.scale(inv)
        self.num = num
        self.den = den

    @classmethod
    def _trusted(cls, num: Poly, den: Poly) -> RatFun:
        r = cls.__new__(cls)
        r.num = num
        r.den = den
        return r

    @classmethod
    def zero(cls, field: Field) -> RatFun:
        return cls._trusted(Poly.zero(field), Poly.one(field))

    @classmethod
    def one(cls, field: Field) -> RatFun:
        return cls._trusted(Poly.one(field), Poly.one(field))

    @property
    def field(self) -> Field:
        return self.num.field

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def is_polynomial(self) -> bool:
        return self.den.degree == 0

    def is_strictly_proper(self) -> bool:
        return self.num.degree < self.den.degree

    def __bool__(self):
        return not self.num.is_zero()

    # -- arithmetic --------------------------------------------------
    def _coerce(self, other):
        if isinstance(other, RatFun):
            if other.field != self.field:
                raise FieldMismatchError("rational functions over different fields")
            return other
        if isinstance(other, Poly):
            return RatFun._trusted(other, Poly.one(self.field)) if other.field == self.field else _mismatch()
        if isinstance(other, (int, Fraction, FieldElement, np.integer)):
            return RatFun._trusted(Poly.constant(self.field, other), Poly.one(self.field))
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if other.is_zero():
            return self
        if self.is_zero():
            return other
        if self.den == other.den:
            return RatFun(self.num + other.num, self.den)
        return RatFun(self.num * other.den + other.num * self.den, self.den * other.den)

    __radd__ = __add__

    def __neg__(self):
        return RatFun._trusted(-self.num, self.den)

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
        if self.is_zero() or other.is_zero():
            return RatFun.zero(self.field)
        # cross-cancel first to keep operands small
        g1 = poly_gcd(self.num, other.den)
        g2 = poly_gcd(other.num, self.den)
        num = self.num.exact_div(g1) * other.num.exact_div(g2)
        den = self.den.exact_div(g2) * other.den.exact_div(g1)
        return RatFun(num, den)

    __rmul__ = __mul__

    def inverse(self) -> RatFun:
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero rational function")
        return RatFun(self.den, self.num)

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self * other.inverse()

    def __rtruediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other * self.inverse()

    def __pow__(self, e: int) -> RatFun:
        if e < 0:
            return self.inverse() ** (-e)
        return RatFun._trusted(self.num**e, self.den**e)

    def __eq__(self, other):
        other = self._coerce(other) if not isinstance(other, RatFun) else other
        if other is NotImplemented:
            return NotImplemented
        return self.num == other.num and self.den == other.den

    def __hash__(self):
        return hash((self.num, self.den))

    def __str__(self):
        if self.den.is_one():
            return str(self.num)
        n = str(self.num)
        if self.num.degree > 0 and len([c for c in self.num.coeffs if c]) > 1:
            n = f"({n})"
        d = str(self.den)
        if len([c for c in self.den.coeffs if c]) > 1:
            d = f"({d})"
        return f"{n}/{d}"

    def __repr__(self):
        return f"RatFun({self})"


def _mismatch():
    raise FieldMismatchError("rational function and polynomial over different fields")


def pi_minus(f: RatFun) -> RatFun:
    """Strictly proper part of ``f`` (drop the polynomial part of the division)."""
    if f.is_strictly_proper():
        return f
    _, r = poly_divmod(f.num, f.den)
    return RatFun._trusted(r, f.den) if r else RatFun.zero(f.field)


def polynomial_part(f: RatFun) -> Poly:
    return poly_divmod(f.num, f.den)[0]


class RatMatrix:
    """Dense ``rows x cols`` matrix of :class:`RatFun`."""

    __slots__ = ("field", "rows", "cols", "entries")

    def __init__(self, field: Field, entries: Sequence[Sequence], cols: int | None = None):
        self.field = field
        data = [[_as_ratfun(field, x) for x in row] for row in entries]
        self.rows = len(data)
        if cols is None:
            cols = len(data[0]) if data else 0
        if any(len(r) != cols for r in data):
            raise UsageError("ragged rational matrix")
        self.cols = cols
        self.entries = data

    @classmethod
    def zeros(cls, field: Field, rows: int, cols: int) -> RatMatrix:
        z = RatFun.zero(field)
        return cls(field, [[z] * cols for _ in range(rows)], cols=cols)

    @classmethod
    def identity(cls, field: Field, n: int) -> RatMatrix:
        out = cls.zeros(field, n, n)
        for i in range(n):
            out.entries[i][i] = RatFun.one(field)
        return out

    @classmethod
    def from_scalar(cls, field: Field, mat: np.ndarray) -> RatMatrix:
        return cls(field, [[Poly.constant(field, x) for x in row] for row in mat], cols=mat.shape[1])

    @classmethod
    def from_polys(cls, field: Field, rows: Sequence[Sequence[Poly]], cols: int | None = None) -> RatMatrix:
        return cls(field, rows, cols=cols)

    @property
    def shape(self) -> tuple[int, int]:
        return self.rows, self.cols

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i][j]

    def map(self, fn: Callable[[RatFun], RatFun]) -> RatMatrix:
        return RatMatrix(self.field, [[fn(x) for x in row] for row in self.entries], cols=self.cols)

    def _check_same(self, other: RatMatrix):
        if not isinstance(other, RatMatrix):
            raise UsageError("expected a RatMatrix")
        if other.field != self.field:
            raise FieldMismatchError("matrices over different fields")

    def __add__(self, other: RatMatrix) -> RatMatrix:
        self._check_same(other)
        if self.shape != other.shape:
            raise UsageError(f"shape mismatch {self.shape} + {other.shape}")
        return RatMatrix(
            self.field,
            [[a + b for a, b in zip(r1, r2)] for r1, r2 in zip(self.entries, other.entries)],
            cols=self.cols,
        )

    def __sub__(self, other: RatMatrix) -> RatMatrix:
        return self + other.scale(-1)

    def scale(self, c) -> RatMatrix:
        c = _as_ratfun(self.field, c)
        return self.map(lambda x: x * c)

    def __matmul__(self, other: RatMatrix) -> RatMatrix:
        self._check_same(other)
        if self.cols != other.rows:
            raise UsageError(f"shape mismatch {self.shape} @ {other.shape}")
        out = []
        for i in range(self.rows):
            row = []
            for j in range(other.cols):
                acc = RatFun.zero(self.field)
                for k in range(self.cols):
                    a = self.entries[i][k]
                    if a:
                        b = other.entries[k][j]
                        if b:
                            acc = acc + a * b
                row.append(acc)
            out.append(row)
        return RatMatrix(self.field, out, cols=other.cols)

    def transpose(self) -> RatMatrix:
        return RatMatrix(
            self.field, [[self.entries[i][j] for i in range(self.rows)] for j in range(self.cols)], cols=self.rows
        )

    @property
    def T(self) -> RatMatrix:
        return self.transpose()

    def is_zero(self) -> bool:
        return all(x.is_zero() for row in self.entries for x in row)

    def is_strictly_proper(self) -> bool:
        return all(x.is_strictly_proper() for row in self.entries for x in row)

    def lcd(self) -> Poly:
        """Monic least common denominator of all entries."""
        d = Poly.one(self.field)
        for row in self.entries:
            for x in row:
                if not x.den.is_one():
                    d = poly_lcm(d, x.den)
        return d

    def __eq__(self, other):
        if not isinstance(other, RatMatrix):
            return NotImplemented
        return self.field == other.field and self.shape == other.shape and self.entries == other.entries

    def __repr__(self):
        body = "; ".join(", ".join(str(x) for x in row) for row in self.entries)
        return f"RatMatrix({self.field!r}, {self.rows}x{self.cols}: [{body}])"


def _as_ratfun(field: Field, x) -> RatFun:
    if isinstance(x, RatFun):
        if x.field != field:
            raise FieldMismatchError("entry over a different field")
        return x
    if isinstance(x, Poly):
        if x.field != field:
            raise FieldMismatchError("entry over a different field")
        return RatFun._trusted(x, Poly.one(field))
    return RatFun._trusted(Poly.constant(field, x), Poly.one(field))


def kron(a: RatMatrix, b: RatMatrix) -> RatMatrix:
    """Kronecker product ``(a_ij * b)``."""
    a._check_same(b)
    rows = []
    for i in range(a.rows):
        for bi in range(b.rows):
            rows.append([a.entries[i][j] * b.entries[bi][bj] for j in range(a.cols) for bj in range(b.cols)])
    return RatMatrix(a.field, rows, cols=a.cols * b.cols)


def pi_minus_matrix(w: RatMatrix) -> RatMatrix:
    return w.map(pi_minus)


def outer(h: Sequence[Poly], coeff: RatFun, g: Sequence[Poly]) -> RatMatrix:
    """The rank-one matrix ``h * coeff * g^T``."""
    field = coeff.field
    return RatMatrix(field, [[coeff * (x * y) for y in g] for x in h], cols=len(g))


@dataclass(frozen=True)
class PrimeComponent:
    """Strictly proper part of a transfer matrix whose denominators are powers of ``prime``."""

    prime: Poly
    component: RatMatrix

    @property
    def exponent(self) -> int:
        """Largest power of the prime occurring in a denominator."""
        return max(
            (valuation(x.den, self.prime) for row in self.component.entries for x in row if x),
            default=0,
        )


def partial_fractions(T: RatMatrix, seed: int | None = None) -> list[PrimeComponent]:
    """Split strictly proper ``T`` into components, one per prime of its denominators."""
    if not T.is_strictly_proper():
        raise UsageError("partial_fractions requires a strictly proper matrix")
    d = T.lcd()
    if d.degree < 1:
        return []
    primes = factor(d, seed=seed).primes()
    parts = {p: RatMatrix.zeros(T.field, T.rows, T.cols) for p in primes}
    for i, row in enumerate(T.entries):
        for j, x in enumerate(row):
            if x.is_zero():
                continue
            for p, frac in _split_entry(x, primes):
                parts[p].entries[i][j] = frac
    return [PrimeComponent(prime=p, component=parts[p]) for p in primes]


def _split_entry(x: RatFun, primes: Iterable[Poly]) -> list[tuple[Poly, RatFun]]:
    # CRT split: num/den = sum r_i / q_i, q_i = p_i^{e_i}, r_i = num * (den/q_i)^{-1} mod q_i
    powers = []
    for p in primes:
        e = valuation(x.den, p) if x.den.degree >= p.degree else 0
        if e:
            powers.append((p, p**e))
    if len(powers) == 1:
        return [(powers[0][0], x)]
    out = []
    for p, q in powers:
        cof = x.den.exact_div(q)
        g, u, _ = poly_ext_gcd(cof, q)
        if not g.is_one():
            raise UsageError("denominator cofactors are not coprime")
        r = (x.num * u) % q
        if r:
            out.append((p, RatFun(r, q)))
    return out
