"""Exact scalar fields: prime fields GF(p) and the rationals.

A :class:`Field` works on *raw* values so that the polynomial and matrix
code can stay fast: residues are plain ``int`` in ``[0, p)`` and rationals
are :class:`fractions.Fraction`.  :class:`FieldElement` wraps a raw value
together with its field for user-facing scalar arithmetic.
"""
from __future__ import annotations

import enum
from fractions import Fraction
from functools import lru_cache

import numpy as np

from .errors import FieldMismatchError, UsageError

MAX_MODULUS = 2**31


class FieldKind(enum.Enum):
    PRIME_FIELD = "prime_field"
    RATIONALS = "rationals"


def is_prime(n: int) -> bool:
    """Deterministic primality test by trial division (fine below 2**31)."""
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0 or n % 3 == 0:
        return False
    i = 5
    while i * i <= n:
        if n % i == 0 or n % (i + 2) == 0:
            return False
        i += 6
    return True


def int_inverse_mod(a: int, m: int) -> int:
    """Inverse of ``a`` modulo ``m`` by the extended Euclidean algorithm."""
    r0, r1 = a % m, m
    s0, s1 = 1, 0
    while r1:
        q = r0 // r1
        r0, r1 = r1, r0 - q * r1
        s0, s1 = s1, s0 - q * s1
    if r0 != 1:
        raise ZeroDivisionError(f"{a} is not invertible modulo {m}")
    return s0 % m


class Field:
    """Descriptor of a coefficient field.

    Use :func:`GF` and :data:`QQ` rather than calling the constructor.
    Fields compare equal by kind and modulus.
    """

    __slots__ = ("kind", "modulus")

    def __init__(self, kind: FieldKind, modulus: int | None = None):
        if kind is FieldKind.PRIME_FIELD:
            if not isinstance(modulus, int) or isinstance(modulus, bool):
                raise UsageError("prime field needs an integer modulus")
            if modulus >= MAX_MODULUS:
                raise UsageError(f"modulus {modulus} exceeds the supported range 2^31")
            if not is_prime(modulus):
                raise UsageError(f"modulus {modulus} is not prime")
        elif modulus is not None:
            raise UsageError("the rationals take no modulus")
        self.kind = kind
        self.modulus = modulus

    # -- identity -----------------------------------------------------
    @property
    def is_prime_field(self) -> bool:
        return self.kind is FieldKind.PRIME_FIELD

    @property
    def characteristic(self) -> int:
        return self.modulus if self.is_prime_field else 0

    def __eq__(self, other):
        return (
            isinstance(other, Field)
            and self.kind is other.kind
            and self.modulus == other.modulus
        )

    def __hash__(self):
        return hash((self.kind, self.modulus))

    def __repr__(self):
        return f"GF({self.modulus})" if self.is_prime_field else "QQ"

    __str__ = __repr__

    # -- raw value arithmetic -----------------------------------------
    @property
    def zero(self):
        return 0 if self.is_prime_field else Fraction(0)

    @property
    def one(self):
        return 1 if self.is_prime_field else Fraction(1)

    def convert(self, x):
        """Coerce an int, Fraction, string or FieldElement to a raw value."""
        if isinstance(x, FieldElement):
            if x.field != self:
                raise FieldMismatchError(f"element of {x.field} used over {self}")
            return x.value
        if self.is_prime_field:
            if isinstance(x, (Fraction, str)):
                x = Fraction(x)
                return (x.numerator * int_inverse_mod(x.denominator, self.modulus)) % self.modulus
            if isinstance(x, (int, np.integer)):
                return int(x) % self.modulus
            raise UsageError(f"cannot interpret {x!r} as an element of {self}")
        if isinstance(x, (int, np.integer, Fraction, str)):
            return Fraction(x) if not isinstance(x, np.integer) else Fraction(int(x))
        raise UsageError(f"cannot interpret {x!r} as a rational number")

    def add(self, a, b):
        if self.is_prime_field:
            return (a + b) % self.modulus
        return a + b

    def sub(self, a, b):
        if self.is_prime_field:
            return (a - b) % self.modulus
        return a - b

    def neg(self, a):
        if self.is_prime_field:
            return -a % self.modulus
        return -a

    def mul(self, a, b):
        if self.is_prime_field:
            return a * b % self.modulus
        return a * b

    def inv(self, a):
        if not a:
            raise ZeroDivisionError(f"division by zero in {self}")
        if self.is_prime_field:
            return int_inverse_mod(a, self.modulus)
        return 1 / a

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def reduce(self, x):
        """Normalise an unreduced integer/Fraction result into the field."""
        if self.is_prime_field:
            return x % self.modulus
        return Fraction(x)

    def elements(self):
        """Iterate over all elements of a prime field."""
        if not self.is_prime_field:
            raise UsageError("the rationals are not enumerable")
        return range(self.modulus)

    def sort_key(self, a):
        return a

    def format(self, a) -> str:
        return str(a)

    # -- numpy helpers --------------------------------------------------
    def array(self, rows) -> np.ndarray:
        """Build a 2-D object array of raw values from nested sequences."""
        data = [[self.convert(x) for x in row] for row in rows]
        ncols = len(data[0]) if data else 0
        out = np.empty((len(data), ncols), dtype=object)
        for i, row in enumerate(data):
            if len(row) != ncols:
                raise UsageError("ragged matrix rows")
            for j, x in enumerate(row):
                out[i, j] = x
        return out

    def zeros(self, rows: int, cols: int) -> np.ndarray:
        out = np.empty((rows, cols), dtype=object)
        out.fill(self.zero)
        return out

    def eye(self, n: int) -> np.ndarray:
        out = self.zeros(n, n)
        for i in range(n):
            out[i, i] = self.one
        return out

    def __call__(self, x) -> FieldElement:
        return FieldElement(self, self.convert(x))


@lru_cache(maxsize=None)
def GF(p: int) -> Field:
    """The prime field with ``p`` elements."""
    return Field(FieldKind.PRIME_FIELD, p)


QQ = Field(FieldKind.RATIONALS)


class FieldElement:
    """Immutable scalar bound to a :class:`Field`."""

    __slots__ = ("field", "value")

    def __init__(self, field: Field, value):
        object.__setattr__(self, "field", field)
        object.__setattr__(self, "value", field.convert(value))

    def __setattr__(self, name, value):
        raise AttributeError("FieldElement is immutable")

    def _coerce(self, other):
        if isinstance(other, FieldElement):
            if other.field != self.field:
                raise FieldMismatchError(f"cannot combine {self.field} and {other.field}")
            return other.value
        if isinstance(other, (int, Fraction)):
            return self.field.convert(other)
        return NotImplemented

    def _wrap(self, value):
        return FieldElement(self.field, value)

    def __add__(self, other):
        b = self._coerce(other)
        return NotImplemented if b is NotImplemented else self._wrap(self.field.add(self.value, b))

    __radd__ = __add__

    def __sub__(self, other):
        b = self._coerce(other)
        return NotImplemented if b is NotImplemented else self._wrap(self.field.sub(self.value, b))

    def __rsub__(self, other):
        b = self._coerce(other)
        return NotImplemented if b is NotImplemented else self._wrap(self.field.sub(b, self.value))

    def __mul__(self, other):
        b = self._coerce(other)
        return NotImplemented if b is NotImplemented else self._wrap(self.field.mul(self.value, b))

    __rmul__ = __mul__

    def __truediv__(self, other):
        b = self._coerce(other)
        return NotImplemented if b is NotImplemented else self._wrap(self.field.div(self.value, b))

    def __rtruediv__(self, other):
        b = self._coerce(other)
        return NotImplemented if b is NotImplemented else self._wrap(self.field.div(b, self.value))

    def __neg__(self):
        return self._wrap(self.field.neg(self.value))

    def inverse(self) -> FieldElement:
        return self._wrap(self.field.inv(self.value))

    def is_zero(self) -> bool:
        return not self.value

    def __bool__(self):
        return bool(self.value)

    def __eq__(self, other):
        if isinstance(other, FieldElement):
            return self.field == other.field and self.value == other.value
        if isinstance(other, (int, Fraction)):
            return self.value == self.field.convert(other)
        return NotImplemented

    def __hash__(self):
        return hash((self.field, self.value))

    def __repr__(self):
        return f"{self.field!r}({self.value})"

    def __str__(self):
        return str(self.value)


def field_arith(a: FieldElement, b: FieldElement, op: str) -> FieldElement:
    """Apply ``op`` (one of add, sub, mul, div) to two elements of one field."""
    if a.field != b.field:
        raise FieldMismatchError(f"cannot combine {a.field} and {b.field}")
    try:
        fn = {"add": a.field.add, "sub": a.field.sub, "mul": a.field.mul, "div": a.field.div}[op]
    except KeyError:
        raise UsageError(f"unknown field operation {op!r}") from None
    return FieldElement(a.field, fn(a.value, b.value))


def field_inverse(a: FieldElement) -> FieldElement:
    return a.inverse()
