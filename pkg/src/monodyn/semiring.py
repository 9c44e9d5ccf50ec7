"""Exponent arithmetic for monomials over F_q.

Over F_q every element satisfies x**q == x, so exponents of a monic monomial
live in {0, ..., q-1}.  Adding and multiplying exponents then happens modulo
that identity, which gives the commutative semiring E_q implemented here.
An absorbing ``BOTTOM`` element extends E_q for systems whose components may be
identically zero.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Union


class ContextMismatch(ValueError):
    """Operands come from different fields or have incompatible shapes."""


def _smallest_prime_factor(n: int) -> int:
    if n % 2 == 0:
        return 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return f
        f += 2
    return n


def prime_power_decomposition(q: int) -> tuple[int, int] | None:
    """Return ``(p, k)`` with ``q == p**k`` and p prime, or None."""
    if q < 2:
        return None
    p = _smallest_prime_factor(q)
    k = 0
    while q % p == 0:
        q //= p
        k += 1
    return (p, k) if q == 1 else None


@dataclass(frozen=True)
class FieldSize:
    """Size q of a finite field; must be a prime power."""

    q: int

    def __post_init__(self):
        if isinstance(self.q, bool) or not isinstance(self.q, int):
            raise TypeError(f"field size must be an int, got {self.q!r}")
        if prime_power_decomposition(self.q) is None:
            raise ValueError(f"q = {self.q} is not a prime power")

    @property
    def characteristic(self) -> int:
        return prime_power_decomposition(self.q)[0]

    @property
    def degree(self) -> int:
        return prime_power_decomposition(self.q)[1]

    def __int__(self) -> int:
        return self.q

    def __repr__(self) -> str:
        return f"FieldSize({self.q})"


@lru_cache(maxsize=None)
def field_size(q: int | FieldSize) -> FieldSize:
    if isinstance(q, FieldSize):
        return q
    return FieldSize(q)


def red_q(c: int, q: int | FieldSize) -> int:
    """Canonical representative of exponent ``c`` under x**q == x.

    This is the degree of the remainder of tau**c divided by tau**q - tau:
    zero stays zero, every positive exponent folds into [1, q-1].
    """
    q = int(q)
    if c < 0:
        raise ValueError(f"exponent must be nonnegative, got {c}")
    if c == 0:
        return 0
    return (c - 1) % (q - 1) + 1


@dataclass(frozen=True)
class ExpElem:
    """A reduced exponent in E_q."""

    value: int
    field: FieldSize

    def __post_init__(self):
        if not 0 <= self.value <= self.field.q - 1:
            raise ValueError(f"{self.value} is not in E_{self.field.q}")

    @classmethod
    def of(cls, c: int, q: int | FieldSize) -> ExpElem:
        """Reduce an arbitrary nonnegative integer into E_q."""
        fs = field_size(q)
        return cls(red_q(c, fs.q), fs)

    def __add__(self, other: ExpElem) -> ExpElem:
        return add(self, other)

    def __mul__(self, other: ExpElem) -> ExpElem:
        return mul(self, other)

    def __int__(self) -> int:
        return self.value

    def __repr__(self) -> str:
        return f"ExpElem({self.value}, q={self.field.q})"


class _Bottom:
    """The absorbing element -inf of the extended exponent semiring."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self) -> str:
        return "BOTTOM"

    def __reduce__(self):
        return (_Bottom, ())


BOTTOM = _Bottom()

ExtExpElem = Union[ExpElem, _Bottom]


def is_bottom(a: object) -> bool:
    return a is BOTTOM


def _check_same(a: ExpElem, b: ExpElem) -> None:
    if a.field != b.field:
        raise ContextMismatch(f"E_{a.field.q} and E_{b.field.q} elements cannot be combined")


def add(a: ExpElem, b: ExpElem) -> ExpElem:
    _check_same(a, b)
    return ExpElem(red_q(a.value + b.value, a.field.q), a.field)


def mul(a: ExpElem, b: ExpElem) -> ExpElem:
    _check_same(a, b)
    return ExpElem(red_q(a.value * b.value, a.field.q), a.field)


def ext_add(a: ExtExpElem, b: ExtExpElem) -> ExtExpElem:
    if a is BOTTOM or b is BOTTOM:
        return BOTTOM
    return add(a, b)


def ext_mul(a: ExtExpElem, b: ExtExpElem) -> ExtExpElem:
    # zero beats bottom: x**0 == 1 even when x is the zero function
    if (a is not BOTTOM and a.value == 0) or (b is not BOTTOM and b.value == 0):
        if a is not BOTTOM and b is not BOTTOM:
            _check_same(a, b)
        zero_of = a if a is not BOTTOM else b
        return ExpElem(0, zero_of.field)
    if a is BOTTOM or b is BOTTOM:
        return BOTTOM
    return mul(a, b)


# Integer-level helpers used by the matrix code, where entries are stored as
# plain ints (and BOTTOM) rather than ExpElem objects.

def int_ext_add(a, b, q: int):
    if a is BOTTOM or b is BOTTOM:
        return BOTTOM
    return red_q(a + b, q)


def int_ext_mul(a, b, q: int):
    if a is not BOTTOM and a == 0 or b is not BOTTOM and b == 0:
        return 0
    if a is BOTTOM or b is BOTTOM:
        return BOTTOM
    return red_q(a * b, q)
