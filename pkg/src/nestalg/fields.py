"""Ground fields for exact linear algebra: the rationals and GF(p)."""

from __future__ import annotations

from fractions import Fraction
from typing import Union

Scalar = Union[Fraction, int]


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    d = 2
    while d * d <= p:
        if p % d == 0:
            return False
        d += 1
    return True


class Field:
    """The rationals (p is None) or the prime field GF(p).

    Rational scalars are Fractions (always in lowest terms, positive
    denominator); GF(p) scalars are ints in [0, p).  All arithmetic goes
    through the field so callers never special-case the representation.
    """

    __slots__ = ("p",)

    def __init__(self, p: int | None = None):
        if p is not None and not _is_prime(p):
            raise ValueError(f"field modulus must be prime, got {p}")
        object.__setattr__(self, "p", p)

    @property
    def is_rationals(self) -> bool:
        return self.p is None

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Field) and other.p == self.p

    def __hash__(self) -> int:
        return hash(("Field", self.p))

    def __repr__(self) -> str:
        return "QQ" if self.p is None else f"GF({self.p})"

    # -- scalar construction ------------------------------------------------

    def coerce(self, value) -> Scalar:
        """Normalize an int / Fraction / 'a/b' string into this field."""
        if self.p is None:
            if isinstance(value, Fraction):
                return value
            if isinstance(value, int):
                return Fraction(value)
            if isinstance(value, str):
                return Fraction(value)
            raise TypeError(f"cannot coerce {value!r} into QQ")
        if isinstance(value, Fraction):
            if value.denominator != 1:
                raise TypeError(f"cannot coerce {value!r} into GF({self.p})")
            value = value.numerator
        if isinstance(value, str):
            value = int(value)
        if not isinstance(value, int):
            raise TypeError(f"cannot coerce {value!r} into GF({self.p})")
        return value % self.p

    def zero(self) -> Scalar:
        return Fraction(0) if self.p is None else 0

    def one(self) -> Scalar:
        return Fraction(1) if self.p is None else 1

    # -- arithmetic ---------------------------------------------------------

    def add(self, a: Scalar, b: Scalar) -> Scalar:
        return a + b if self.p is None else (a + b) % self.p

    def sub(self, a: Scalar, b: Scalar) -> Scalar:
        return a - b if self.p is None else (a - b) % self.p

    def mul(self, a: Scalar, b: Scalar) -> Scalar:
        return a * b if self.p is None else (a * b) % self.p

    def neg(self, a: Scalar) -> Scalar:
        return -a if self.p is None else (-a) % self.p

    def inv(self, a: Scalar) -> Scalar:
        if not a:
            raise ZeroDivisionError("inverse of zero")
        return 1 / a if self.p is None else pow(a, -1, self.p)

    def div(self, a: Scalar, b: Scalar) -> Scalar:
        return self.mul(a, self.inv(b))

    def elements(self) -> tuple[Scalar, ...]:
        """All field elements; defined only for GF(p)."""
        if self.p is None:
            raise ValueError("the rationals cannot be enumerated")
        return tuple(range(self.p))

    # -- serialization ------------------------------------------------------

    def format_scalar(self, a: Scalar):
        """JSON form: 'n' or 'n/d' strings over QQ, plain ints over GF(p)."""
        if self.p is None:
            if a.denominator == 1:
                return str(a.numerator)
            return f"{a.numerator}/{a.denominator}"
        return int(a)

    def parse_scalar(self, obj) -> Scalar:
        try:
            return self.coerce(obj)
        except (TypeError, ValueError) as exc:
            raise ValueError(f"bad scalar {obj!r} for {self!r}") from exc


QQ = Field()


def GF(p: int) -> Field:
    return Field(p)


GF2 = GF(2)
GF3 = GF(3)
