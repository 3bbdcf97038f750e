"""Exact coefficient fields: the rationals and prime fields F_p."""

from __future__ import annotations

import functools
import re
from fractions import Fraction
from typing import Iterator

_RATIONAL_TOKEN = re.compile(r"^[+-]?\d+(/\d+)?$")


class FieldError(ValueError):
    """Raised for malformed field specifications or unrepresentable scalars."""


class Field:
    """Common interface shared by the two supported fields.

    Elements are plain Python numbers: ``int`` in ``[0, p)`` for prime
    fields, ``Fraction`` for the rationals. ``norm`` brings the result of
    ordinary ``+``/``-``/``*`` back into canonical form.
    """

    name: str
    characteristic: int

    def norm(self, x):
        raise NotImplementedError

    def inv(self, x):
        raise NotImplementedError

    def coerce(self, x):
        """Converts an int or Fraction into a canonical field element."""
        raise NotImplementedError

    def parse(self, token: str):
        """Parses a decimal integer or ``a/b`` token."""
        if not _RATIONAL_TOKEN.match(token.strip()):
            raise FieldError(f"not a scalar: {token!r}")
        return self.coerce(Fraction(token.strip()))

    @property
    def zero(self):
        return self.coerce(0)

    @property
    def one(self):
        return self.coerce(1)

    @property
    def is_prime(self) -> bool:
        return self.characteristic > 0

    def to_str(self, x) -> str:
        return str(x)

    def __repr__(self) -> str:
        return f"<field {self.name}>"


class RationalField(Field):
    """The field of rational numbers with exact ``Fraction`` arithmetic."""

    name = "q"
    characteristic = 0

    def norm(self, x):
        return x

    def inv(self, x):
        if x == 0:
            raise ZeroDivisionError("inverse of zero")
        return 1 / Fraction(x)

    def coerce(self, x):
        return Fraction(x)

    def elements(self) -> Iterator:
        raise FieldError("the rationals cannot be enumerated")


class PrimeField(Field):
    """The prime field F_p, elements stored as ints in ``range(p)``."""

    def __init__(self, p: int):
        if p < 2 or any(p % d == 0 for d in range(2, int(p**0.5) + 1)):
            raise FieldError(f"{p} is not prime")
        self.p = p
        self.characteristic = p
        self.name = f"f{p}"

    def norm(self, x):
        return x % self.p

    def inv(self, x):
        x %= self.p
        if x == 0:
            raise ZeroDivisionError("inverse of zero")
        return pow(x, self.p - 2, self.p)

    def coerce(self, x):
        if isinstance(x, Fraction):
            if x.denominator % self.p == 0:
                raise FieldError(f"{x} has no image in F_{self.p}")
            return x.numerator * pow(x.denominator, self.p - 2, self.p) % self.p
        return int(x) % self.p

    def elements(self) -> Iterator[int]:
        return iter(range(self.p))

    def to_str(self, x) -> str:
        return str(x)

    def __eq__(self, other) -> bool:
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self) -> int:
        return hash(("prime", self.p))


QQ = RationalField()


@functools.lru_cache(maxsize=None)
def GF(p: int) -> PrimeField:
    """Returns the (cached) prime field of order ``p``."""
    return PrimeField(p)


def field_from_token(token: str) -> Field:
    """Maps the file token ``q`` or ``f<p>`` to a field instance."""
    token = token.strip().lower()
    if token == "q":
        return QQ
    m = re.fullmatch(r"f(\d+)", token)
    if not m:
        raise FieldError(f"unknown field {token!r}; expected 'q' or 'f<p>'")
    return GF(int(m.group(1)))
