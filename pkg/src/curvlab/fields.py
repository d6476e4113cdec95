"""Exact coefficient fields: the rationals and prime fields F_p.

All arithmetic in curvlab is exact.  Rational coefficients are
`fractions.Fraction`; prime-field coefficients are ints reduced mod p.
A FieldSpec carries the arithmetic and the parsing/formatting rules for
the JSON document format ("p/q" strings over Q, plain ints mod p).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


@dataclass(frozen=True)
class FieldSpec:
    """Ground field: kind is 'rationals' or 'prime-field' (with characteristic p)."""

    kind: str
    characteristic: int = 0

    def __post_init__(self):
        if self.kind not in ("rationals", "prime-field"):
            raise ValueError("field kind must be 'rationals' or 'prime-field'")
        if self.kind == "prime-field":
            p = self.characteristic
            if not (isinstance(p, int) and _is_prime(p) and p <= 2**31):
                raise ValueError("characteristic must be a prime <= 2^31")
        elif self.characteristic != 0:
            raise ValueError("rationals have characteristic 0")

    # -- arithmetic ---------------------------------------------------------

    @property
    def is_prime_field(self) -> bool:
        return self.kind == "prime-field"

    def zero(self):
        return 0 if self.is_prime_field else Fraction(0)

    def one(self):
        return 1 if self.is_prime_field else Fraction(1)

    def coerce(self, x):
        if self.is_prime_field:
            return int(x) % self.characteristic
        return Fraction(x)

    def add(self, a, b):
        if self.is_prime_field:
            return (a + b) % self.characteristic
        return a + b

    def sub(self, a, b):
        if self.is_prime_field:
            return (a - b) % self.characteristic
        return a - b

    def neg(self, a):
        if self.is_prime_field:
            return (-a) % self.characteristic
        return -a

    def mul(self, a, b):
        if self.is_prime_field:
            return (a * b) % self.characteristic
        return a * b

    def inv(self, a):
        if self.is_zero(a):
            raise ZeroDivisionError("inverse of zero")
        if self.is_prime_field:
            return pow(a, self.characteristic - 2, self.characteristic)
        return 1 / Fraction(a)

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def is_zero(self, a) -> bool:
        if self.is_prime_field:
            return a % self.characteristic == 0
        return a == 0

    def elements(self):
        """All field elements; only available over a prime field."""
        if not self.is_prime_field:
            raise ValueError("cannot enumerate the rationals")
        return range(self.characteristic)

    # -- document I/O -------------------------------------------------------

    def parse_coeff(self, s):
        if self.is_prime_field:
            return int(s) % self.characteristic
        if isinstance(s, str):
            return Fraction(s)
        if isinstance(s, int):
            return Fraction(s)
        raise ValueError(f"bad rational coefficient: {s!r}")

    def format_coeff(self, a):
        if self.is_prime_field:
            return int(a) % self.characteristic
        f = Fraction(a)
        return str(f.numerator) if f.denominator == 1 else f"{f.numerator}/{f.denominator}"

    def describe(self) -> dict:
        if self.is_prime_field:
            return {"kind": "prime-field", "characteristic": self.characteristic}
        return {"kind": "rationals"}

    @staticmethod
    def from_doc(doc) -> "FieldSpec":
        if isinstance(doc, str):
            if doc == "rationals":
                return QQ
            raise ValueError(f"unknown field {doc!r}")
        kind = doc.get("kind")
        if kind == "rationals":
            return QQ
        if kind == "prime-field":
            return GF(int(doc["characteristic"]))
        raise ValueError(f"unknown field document {doc!r}")


QQ = FieldSpec("rationals")


def GF(p: int) -> FieldSpec:
    return FieldSpec("prime-field", p)
