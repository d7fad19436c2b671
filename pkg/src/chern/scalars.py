"""Coefficient fields: the rationals and prime fields F_p.

Field elements are plain Python values so that the polynomial kernels can
use native operators: ``gmpy2.mpq`` (or :class:`fractions.Fraction` when
gmpy2 is missing) for QQ, and ``int`` residues in ``[0, p)`` for F_p.
"""

from __future__ import annotations

from fractions import Fraction

from .errors import ArgumentError, StructuralError

try:  # pragma: no cover - exercised implicitly
    from gmpy2 import mpq as _rational
except ImportError:  # pragma: no cover
    _rational = Fraction


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


class Field:
    """Common interface; subclasses are :class:`RationalField`, :class:`PrimeField`."""

    modulus: int | None = None
    name: str = "?"

    @property
    def zero(self):
        return self(0)

    @property
    def one(self):
        return self(1)

    def __call__(self, value):
        raise NotImplementedError

    def inv(self, a):
        raise NotImplementedError

    def check_same(self, other: "Field") -> None:
        if self != other:
            raise StructuralError(f"field mismatch: {self} vs {other}")

    def __repr__(self):
        return self.name


class RationalField(Field):
    """QQ with arbitrary-precision canonical fractions."""

    name = "QQ"
    characteristic = 0

    def __call__(self, value):
        if isinstance(value, str):
            value = Fraction(value)
        if isinstance(value, Fraction):
            return _rational(value.numerator, value.denominator)
        return _rational(value)

    def inv(self, a):
        if a == 0:
            raise ZeroDivisionError("inverse of zero")
        return 1 / self(a)

    def __eq__(self, other):
        return isinstance(other, RationalField)

    def __hash__(self):
        return hash("QQ")


class PrimeField(Field):
    """Z/pZ for a prime p; elements are ints reduced into ``[0, p)``."""

    def __init__(self, p: int):
        if not _is_prime(p):
            raise ArgumentError(f"modulus {p} is not prime")
        self.modulus = p
        self.characteristic = p
        self.name = f"Fp({p})"

    def __call__(self, value):
        p = self.modulus
        if isinstance(value, str):
            value = Fraction(value)
        if isinstance(value, Fraction) or type(value).__name__ == "mpq":
            num, den = int(value.numerator), int(value.denominator)
            if den % p == 0:
                raise ZeroDivisionError(f"denominator {den} vanishes mod {p}")
            return num * pow(den, -1, p) % p
        return int(value) % p

    def inv(self, a):
        if a % self.modulus == 0:
            raise ZeroDivisionError("inverse of zero")
        return pow(int(a), -1, self.modulus)

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.modulus == self.modulus

    def __hash__(self):
        return hash(("Fp", self.modulus))


QQ = RationalField()


def Fp(p: int) -> PrimeField:
    return PrimeField(p)


def format_scalar(c) -> str:
    """Canonical text for a field element (``3``, ``-1/2``)."""
    if isinstance(c, int):
        return str(c)
    num, den = int(c.numerator), int(c.denominator)
    return str(num) if den == 1 else f"{num}/{den}"
