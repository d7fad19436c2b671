"""Sparse distributed polynomials over QQ or F_p."""

from __future__ import annotations

from operator import add

from .errors import ArgumentError, StructuralError
from .monomials import Grevlex, MonomialOrder, make_order, mono_div, mono_divides
from .scalars import QQ, Field, format_scalar


class PolyRing:
    """The ambient polynomial ring k[x_1..x_n] with a default monomial order."""

    def __init__(self, field: Field, names, order="grevlex", weights=None):
        names = tuple(names)
        if len(set(names)) != len(names):
            raise ArgumentError(f"duplicate variable names in {names}")
        self.field = field
        self.names = names
        self.nvars = len(names)
        self.weights = tuple(weights) if weights is not None else (1,) * self.nvars
        if isinstance(order, MonomialOrder):
            if order.nvars != self.nvars:
                raise StructuralError("order arity differs from variable count")
            self.order = order
        else:
            self.order = make_order(order, self.nvars, self.weights)
        self._print_order = Grevlex(self.nvars)
        self._index = {n: i for i, n in enumerate(names)}

    # identity is by value so that independently built rings interoperate
    def _sig(self):
        return (self.field, self.names, self.weights)

    def __eq__(self, other):
        return isinstance(other, PolyRing) and self._sig() == other._sig()

    def __hash__(self):
        return hash(self._sig())

    def __repr__(self):
        return f"{self.field}[{','.join(self.names)}]"

    def with_order(self, order) -> "PolyRing":
        return PolyRing(self.field, self.names, order, self.weights)

    @property
    def modulus(self):
        return self.field.modulus

    def zero(self) -> "Polynomial":
        return Polynomial(self, {})

    def one(self) -> "Polynomial":
        return self.constant(1)

    def constant(self, c) -> "Polynomial":
        c = self.field(c)
        if c == 0:
            return self.zero()
        return Polynomial(self, {(0,) * self.nvars: c})

    def var(self, name_or_index) -> "Polynomial":
        i = self._index[name_or_index] if isinstance(name_or_index, str) else name_or_index
        e = [0] * self.nvars
        e[i] = 1
        return Polynomial(self, {tuple(e): self.field.one})

    def gens(self):
        return [self.var(i) for i in range(self.nvars)]

    def monomial(self, e, c=1) -> "Polynomial":
        return Polynomial(self, {tuple(e): self.field(c)})

    def index(self, name: str) -> int:
        return self._index[name]

    def degree_of(self, e) -> int:
        return sum(a * b for a, b in zip(e, self.weights))

    def parse(self, text: str) -> "Polynomial":
        from .parsing import parse_polynomial
        return parse_polynomial(text, self)

    def __call__(self, x) -> "Polynomial":
        if isinstance(x, Polynomial):
            self.check(x)
            return x
        if isinstance(x, str):
            return self.parse(x)
        return self.constant(x)

    def check(self, f: "Polynomial") -> None:
        if f.ring != self:
            if f.ring.field != self.field:
                raise StructuralError(f"field mismatch: {f.ring.field} vs {self.field}")
            raise StructuralError(f"ring mismatch: {f.ring} vs {self}")


class Polynomial:
    """Immutable polynomial; ``_d`` maps exponent tuples to nonzero coefficients."""

    __slots__ = ("ring", "_d", "_hash")

    def __init__(self, ring: PolyRing, d: dict):
        self.ring = ring
        self._d = d
        self._hash = None

    @classmethod
    def from_terms(cls, ring, terms):
        d = {}
        F = ring.field
        for e, c in terms:
            e = tuple(e)
            if len(e) != ring.nvars:
                raise StructuralError("exponent vector length mismatch")
            if any(x < 0 for x in e):
                raise ArgumentError("negative exponents are not supported")
            v = d.get(e, 0) + F(c)
            if F.modulus:
                v %= F.modulus
            if v:
                d[e] = v
            else:
                d.pop(e, None)
        return cls(ring, d)

    # -- inspection --------------------------------------------------------
    def is_zero(self) -> bool:
        return not self._d

    def __bool__(self):
        return bool(self._d)

    def __len__(self):
        return len(self._d)

    def monomials(self):
        return list(self._d)

    def coefficient(self, e):
        return self._d.get(tuple(e), self.ring.field.zero)

    def terms(self, order: MonomialOrder | None = None):
        """(monomial, coefficient) pairs, strictly decreasing in ``order``."""
        key = (order or self.ring.order).rkey
        return sorted(self._d.items(), key=lambda t: key(t[0]))

    def leading_monomial(self, order=None):
        if not self._d:
            raise ArgumentError("zero polynomial has no leading monomial")
        key = (order or self.ring.order).rkey
        return min(self._d, key=key)

    def leading_coefficient(self, order=None):
        return self._d[self.leading_monomial(order)]

    def degree(self) -> int:
        """Weighted total degree; -1 for the zero polynomial."""
        if not self._d:
            return -1
        return max(self.ring.degree_of(e) for e in self._d)

    def is_homogeneous(self) -> bool:
        degs = {self.ring.degree_of(e) for e in self._d}
        return len(degs) <= 1

    def is_constant(self) -> bool:
        return all(not any(e) for e in self._d)

    def monic(self, order=None) -> "Polynomial":
        if not self._d:
            return self
        inv = self.ring.field.inv(self.leading_coefficient(order))
        return self.scale(inv)

    def scale(self, c) -> "Polynomial":
        F = self.ring.field
        c = F(c)
        if c == 0:
            return self.ring.zero()
        p = F.modulus
        if p:
            return Polynomial(self.ring, {e: v * c % p for e, v in self._d.items()})
        return Polynomial(self.ring, {e: v * c for e, v in self._d.items()})

    # -- arithmetic ----------------------------------------------------------
    def _coerce(self, other) -> "Polynomial":
        if isinstance(other, Polynomial):
            self.ring.check(other)
            return other
        return self.ring.constant(other)

    def _combine(self, other, sign):
        other = self._coerce(other)
        d = dict(self._d)
        p = self.ring.field.modulus
        for e, c in other._d.items():
            v = d.get(e, 0) + sign * c
            if p:
                v %= p
            if v:
                d[e] = v
            else:
                d.pop(e, None)
        return Polynomial(self.ring, d)

    def __add__(self, other):
        return self._combine(other, 1)

    __radd__ = __add__

    def __sub__(self, other):
        return self._combine(other, -1)

    def __rsub__(self, other):
        return self._coerce(other)._combine(self, -1)

    def __neg__(self):
        return self.scale(-1)

    def __mul__(self, other):
        if not isinstance(other, Polynomial):
            return self.scale(other)
        self.ring.check(other)
        d = {}
        p = self.ring.field.modulus
        for e1, c1 in self._d.items():
            for e2, c2 in other._d.items():
                e = tuple(map(add, e1, e2))
                d[e] = d.get(e, 0) + c1 * c2
        if p:
            d = {e: v % p for e, v in d.items() if v % p}
        else:
            d = {e: v for e, v in d.items() if v}
        return Polynomial(self.ring, d)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            raise ArgumentError("negative powers are not supported")
        result = self.ring.one()
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __eq__(self, other):
        if isinstance(other, Polynomial):
            return self.ring == other.ring and self._d == other._d
        if isinstance(other, (int,)) or type(other).__name__ in ("mpq", "Fraction"):
            return self._d == self.ring.constant(other)._d
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.ring, frozenset(self._d.items())))
        return self._hash

    # -- printing ------------------------------------------------------------
    def __str__(self):
        return format_polynomial(self)

    def __repr__(self):
        return f"Polynomial({format_polynomial(self)!r})"


def format_monomial(e, names) -> str:
    parts = []
    for x, n in zip(e, names):
        if x == 1:
            parts.append(n)
        elif x > 1:
            parts.append(f"{n}^{x}")
    return "*".join(parts)


def format_polynomial(f: Polynomial) -> str:
    """Canonical text: grevlex-descending, signs folded into coefficients."""
    if not f._d:
        return "0"
    field = f.ring.field
    p = field.modulus
    out = []
    for e, c in f.terms(f.ring._print_order):
        if p and c > p // 2:
            c = c - p
        neg = c < 0
        a = -c if neg else c
        mono = format_monomial(e, f.ring.names)
        if not mono:
            body = format_scalar(a)
        elif a == 1:
            body = mono
        else:
            body = f"{format_scalar(a)}*{mono}"
        if not out:
            out.append(f"-{body}" if neg else body)
        else:
            out.append(f" - {body}" if neg else f" + {body}")
    return "".join(out)


def poly_arith(a: Polynomial, b: Polynomial, op: str) -> Polynomial:
    """Exact add/sub/mul; raises StructuralError on mismatched rings."""
    a.ring.check(b)
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    raise ArgumentError(f"unknown operation {op!r}")


def divide_reduce(f: Polynomial, divisors, order: MonomialOrder | None = None):
    """Multivariate division of ``f`` by an ordered list of divisors.

    Returns ``(quotients, remainder)`` with ``f == sum(q*d) + r`` and no term
    of ``r`` divisible by a divisor's leading monomial.
    """
    ring = f.ring
    order = order or ring.order
    divisors = list(divisors)
    for g in divisors:
        ring.check(g)
        if g.is_zero():
            raise ArgumentError("division by the zero polynomial")
    F = ring.field
    p = F.modulus
    leads = [(g.leading_monomial(order), g.leading_coefficient(order)) for g in divisors]
    quot = [dict() for _ in divisors]
    rem = {}
    work = dict(f._d)
    key = order.rkey
    while work:
        e = min(work, key=key)
        c = work[e]
        for i, (lm, lc) in enumerate(leads):
            if mono_divides(lm, e):
                m = mono_div(e, lm)
                t = c * F.inv(lc)
                if p:
                    t %= p
                quot[i][m] = quot[i].get(m, 0) + t
                for ge, gc in divisors[i]._d.items():
                    ne = tuple(map(add, ge, m))
                    v = work.get(ne, 0) - t * gc
                    if p:
                        v %= p
                    if v:
                        work[ne] = v
                    else:
                        work.pop(ne, None)
                break
        else:
            rem[e] = c
            del work[e]
    qs = [Polynomial.from_terms(ring, q.items()) for q in quot]
    return qs, Polynomial(ring, rem)
