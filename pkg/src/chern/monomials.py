"""Exponent vectors and monomial orders.

A monomial is a tuple of non-negative ints, one slot per ambient variable.
Each order exposes ``rkey(e)``: a sort key such that ascending ``rkey`` is
*descending* in the order.  ``sorted(terms, key=order.rkey)`` therefore lists
terms leading-first, and ``heapq`` pops the leading monomial first.
"""

from __future__ import annotations

from operator import add, sub

from .errors import ArgumentError, StructuralError

LT, EQ, GT = -1, 0, 1


def mono_mul(a, b):
    return tuple(map(add, a, b))


def mono_div(a, b):
    """a / b, assuming b divides a."""
    return tuple(map(sub, a, b))


def mono_divides(a, b) -> bool:
    return all(x <= y for x, y in zip(a, b))


def mono_lcm(a, b):
    return tuple(x if x > y else y for x, y in zip(a, b))


def mono_coprime(a, b) -> bool:
    return not any(x and y for x, y in zip(a, b))


def divmask(e) -> int:
    """Bitmask with bits for e_i >= 1 and e_i >= 2; monotone under divisibility."""
    m = 0
    bit = 1
    for x in e:
        if x:
            m |= bit
            if x > 1:
                m |= bit << 1
        bit <<= 2
    return m


class MonomialOrder:
    name = "?"

    def __init__(self, nvars: int, weights=None):
        self.nvars = nvars
        w = tuple(weights) if weights is not None else (1,) * nvars
        if len(w) != nvars:
            raise StructuralError("weight vector length differs from variable count")
        self.weights = w

    def degree(self, e) -> int:
        w = self.weights
        if all(x == 1 for x in w):
            return sum(e)
        return sum(a * b for a, b in zip(e, w))

    def rkey(self, e):
        raise NotImplementedError

    def compare(self, u, v) -> int:
        if len(u) != self.nvars or len(v) != self.nvars:
            raise StructuralError("exponent vector length mismatch")
        if u == v:
            return EQ
        return GT if self.rkey(u) < self.rkey(v) else LT

    def __eq__(self, other):
        return (type(self) is type(other) and self.nvars == other.nvars
                and self.weights == other.weights and self._extra() == other._extra())

    def __hash__(self):
        return hash((type(self).__name__, self.nvars, self.weights, self._extra()))

    def _extra(self):
        return ()

    def __repr__(self):
        return f"{self.name}({self.nvars})"


class Grevlex(MonomialOrder):
    """Degree (weighted, if weights given) then reverse lexicographic."""

    name = "grevlex"

    def __init__(self, nvars, weights=None):
        super().__init__(nvars, weights)
        if all(x == 1 for x in self.weights):
            self.rkey = self._rkey_unit

    @staticmethod
    def _rkey_unit(e):
        return (-sum(e), e[::-1])

    def rkey(self, e):
        return (-self.degree(e), e[::-1])


class Lex(MonomialOrder):
    name = "lex"

    def rkey(self, e):
        return tuple(-x for x in e)


class BlockOrder(MonomialOrder):
    """Contiguous blocks, each compared by (weighted) grevlex, earlier blocks first.

    ``BlockOrder(n, [t, n - t])`` is an elimination order for the first ``t``
    variables.
    """

    name = "block"

    def __init__(self, nvars, sizes, weights=None):
        super().__init__(nvars, weights)
        sizes = tuple(sizes)
        if sum(sizes) != nvars or any(s <= 0 for s in sizes):
            raise ArgumentError(f"block sizes {sizes} do not partition {nvars} variables")
        self.sizes = sizes
        bounds = []
        start = 0
        for s in sizes:
            bounds.append((start, start + s))
            start += s
        self._bounds = tuple(bounds)

    def _extra(self):
        return self.sizes

    def rkey(self, e):
        w = self.weights
        key = []
        for lo, hi in self._bounds:
            blk = e[lo:hi]
            key.append(-sum(a * b for a, b in zip(blk, w[lo:hi])))
            key.append(blk[::-1])
        return tuple(key)


def make_order(name: str, nvars: int, weights=None) -> MonomialOrder:
    if name == "grevlex":
        return Grevlex(nvars, weights)
    if name == "lex":
        return Lex(nvars, weights)
    raise ArgumentError(f"unknown monomial order {name!r}")


def compare_monomials(u, v, order: MonomialOrder) -> int:
    """Return LT (-1), EQ (0) or GT (1)."""
    return order.compare(tuple(u), tuple(v))
