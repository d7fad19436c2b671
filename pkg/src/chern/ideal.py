"""Quotient rings R = A/b and ideals of R stored as preimages in A."""

from __future__ import annotations

import threading
from collections import defaultdict
from operator import add

from .errors import ArgumentError, InvariantError, StructuralError
from .groebner import GroebnerBasis, _Kernel, _to_elem, groebner, staircase
from .linalg import nullspace
from .monomials import BlockOrder, MonomialOrder
from .parsing import RESERVED_NAMES, parse_polynomial
from .poly import Polynomial, PolyRing, divide_reduce

AUX_VAR = "@t"


class RingPresentation:
    """R = k[x_1..x_n]/b, graded by positive integer weights, localised at m.

    ``relations`` may be polynomials or strings; every relation must be
    homogeneous for the weights, otherwise lengths would not be graded
    dimensions.
    """

    def __init__(self, field, names, relations=(), weights=None, order="grevlex", name="R"):
        names = tuple(names)
        for n in names:
            if n in RESERVED_NAMES or n.startswith("@"):
                raise ArgumentError(f"variable name {n!r} is reserved")
        if weights is not None and any(int(w) <= 0 for w in weights):
            raise ArgumentError("variable weights must be positive integers")
        self.name = name
        self.ambient = PolyRing(field, names, order, weights)
        self.field = field
        rels = []
        for r in relations:
            f = parse_polynomial(r, self.ambient) if isinstance(r, str) else self.ambient(r)
            if f.is_zero():
                continue
            if not f.is_homogeneous():
                raise ArgumentError(f"inhomogeneous relation {f}")
            rels.append(f)
        self.relations = tuple(rels)
        self._lock = threading.Lock()
        self._base_gb = {}
        self._cache = {}

    @property
    def order(self) -> MonomialOrder:
        return self.ambient.order

    @property
    def names(self):
        return self.ambient.names

    @property
    def nvars(self):
        return self.ambient.nvars

    @property
    def weights(self):
        return self.ambient.weights

    def __repr__(self):
        rel = ", ".join(map(str, self.relations))
        return f"{self.field}[{','.join(self.names)}]/({rel})"

    def with_order(self, order: str) -> "RingPresentation":
        return RingPresentation(self.field, self.names, self.relations, self.weights, order, self.name)

    def base_gb(self, order=None) -> GroebnerBasis:
        """Reduced Gröbner basis of the defining ideal b."""
        order = order or self.order
        gb = self._base_gb.get(order)
        if gb is None:
            if self.relations:
                gb = groebner(self.relations, order, ring=self.ambient)
            else:
                gb = GroebnerBasis(self.ambient, order, ())
            with self._lock:
                gb = self._base_gb.setdefault(order, gb)
        if gb.is_unit():
            raise ArgumentError("defining ideal is the unit ideal")
        return gb

    def cached(self, key, make):
        val = self._cache.get(key)
        if val is None:
            val = make()
            with self._lock:
                val = self._cache.setdefault(key, val)
        return val

    def poly(self, x) -> Polynomial:
        if isinstance(x, str):
            return parse_polynomial(x, self.ambient)
        return self.ambient(x)

    def ideal(self, *gens, homogeneous=False) -> "Ideal":
        if len(gens) == 1 and isinstance(gens[0], (list, tuple)):
            gens = gens[0]
        return Ideal(self, [self.poly(g) for g in gens], require_homogeneous=homogeneous)

    def maximal_ideal(self) -> "Ideal":
        return self.cached("m", lambda: Ideal(self, self.ambient.gens()))

    def unit_ideal(self) -> "Ideal":
        return Ideal(self, [self.ambient.one()])

    def zero_ideal(self) -> "Ideal":
        return Ideal(self, [])

    def check(self, other: "RingPresentation"):
        if other is self:
            return
        if (other.ambient != self.ambient or other.relations != self.relations):
            raise StructuralError("ideals live in different rings")


class Ideal:
    """An ideal J of R, held as generators in A; its Gröbner basis is of J + b."""

    def __init__(self, ring: RingPresentation, gens, require_homogeneous=False):
        self.ring = ring
        gs = []
        for g in gens:
            ring.ambient.check(g)
            if not g.is_zero():
                gs.append(g)
        if require_homogeneous:
            for g in gs:
                if not g.is_homogeneous():
                    raise ArgumentError(f"generator {g} is not homogeneous")
        self.gens = tuple(gs)
        self._lock = threading.Lock()
        self._gb = {}
        self._powers = {1: self}
        self._staircase = {}

    def __repr__(self):
        return f"Ideal({', '.join(map(str, self.gens))})"

    def __len__(self):
        return len(self.gens)

    @property
    def is_homogeneous(self) -> bool:
        return all(g.is_homogeneous() for g in self.gens)

    # -- Gröbner data ------------------------------------------------------
    def gb(self, order=None) -> GroebnerBasis:
        order = order or self.ring.order
        gb = self._gb.get(order)
        if gb is None:
            base = self.ring.base_gb(order)
            gb = groebner(self.gens, order, ring=self.ring.ambient, known=base)
            with self._lock:
                gb = self._gb.setdefault(order, gb)
        return gb

    def standard_monomials(self, order=None):
        """Sorted k-basis of R/J as exponent tuples, or None if infinite."""
        order = order or self.ring.order
        st = self._staircase.get(order, 0)
        if st == 0:
            gb = self.gb(order)
            st = staircase(gb.leading_monomials, self.ring.nvars)
            if st is not None:
                st = sorted(st, key=order.rkey)
            with self._lock:
                st = self._staircase.setdefault(order, st)
        return st

    def normal_form(self, f):
        return self.gb().normal_form(self.ring.poly(f))

    def contains(self, f) -> bool:
        return self.normal_form(f).is_zero()

    def contains_ideal(self, other: "Ideal") -> bool:
        self.ring.check(other.ring)
        return all(self.contains(g) for g in other.gens)

    def is_unit(self) -> bool:
        return self.gb().is_unit()

    def is_zero(self) -> bool:
        return all(self.ring.base_gb().contains(g) for g in self.gens)

    # -- arithmetic ----------------------------------------------------------
    def __add__(self, other):
        return ideal_sum(self, other)

    def __mul__(self, other):
        if isinstance(other, Ideal):
            return ideal_product(self, other)
        f = self.ring.poly(other)
        return Ideal(self.ring, [g * f for g in self.gens])

    def __pow__(self, n):
        return ideal_power(self, n)

    def equals(self, other: "Ideal") -> bool:
        return ideal_equals(self, other)


def _reduced_products(ring: RingPresentation, left, right):
    """Pairwise products reduced modulo b, made monic and deduplicated."""
    base = ring.base_gb()
    order = ring.order
    kernel = _Kernel(order, ring.ambient.modulus, ring.weights)
    basis = [_to_elem(g, order) for g in base.elements]
    seen = set()
    out = []
    for a in left:
        for b in right:
            prod = (a * b)._d
            rem = kernel.reduce(dict(prod), basis) if basis else dict(prod)
            if not rem:
                continue
            f = Polynomial(ring.ambient, rem).monic(order)
            key = frozenset(f._d.items())
            if key not in seen:
                seen.add(key)
                out.append(f)
    return out


def ideal_sum(J: Ideal, K: Ideal) -> Ideal:
    J.ring.check(K.ring)
    return Ideal(J.ring, J.gens + K.gens)


def ideal_product(J: Ideal, K: Ideal) -> Ideal:
    J.ring.check(K.ring)
    return Ideal(J.ring, _reduced_products(J.ring, J.gens, K.gens))


def ideal_power(J: Ideal, n: int) -> Ideal:
    """J^n, built incrementally as J * J^(n-1) with J^(n-1) given by its GB."""
    if n < 0:
        raise ArgumentError("negative ideal power")
    if n == 0:
        return J.ring.unit_ideal()
    cached = J._powers.get(n)
    if cached is not None:
        return cached
    prev = ideal_power(J, n - 1)
    if prev is J:
        right = J.gens
    else:
        base = J.ring.base_gb()
        right = [g for g in prev.gb().elements if not base.contains(g)]
    P = Ideal(J.ring, _reduced_products(J.ring, J.gens, right))
    with J._lock:
        P = J._powers.setdefault(n, P)
    return P


def ideal_membership(f, J: Ideal) -> bool:
    return J.contains(f)


def ideal_equals(J: Ideal, K: Ideal) -> bool:
    J.ring.check(K.ring)
    return J.gb().elements == K.gb().elements


def _extended_ring(ring: RingPresentation):
    """A[@t] with @t first, an elimination order for it, and selection weights."""
    def make():
        amb = ring.ambient
        w = (0,) + tuple(amb.weights)
        order = BlockOrder(amb.nvars + 1, [1, amb.nvars], weights=(1,) + tuple(amb.weights))
        ext = PolyRing(amb.field, (AUX_VAR,) + amb.names, order, w)
        return ext, order, w
    return ring.cached("ext", make)


def _lift(f: Polynomial, ext: PolyRing, t_power=0) -> Polynomial:
    return Polynomial(ext, {(t_power,) + e: c for e, c in f._d.items()})


def _elimination_intersection(ring: RingPresentation, F, G):
    """Generators of (F) ∩ (G) in A via t*F + (1-t)*G, eliminating t."""
    ext, order, w = _extended_ring(ring)
    t = ext.var(0)
    gens = [_lift(f, ext, 1) for f in F]
    gens += [_lift(g, ext) - _lift(g, ext, 1) for g in G]
    gb = groebner(gens, order, ring=ext, weights=w)
    out = []
    for h in gb.elements:
        if all(e[0] == 0 for e in h._d):
            out.append(Polynomial(ring.ambient, {e[1:]: c for e, c in h._d.items()}))
    del t
    return out


def ideal_intersection(J: Ideal, K: Ideal) -> Ideal:
    """J ∩ K in R (as preimages: (J + b) ∩ (K + b))."""
    J.ring.check(K.ring)
    ring = J.ring
    b = list(ring.relations)
    gens = _elimination_intersection(ring, list(J.gens) + b, list(K.gens) + b)
    return Ideal(ring, gens)


def _is_artinian_homogeneous(J: Ideal) -> bool:
    return J.is_homogeneous and J.standard_monomials() is not None


def colon_by_element(J: Ideal, f, method="auto") -> Ideal:
    """(J :_R f): every g with g*f in J.

    ``method='elimination'`` intersects J + b with (f) and divides by f;
    ``method='artinian'`` solves the graded linear system on the standard
    monomials of R/J (needs J homogeneous and m-primary, f homogeneous).
    """
    f = J.ring.poly(f)
    if f.is_zero():
        raise ArgumentError("colon by the zero element")
    if method == "auto":
        method = "artinian" if (f.is_homogeneous() and _is_artinian_homogeneous(J)) else "elimination"
    if method == "artinian":
        return _artinian_colon(J, [f])
    ring = J.ring
    inter = _elimination_intersection(ring, list(J.gens) + list(ring.relations), [f])
    quotients = []
    for h in inter:
        (q,), r = divide_reduce(h, [f], ring.order)
        if not r.is_zero():
            raise InvariantError(f"intersection element {h} not divisible by {f}")
        quotients.append(q)
    return Ideal(ring, quotients)


def colon_by_ideal(J: Ideal, K: Ideal, method="auto") -> Ideal:
    """(J : K) = intersection over generators of K of (J : g)."""
    J.ring.check(K.ring)
    gens = [g for g in K.gens if not J.ring.base_gb().contains(g)]
    if not gens:
        raise ArgumentError("colon by the zero ideal")
    if method == "auto":
        ok = all(g.is_homogeneous() for g in gens) and _is_artinian_homogeneous(J)
        method = "artinian" if ok else "elimination"
    if method == "artinian":
        return _artinian_colon(J, gens)
    result = None
    for g in gens:
        c = colon_by_element(J, g, method="elimination")
        result = c if result is None else ideal_intersection(result, c)
    return result


def _artinian_colon(J: Ideal, fs) -> Ideal:
    """J + span{ s in R/J : s*f in J for every f in fs }, degree by degree."""
    ring = J.ring
    order = ring.order
    std = J.standard_monomials()
    if std is None:
        raise ArgumentError("linear-algebra colon needs an m-primary ideal")
    gb = J.gb()
    kernel = _Kernel(order, ring.ambient.modulus, ring.weights)
    basis = [_to_elem(g, order) for g in gb.elements]
    by_degree = defaultdict(list)
    for e in std:
        by_degree[ring.ambient.degree_of(e)].append(e)
    extra = []
    for deg in sorted(by_degree):
        monos = by_degree[deg]
        rows = []
        for s in monos:
            row = {}
            for j, f in enumerate(fs):
                prod = {tuple(map(add, s, e)): c for e, c in f._d.items()}
                for e, c in kernel.reduce(prod, basis).items():
                    row[(j, e)] = c
            rows.append(row)
        for comb in nullspace(rows, ring.ambient.modulus):
            g = Polynomial(ring.ambient, {monos[i]: c for i, c in comb.items()})
            extra.append(g.monic(order))
    return Ideal(ring, list(J.gens) + extra)
