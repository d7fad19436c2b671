"""Buchberger's algorithm with the normal selection strategy.

Polynomials enter and leave this module as :class:`~chern.poly.Polynomial`;
internally they are monic term lists.  Pair management follows the
Gebauer–Möller installation of Buchberger's product and chain criteria,
vectorised with numpy over the lcm matrix.

For homogeneous input whose leading ideal becomes cofinite, pairs above the
top degree of the current staircase are dropped: every homogeneous
polynomial of that degree is already top-reducible, so those S-polynomials
reduce to zero.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass
from operator import add

import numpy as np

from .errors import ArgumentError
from .monomials import MonomialOrder, divmask, mono_div, mono_divides, mono_lcm
from .poly import Polynomial, PolyRing


class _Elem:
    """Monic polynomial with cached leading data; ``terms[0]`` is the leading term."""

    __slots__ = ("lm", "terms", "mask", "tail")

    def __init__(self, terms):
        self.terms = terms
        self.lm = terms[0][0]
        self.tail = terms[1:]
        self.mask = divmask(self.lm)


class _Kernel:
    """Field-specific reduction primitives for one (order, modulus) pair."""

    def __init__(self, order: MonomialOrder, modulus, weights):
        self.rkey = order.rkey
        self.p = modulus
        self.weights = tuple(weights)
        self.unit_weights = all(w == 1 for w in self.weights)
        self.div_cache = {}

    def wdeg(self, e):
        if self.unit_weights:
            return sum(e)
        return sum(a * b for a, b in zip(e, self.weights))

    def as_elem(self, d: dict):
        """Sorted monic element from a nonzero coefficient dict."""
        rkey = self.rkey
        items = sorted(d.items(), key=lambda t: rkey(t[0]))
        lc = items[0][1]
        p = self.p
        if p:
            inv = pow(int(lc), -1, p)
            items = [(e, c * inv % p) for e, c in items]
        elif lc != 1:
            inv = 1 / lc
            items = [(e, c * inv) for e, c in items]
        return _Elem(items)

    def find_divisor(self, e, basis):
        g = self.div_cache.get(e)
        if g is not None:
            return g
        em = divmask(e)
        for g in basis:
            if g.mask & ~em:
                continue
            if all(a <= b for a, b in zip(g.lm, e)):
                self.div_cache[e] = g
                return g
        return None

    def reduce(self, f: dict, basis, full=True) -> dict:
        """Normal form of ``f`` (consumed) modulo ``basis``; returns remainder dict."""
        if not f:
            return f
        rkey = self.rkey
        p = self.p
        heap = [(rkey(e), e) for e in f]
        heapq.heapify(heap)
        pop, push = heapq.heappop, heapq.heappush
        rem = {}
        find = self.find_divisor
        while heap:
            e = pop(heap)[1]
            c = f.get(e)
            if c is None:
                continue
            del f[e]
            g = find(e, basis)
            if g is None:
                rem[e] = c
                if not full:
                    rem.update(f)
                    return rem
                continue
            m = mono_div(e, g.lm)
            if p:
                for te, tc in g.tail:
                    ne = tuple(map(add, te, m))
                    v = f.get(ne)
                    if v is None:
                        f[ne] = -c * tc % p
                        push(heap, (rkey(ne), ne))
                    else:
                        v = (v - c * tc) % p
                        if v:
                            f[ne] = v
                        else:
                            del f[ne]
            else:
                for te, tc in g.tail:
                    ne = tuple(map(add, te, m))
                    v = f.get(ne)
                    if v is None:
                        f[ne] = -c * tc
                        push(heap, (rkey(ne), ne))
                    else:
                        v = v - c * tc
                        if v:
                            f[ne] = v
                        else:
                            del f[ne]
        return rem

    def spoly(self, g1: _Elem, g2: _Elem) -> dict:
        L = mono_lcm(g1.lm, g2.lm)
        m1 = mono_div(L, g1.lm)
        m2 = mono_div(L, g2.lm)
        p = self.p
        d = {tuple(map(add, e, m1)): c for e, c in g1.tail}
        for e, c in g2.tail:
            ne = tuple(map(add, e, m2))
            v = d.get(ne, 0) - c
            if p:
                v %= p
            if v:
                d[ne] = v
            else:
                d.pop(ne, None)
        return d


def staircase(leads, nvars, limit=None, max_degree=None):
    """Monomials not divisible by any of ``leads``, or None if infinite.

    Generated breadth-first, each monomial once (multiply only by variables
    at or after its last nonzero slot).  Returns None when some variable has
    no pure power among ``leads``; when ``limit`` is hit returns False.
    With ``max_degree`` only monomials of total degree <= max_degree are
    produced and the finiteness test is skipped.
    """
    leads = list(leads)
    pure = [False] * nvars
    for lm in leads:
        nz = [i for i, x in enumerate(lm) if x]
        if len(nz) == 1:
            pure[nz[0]] = True
        elif not nz:
            return []
    if max_degree is None and not all(pure):
        return None
    masks = [(divmask(lm), lm) for lm in leads]

    def standard(e):
        em = divmask(e)
        for m, lm in masks:
            if m & ~em:
                continue
            if all(a <= b for a, b in zip(lm, e)):
                return False
        return True

    one = (0,) * nvars
    out = [one]
    level = [(one, 0)]
    depth = 0
    while level and (max_degree is None or depth < max_degree):
        depth += 1
        nxt = []
        for e, last in level:
            for i in range(last, nvars):
                ne = e[:i] + (e[i] + 1,) + e[i + 1:]
                if standard(ne):
                    nxt.append((ne, i))
        out.extend(e for e, _ in nxt)
        if limit is not None and len(out) > limit:
            return False
        level = nxt
    return out


class _PairStore:
    def __init__(self, nvars):
        self.n = nvars
        self.cap = 256
        self.L = np.zeros((self.cap, nvars), dtype=np.int64)
        self.I = np.zeros(self.cap, dtype=np.int64)
        self.J = np.zeros(self.cap, dtype=np.int64)
        self.alive = np.zeros(self.cap, dtype=bool)
        self.count = 0

    def add(self, Ls, i_s, j):
        k = len(i_s)
        while self.count + k > self.cap:
            self.cap *= 2
            for name in ("L", "I", "J", "alive"):
                old = getattr(self, name)
                shape = (self.cap,) + old.shape[1:]
                new = np.zeros(shape, dtype=old.dtype)
                new[: self.count] = old[: self.count]
                setattr(self, name, new)
        s = self.count
        self.L[s:s + k] = Ls
        self.I[s:s + k] = i_s
        self.J[s:s + k] = j
        self.alive[s:s + k] = True
        self.count += k
        return range(s, s + k)


class _Buchberger:
    def __init__(self, nvars, kernel: _Kernel, homogeneous: bool, truncate: bool):
        self.n = nvars
        self.k = kernel
        self.G: list[_Elem] = []
        self.cap = 64
        self.LM = np.zeros((self.cap, nvars), dtype=np.int64)
        self.active = np.zeros(self.cap, dtype=bool)
        self.pairs = _PairStore(nvars)
        self.heap = []
        self.truncate = truncate and homogeneous
        self.bound = None
        self.bound_stale = True
        self.unit = False
        self.spairs_reduced = 0

    def reducers(self):
        return [self.G[i] for i in np.nonzero(self.active[: len(self.G)])[0]]

    def insert(self, h: _Elem, pairs=True):
        if not any(h.lm):
            self.unit = True
            return
        idx = len(self.G)
        if idx >= self.cap:
            self.cap *= 2
            LM = np.zeros((self.cap, self.n), dtype=np.int64)
            LM[:idx] = self.LM[:idx]
            act = np.zeros(self.cap, dtype=bool)
            act[:idx] = self.active[:idx]
            self.LM, self.active = LM, act
        hl = np.asarray(h.lm, dtype=np.int64)
        act_idx = np.nonzero(self.active[:idx])[0]
        P = self.pairs
        # chain criterion on existing pairs
        if P.count and pairs:
            cnt = P.count
            cand = np.nonzero(P.alive[:cnt] & (P.L[:cnt] >= hl).all(1))[0]
            if cand.size:
                Lc = P.L[cand]
                li = np.maximum(self.LM[P.I[cand]], hl)
                lj = np.maximum(self.LM[P.J[cand]], hl)
                kill = (li != Lc).any(1) & (lj != Lc).any(1)
                P.alive[cand[kill]] = False
        if act_idx.size and pairs:
            lms = self.LM[act_idx]
            L = np.maximum(lms, hl)
            coprime = ~((lms > 0) & (hl > 0)).any(1)
            div = (L[:, None, :] <= L[None, :, :]).all(2)  # div[b, a]: L_b | L_a
            eq = (L[:, None, :] == L[None, :, :]).all(2)
            elim = (div & ~eq).any(0)
            keep = []
            seen = {}
            for a in np.nonzero(~elim)[0]:
                key = L[a].tobytes()
                if key in seen:
                    if coprime[a]:
                        seen[key] = None
                    continue
                seen[key] = None if coprime[a] else a
            keep = [a for a in seen.values() if a is not None]
            if keep:
                keep = np.array(sorted(keep), dtype=np.int64)
                rng = P.add(L[keep], act_idx[keep], idx)
                wdeg = self.k.wdeg
                rkey = self.k.rkey
                for r, a in zip(rng, keep):
                    lt = tuple(int(x) for x in L[a])
                    heapq.heappush(self.heap, (wdeg(lt), rkey(lt), r))
            # drop actives whose leading monomial h.lm divides
            covered = act_idx[(lms >= hl).all(1)]
            self.active[covered] = False
        self.G.append(h)
        self.LM[idx] = hl
        self.active[idx] = True
        self.bound_stale = True

    def _refresh_bound(self):
        self.bound_stale = False
        if not self.truncate:
            return
        leads = [self.G[i].lm for i in np.nonzero(self.active[: len(self.G)])[0]]
        powers = [None] * self.n
        for lm in leads:
            nz = [i for i, x in enumerate(lm) if x]
            if len(nz) == 1:
                i = nz[0]
                if powers[i] is None or lm[i] < powers[i]:
                    powers[i] = lm[i]
        if any(a is None for a in powers):
            self.bound = None
            return
        box = 1
        for a in powers:
            box *= a
        if box <= 50000:
            st = staircase(leads, self.n)
            self.bound = max(self.k.wdeg(e) for e in st)
        else:
            self.bound = self.k.wdeg(tuple(a - 1 for a in powers))

    def beyond_bound(self, deg) -> bool:
        if not self.truncate:
            return False
        if self.bound is not None and deg <= self.bound:
            return False
        if self.bound_stale:
            self._refresh_bound()
        return self.bound is not None and deg > self.bound

    def run(self, inputs):
        """``inputs``: list of nonzero dicts; processed interleaved with pairs by degree."""
        k = self.k
        queue = []
        for n, d in enumerate(inputs):
            lm = min(d, key=k.rkey)
            queue.append((max(k.wdeg(e) for e in d), k.rkey(lm), n))
        queue.sort()
        qi = 0
        P = self.pairs
        while not self.unit:
            take_input = False
            if qi < len(queue):
                if not self.heap or queue[qi][0] <= self.heap[0][0]:
                    take_input = True
            elif not self.heap:
                break
            if take_input:
                deg, _, n = queue[qi]
                qi += 1
                f = dict(inputs[n])
            else:
                deg, _, r = heapq.heappop(self.heap)
                if not P.alive[r]:
                    continue
                P.alive[r] = False
                if self.beyond_bound(deg):
                    if qi >= len(queue) or self.beyond_bound(queue[qi][0]):
                        break
                    continue
                f = k.spoly(self.G[int(P.I[r])], self.G[int(P.J[r])])
                self.spairs_reduced += 1
            if take_input and self.beyond_bound(deg):
                continue
            rem = k.reduce(f, self.reducers())
            if rem:
                self.insert(k.as_elem(rem))

    def reduced_basis(self):
        k = self.k
        if self.unit:
            return None
        basis = self.reducers()
        out = []
        for g in basis:
            tail = k.reduce(dict(g.tail), basis)
            out.append(_Elem([g.terms[0]] + sorted(tail.items(), key=lambda t: k.rkey(t[0]))))
        out.sort(key=lambda g: k.rkey(g.lm))
        return out


@dataclass(frozen=True)
class GroebnerBasis:
    """Reduced Gröbner basis: monic elements sorted by descending leading monomial."""

    ring: PolyRing
    order: MonomialOrder
    elements: tuple
    reduced: bool = True

    def __len__(self):
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    @property
    def leading_monomials(self):
        return [g.leading_monomial(self.order) for g in self.elements]

    def is_unit(self) -> bool:
        return len(self.elements) == 1 and self.elements[0].is_constant()

    def normal_form(self, f: Polynomial) -> Polynomial:
        self.ring.check(f)
        k = _Kernel(self.order, self.ring.modulus, self.ring.weights)
        basis = [_to_elem(g, self.order) for g in self.elements]
        return Polynomial(self.ring, k.reduce(dict(f._d), basis))

    def contains(self, f: Polynomial) -> bool:
        return self.normal_form(f).is_zero()

    def _elems(self):
        return [_to_elem(g, self.order) for g in self.elements]


def _to_elem(g: Polynomial, order):
    items = sorted(g._d.items(), key=lambda t: order.rkey(t[0]))
    return _Elem(items)


def _is_homogeneous(d: dict, kernel: _Kernel) -> bool:
    degs = {kernel.wdeg(e) for e in d}
    return len(degs) <= 1


def groebner(gens, order: MonomialOrder | None = None, ring: PolyRing | None = None,
             known: "GroebnerBasis | None" = None, weights=None, truncate=True) -> GroebnerBasis:
    """Reduced Gröbner basis of the ideal generated by ``gens``.

    ``known`` is a reduced basis of a sub-ideal (typically the defining ideal
    of a quotient ring); pairs among its elements are not revisited.
    ``weights`` overrides the grading used for pair selection; zero weights
    are allowed for auxiliary variables, in which case degree truncation is
    disabled.
    """
    gens = list(gens)
    if ring is None:
        if not gens:
            raise ArgumentError("cannot infer the ring of an empty generator list")
        ring = gens[0].ring
    for g in gens:
        ring.check(g)
    order = order or ring.order
    w = tuple(weights) if weights is not None else ring.weights
    kernel = _Kernel(order, ring.modulus, w)
    inputs = [dict(g._d) for g in gens if not g.is_zero()]
    homog = all(_is_homogeneous(d, kernel) for d in inputs) and all(x > 0 for x in w)
    if known is not None:
        homog = homog and all(_is_homogeneous(g._d, kernel) for g in known.elements)
    bb = _Buchberger(ring.nvars, kernel, homog, truncate)
    if known is not None:
        if known.order != order:
            raise ArgumentError("known basis was computed for a different order")
        for g in known._elems():
            bb.insert(g, pairs=False)
    bb.run(inputs)
    basis = bb.reduced_basis()
    if basis is None:
        elements = (ring.one(),)
    else:
        elements = tuple(Polynomial(ring, dict(g.terms)) for g in basis)
    return GroebnerBasis(ring, order, elements, True)


def is_groebner(elements, order: MonomialOrder) -> bool:
    """Buchberger's criterion checked directly on every pair (no shortcuts)."""
    elements = [g for g in elements if not g.is_zero()]
    if not elements:
        return True
    ring = elements[0].ring
    kernel = _Kernel(order, ring.modulus, ring.weights)
    basis = [kernel.as_elem(dict(g._d)) for g in elements]
    for a in range(len(basis)):
        for b in range(a + 1, len(basis)):
            s = kernel.spoly(basis[a], basis[b])
            if kernel.reduce(s, basis, full=False):
                return False
    return True


def is_reduced(gb: GroebnerBasis) -> bool:
    leads = gb.leading_monomials
    for i, g in enumerate(gb.elements):
        if g.leading_coefficient(gb.order) != 1:
            return False
        for j, lm in enumerate(leads):
            if i == j:
                continue
            if any(mono_divides(lm, e) for e in g.monomials()):
                return False
    return True
