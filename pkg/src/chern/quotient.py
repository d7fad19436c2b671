"""Measurements on Artinian quotients of R: lengths, socles, dimension."""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import ArgumentError
from .ideal import Ideal, RingPresentation, colon_by_ideal, ideal_equals, ideal_power, ideal_product

INFINITE = math.inf


@dataclass(frozen=True)
class StandardMonomialBasis:
    ideal: Ideal
    monomials: tuple
    finite: bool

    def __len__(self):
        return len(self.monomials)


@dataclass(frozen=True)
class SocleReport:
    ideal: Ideal
    colength: int
    colon: Ideal
    colon_colength: int

    @property
    def index_of_reducibility(self) -> int:
        return self.colength - self.colon_colength

    def to_json(self):
        return {
            "colength": self.colength,
            "colon_colength": self.colon_colength,
            "index_of_reducibility": self.index_of_reducibility,
        }


@dataclass(frozen=True)
class DimensionReport:
    dimension: int
    method: str = "hilbert-polynomial-degree"

    def to_json(self):
        return {"dimension": self.dimension, "method": self.method}


def _require_homogeneous(J: Ideal):
    if not J.is_homogeneous:
        bad = next(g for g in J.gens if not g.is_homogeneous())
        raise ArgumentError(f"length computations need homogeneous ideals; {bad} is not")


def standard_monomial_basis(J: Ideal) -> StandardMonomialBasis:
    st = J.standard_monomials()
    if st is None:
        return StandardMonomialBasis(J, (), False)
    return StandardMonomialBasis(J, tuple(st), True)


def colength(J: Ideal):
    """ℓ(R/J) as an int, or INFINITE when R/J is not Artinian."""
    _require_homogeneous(J)
    st = J.standard_monomials()
    return INFINITE if st is None else len(st)


def is_m_primary(J: Ideal) -> bool:
    return colength(J) != INFINITE


def _require_m_primary(J: Ideal, what="ideal"):
    if colength(J) == INFINITE:
        raise ArgumentError(f"{what} {J} is not m-primary")


def _leading_dimension(ring: RingPresentation) -> int:
    """Largest set of variables none of whose monomials is a leading monomial of b."""
    leads = ring.base_gb().leading_monomials
    supports = [frozenset(i for i, x in enumerate(lm) if x) for lm in leads]
    n = ring.nvars
    best = 0

    def rec(i, chosen):
        nonlocal best
        if len(chosen) + (n - i) <= best:
            return
        if i == n:
            best = max(best, len(chosen))
            return
        trial = chosen | {i}
        if not any(s <= trial for s in supports):
            rec(i + 1, trial)
        rec(i + 1, chosen)

    rec(0, frozenset())
    return best


def krull_dimension(ring: RingPresentation) -> DimensionReport:
    """dim R, read off as the degree of n -> ℓ(R/m^(n+1)).

    The candidate degree comes from the leading ideal of b; the m-adic
    Hilbert-Samuel table is then fitted at that degree, which fails loudly if
    the candidate were wrong.
    """
    def make():
        from .hilbert import fit_hilbert_samuel

        ring.base_gb()  # raises on the unit ideal
        d = _leading_dimension(ring)
        data = fit_hilbert_samuel(ring.maximal_ideal(), degree=d)
        if data.coefficients[0] < 1:
            raise ArgumentError("m-adic fit produced a non-positive multiplicity")
        return DimensionReport(d)

    return ring.cached("dimension", make)


def is_parameter_ideal(q: Ideal) -> bool:
    if not is_m_primary(q):
        return False
    return len(q.gens) == krull_dimension(q.ring).dimension


def redundant_generators(J: Ideal):
    """Generators lying in the ideal of the others (CLI warns about these)."""
    out = []
    for i, g in enumerate(J.gens):
        rest = Ideal(J.ring, J.gens[:i] + J.gens[i + 1:])
        if rest.contains(g):
            out.append(g)
    return out


def contained_in_m_power(J: Ideal, n: int) -> bool:
    if n < 1:
        raise ArgumentError("power of m must be at least 1")
    ring = J.ring
    pending = []
    for g in J.gens:
        if all(sum(e) >= n for e in g._d):
            continue
        pending.append(g)
    if not pending:
        return True
    mn = ideal_power(ring.maximal_ideal(), n)
    return all(mn.contains(g) for g in pending)


def index_of_reducibility(J: Ideal) -> SocleReport:
    """Socle dimension of R/J, via ℓ(R/J) - ℓ(R/(J : m))."""
    _require_m_primary(J)
    colon = colon_by_ideal(J, J.ring.maximal_ideal())
    return SocleReport(J, colength(J), colon, colength(colon))


def reduction_check(q: Ideal, I: Ideal) -> bool:
    """Whether I^2 = qI (q must be contained in I)."""
    if not I.contains_ideal(q):
        raise ArgumentError("reduction check needs q contained in I")
    return ideal_equals(ideal_power(I, 2), ideal_product(q, I))
