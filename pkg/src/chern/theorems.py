"""Cohen-Macaulay verdicts and per-instance checks of the e₁ / index-of-reducibility relations."""

from __future__ import annotations

import os
import random
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

from .errors import ArgumentError, ChernError, NotStabilized
from .hilbert import fit_hilbert_samuel, fit_irreducible
from .ideal import Ideal, RingPresentation, colon_by_ideal
from .poly import Polynomial
from .quotient import (
    colength,
    contained_in_m_power,
    index_of_reducibility,
    is_parameter_ideal,
    krull_dimension,
    reduction_check,
)

FINITE_FIELD_WARNING = (
    "coefficients lie in a finite field; statements that need an infinite residue "
    "field are only checked heuristically"
)

HOLDS, FAILS, UNAVAILABLE = "holds", "fails", "unavailable"


@dataclass(frozen=True)
class CMReport:
    witness: Ideal
    colength_q: int
    e0_q: int
    is_cm: bool
    cm_type: int | None
    is_gorenstein: bool
    warnings: tuple = ()

    def to_json(self):
        return {
            "witness": [str(g) for g in self.witness.gens],
            "colength_q": self.colength_q,
            "e0_q": self.e0_q,
            "is_cm": self.is_cm,
            "cm_type": self.cm_type,
            "is_gorenstein": self.is_gorenstein,
        }


def _field_warnings(ring: RingPresentation):
    return (FINITE_FIELD_WARNING,) if ring.field.modulus else ()


def _require_parameter(ring: RingPresentation, q: Ideal):
    ring.check(q.ring)
    if not is_parameter_ideal(q):
        d = krull_dimension(ring).dimension
        raise ArgumentError(
            f"{q} is not a parameter ideal ({len(q.gens)} generators, dim R = {d}, "
            f"colength {colength(q)})")


def cohen_macaulay_report(ring: RingPresentation, q: Ideal, ncap=None) -> CMReport:
    """CM test by ℓ(R/q) = e₀(q); the type is 𝒩(q;R) when the test passes."""
    _require_parameter(ring, q)
    lq = colength(q)
    e0 = fit_hilbert_samuel(q, ncap=ncap).coefficients[0]
    is_cm = lq == e0
    r = index_of_reducibility(q).index_of_reducibility if is_cm else None
    return CMReport(q, lq, e0, is_cm, r, is_cm and r == 1, _field_warnings(ring))


# -- verdicts ------------------------------------------------------------------

class Unavailable(Exception):
    """A quantity a check needs could not be computed."""


@dataclass(frozen=True)
class TheoremVerdict:
    id: str
    lhs: int | None
    rhs: int | None
    relation: str
    status: str
    flags: dict
    hypotheses: tuple
    hypotheses_met: bool | None
    statement: str
    reason: str | None = None

    @property
    def holds(self) -> bool | None:
        if self.status == UNAVAILABLE:
            return None
        return self.status == HOLDS

    def to_json(self):
        out = {
            "id": self.id,
            "lhs": self.lhs,
            "rhs": self.rhs,
            "relation": self.relation,
            "holds": self.holds,
            "status": self.status,
            "flags": dict(self.flags),
            "hypotheses": list(self.hypotheses),
            "hypotheses_met": self.hypotheses_met,
            "statement": self.statement,
        }
        if self.reason:
            out["reason"] = self.reason
        return out


_RELATIONS = {"=": lambda a, b: a == b, "<=": lambda a, b: a <= b, ">=": lambda a, b: a >= b}


class _Quantities:
    """Lazily computed invariants of a pair (R, q), with failures remembered."""

    def __init__(self, ring, q, ncap):
        self.ring, self.q, self.ncap = ring, q, ncap
        self._cache = {}

    def get(self, name):
        if name not in self._cache:
            try:
                self._cache[name] = (True, getattr(self, "_" + name)())
            except (NotStabilized, ArgumentError, Unavailable) as exc:
                self._cache[name] = (False, f"{name}: {exc}")
        ok, val = self._cache[name]
        if not ok:
            raise Unavailable(val)
        return val

    def _d(self):
        return krull_dimension(self.ring).dimension

    def _I(self):
        return colon_by_ideal(self.q, self.ring.maximal_ideal())

    def _I_unit(self):
        return self.get("I").is_unit()

    def _len_q(self):
        return colength(self.q)

    def _len_I(self):
        return colength(self.get("I"))

    def _index(self):
        return index_of_reducibility(self.q).index_of_reducibility

    def _hs_q(self):
        return fit_hilbert_samuel(self.q, ncap=self.ncap)

    def _hs_I(self):
        if self.get("I_unit"):
            raise Unavailable("q : m is the unit ideal")
        return fit_hilbert_samuel(self.get("I"), ncap=self.ncap)

    def _f0_q(self):
        return fit_irreducible(self.q, ncap=self.ncap).coefficients[0]

    def _coef(self, which, i):
        c = self.get(which).coefficients
        return c[i] if i < len(c) else 0

    def _e0_q(self):
        return self._coef("hs_q", 0)

    def _e1_q(self):
        return self._coef("hs_q", 1)

    def _e0_I(self):
        return self._coef("hs_I", 0)

    def _e1_I(self):
        return self._coef("hs_I", 1)

    def _delta(self):
        return self.get("e1_I") - self.get("e1_q")

    def _cm(self):
        return self.get("len_q") == self.get("e0_q")

    def _r(self):
        if not self.get("cm"):
            raise Unavailable("r(R) is only computed for Cohen-Macaulay rings")
        return self.get("index")

    def _q_in_m2(self):
        return contained_in_m_power(self.q, 2)

    def _reduction(self):
        if self.get("I_unit"):
            return False
        return reduction_check(self.q, self.get("I"))

    def snapshot(self):
        names = ["d", "len_q", "len_I", "index", "e0_q", "e1_q", "e0_I", "e1_I", "delta",
                 "f0_q", "cm", "r", "q_in_m2", "reduction"]
        out = {}
        for n in names:
            try:
                out[n] = self.get(n)
            except Unavailable:
                out[n] = None
        for key in ("hs_q", "hs_I"):
            try:
                out[key.replace("hs_", "e_")] = list(self.get(key).coefficients)
            except Unavailable:
                out[key.replace("hs_", "e_")] = None
        return out


# id, lhs, relation, rhs, hypotheses, statement
_CHECKS = (
    ("northcott", lambda Q: Q.get("e0_I") - Q.get("len_I"), "<=", lambda Q: Q.get("e1_I"),
     ("cohen-macaulay",), "e0(I) - l(R/I) <= e1(I)"),
    ("goto-nishida", lambda Q: Q.get("e0_I") - Q.get("len_I"), "<=", lambda Q: Q.get("delta"),
     ("reduction",), "e0(I) - l(R/I) <= e1(I) - e1(q)"),
    ("huneke-ooishi", lambda Q: Q.get("e1_I"), "=", lambda Q: Q.get("e0_I") - Q.get("len_I"),
     ("cohen-macaulay", "reduction"), "e1(I) = e0(I) - l(R/I)"),
    ("huneke-ooishi-printed", lambda Q: Q.get("e1_I"), "=",
     lambda Q: Q.get("len_I") - Q.get("e0_q"),
     ("cohen-macaulay", "reduction"), "e1(I) = l(R/I) - e0(q)"),
    ("prop-2.4", lambda Q: Q.get("delta"), "<=", lambda Q: Q.get("f0_q"),
     ("reduction",), "e1(I) - e1(q) <= f0(q)"),
    ("thm-2.2", lambda Q: Q.get("f0_q"), "=", lambda Q: Q.get("e1_I"),
     ("d>=2", "unmixed", "q_in_m2", "cohen-macaulay"), "f0(q) = e1(I)"),
    ("thm-1.1-N-equality", lambda Q: Q.get("index"), "=", lambda Q: Q.get("delta"),
     ("d>=2", "unmixed", "q_in_m2", "cohen-macaulay"), "N(q;R) = e1(I) - e1(q)"),
    ("thm-1.1-N-inequality", lambda Q: Q.get("index"), "<=", lambda Q: Q.get("delta"),
     ("d>=2", "unmixed", "q_in_m2", "cohen-macaulay"), "N(q;R) <= e1(I) - e1(q)"),
    ("thm-3.6", lambda Q: Q.get("delta"), "=", lambda Q: Q.get("index"),
     ("d>=2", "unmixed", "q_in_m2", "cohen-macaulay"), "e1(I) - e1(q) = N(q;R)"),
    ("thm-4.5-r-equality", lambda Q: Q.get("delta"), "=", lambda Q: Q.get("r"),
     ("d>=2", "unmixed", "q_in_m2", "cohen-macaulay"), "e1(I) - e1(q) = r(R)"),
    ("thm-4.5-r-inequality", lambda Q: Q.get("delta"), "<=", lambda Q: Q.get("r"),
     ("d>=2", "unmixed", "q_in_m2", "cohen-macaulay"), "e1(I) - e1(q) <= r(R)"),
    ("thm-4.8", lambda Q: Q.get("delta"), "=", lambda Q: 1,
     ("d>=2", "unmixed", "q_in_m2", "gorenstein"), "e1(I) - e1(q) = 1"),
)

CHECK_IDS = tuple(c[0] for c in _CHECKS)


def _hypothesis_status(Q: _Quantities, name: str, unmixed: str):
    try:
        if name == "cohen-macaulay":
            return Q.get("cm")
        if name == "gorenstein":
            return Q.get("cm") and Q.get("r") == 1
        if name == "reduction":
            return Q.get("reduction")
        if name == "q_in_m2":
            return Q.get("q_in_m2")
        if name == "d>=2":
            return Q.get("d") >= 2
    except Unavailable:
        return None
    if name == "unmixed":
        return {"true": True, "false": False}.get(unmixed)
    raise KeyError(name)


def _flag(Q, name):
    try:
        return Q.get(name)
    except Unavailable:
        return None


@dataclass(frozen=True)
class VerdictReport:
    checks: tuple
    cm: CMReport | None
    values: dict
    flags: dict
    warnings: tuple = ()

    def check(self, cid: str) -> TheoremVerdict:
        for c in self.checks:
            if c.id == cid:
                return c
        raise KeyError(cid)

    def to_json(self):
        return {
            "checks": [c.to_json() for c in self.checks],
            "cm": self.cm.to_json() if self.cm else None,
            "values": dict(self.values),
            "flags": dict(self.flags),
            "warnings": list(self.warnings),
        }


def verify_inequalities(ring: RingPresentation, q: Ideal, unmixed: str = "unknown",
                              ncap=None) -> VerdictReport:
    """Evaluate every check on (R, q) with I = q : m.

    ``unmixed`` is an annotation ("true", "false" or "unknown"); it is never
    computed.  A quantity whose fit does not settle turns the checks that need
    it into ``unavailable`` instead of failing the report.
    """
    if unmixed not in ("true", "false", "unknown"):
        raise ArgumentError("unmixed annotation must be true, false or unknown")
    _require_parameter(ring, q)
    Q = _Quantities(ring, q, ncap)
    flags = {
        "q_in_m2": _flag(Q, "q_in_m2"),
        "reduction_I2_eq_qI": _flag(Q, "reduction"),
        "unmixed": unmixed,
    }
    verdicts = []
    for cid, lhs_f, rel, rhs_f, hyps, text in _CHECKS:
        met = [_hypothesis_status(Q, h, unmixed) for h in hyps]
        hyp_met = False if False in met else (None if None in met else True)
        try:
            lhs, rhs = lhs_f(Q), rhs_f(Q)
        except Unavailable as exc:
            verdicts.append(TheoremVerdict(cid, None, None, rel, UNAVAILABLE, flags, hyps,
                                           hyp_met, text, str(exc)))
            continue
        status = HOLDS if _RELATIONS[rel](lhs, rhs) else FAILS
        verdicts.append(TheoremVerdict(cid, lhs, rhs, rel, status, flags, hyps, hyp_met, text))

    cm = None
    try:
        lq, e0 = Q.get("len_q"), Q.get("e0_q")
        is_cm = lq == e0
        r = Q.get("index") if is_cm else None
        cm = CMReport(q, lq, e0, is_cm, r, is_cm and r == 1, _field_warnings(ring))
    except Unavailable:
        pass
    warnings = list(_field_warnings(ring))
    if unmixed != "true":
        warnings.append(f"unmixedness is '{unmixed}': the d >= 2 characterizations may not apply")
    return VerdictReport(tuple(verdicts), cm, Q.snapshot(), flags, tuple(warnings))


# -- sweeps ----------------------------------------------------------------------

DEFAULT_RETRIES = 20
NONZERO_COEFFS = (-3, -2, -1, 1, 2, 3)


def thread_count() -> int:
    raw = os.environ.get("CHERN_THREADS", "1")
    try:
        return max(1, int(raw))
    except ValueError:
        raise ArgumentError(f"CHERN_THREADS must be an integer, got {raw!r}") from None


def _monomials_of_degree(weights, k):
    out = []

    def rec(i, left, cur):
        if i == len(weights) - 1:
            if left % weights[i] == 0:
                out.append(tuple(cur + [left // weights[i]]))
            return
        for a in range(left // weights[i] + 1):
            rec(i + 1, left - a * weights[i], cur + [a])

    if weights:
        rec(0, k, [])
    return out


def random_form(ring: RingPresentation, k: int, rng: random.Random):
    amb = ring.ambient
    monos = _monomials_of_degree(ring.weights, k)
    if not monos:
        raise ArgumentError(f"no monomials of degree {k}")
    if amb.modulus:
        d = {e: rng.randrange(1, amb.modulus) for e in monos}
    else:
        d = {e: rng.choice(NONZERO_COEFFS) for e in monos}
    return Polynomial(amb, {e: amb.field(c) for e, c in d.items()})


def random_parameter_ideal(ring: RingPresentation, k: int, rng: random.Random,
                           retries: int = DEFAULT_RETRIES):
    """d random forms of degree k that form a parameter ideal, or None after ``retries`` draws."""
    d = krull_dimension(ring).dimension
    for _ in range(retries):
        q = ring.ideal(*[random_form(ring, k, rng) for _ in range(d)])
        if len(q.gens) == d and is_parameter_ideal(q):
            return q
    return None


@dataclass
class BatchItem:
    entry: str
    q: tuple
    report: VerdictReport | None = None
    skipped: str | None = None

    def to_json(self):
        out = {"entry": self.entry, "q": list(self.q)}
        if self.skipped:
            out["skipped"] = self.skipped
        else:
            out.update(self.report.to_json())
        return out


@dataclass
class BatchReport:
    strategy: str
    seed: int | None
    items: list = field(default_factory=list)

    def counts(self):
        c = {HOLDS: 0, FAILS: 0, UNAVAILABLE: 0, "skipped": 0}
        for it in self.items:
            if it.skipped:
                c["skipped"] += 1
                continue
            for v in it.report.checks:
                c[v.status] += 1
        return c

    def per_check(self):
        out = {cid: {HOLDS: 0, FAILS: 0, UNAVAILABLE: 0} for cid in CHECK_IDS}
        for it in self.items:
            if it.report:
                for v in it.report.checks:
                    out[v.id][v.status] += 1
        return out

    def to_json(self):
        return {"strategy": self.strategy, "seed": self.seed, "counts": self.counts(),
                "per_check": self.per_check(), "items": [it.to_json() for it in self.items]}


def _tasks(entries, strategy, k, seed, samples):
    tasks = []
    for entry in entries:
        if strategy == "given":
            tasks.append((entry, 0, None))
        elif strategy in ("random-forms", "powers"):
            for i in range(samples):
                tasks.append((entry, i, random.Random(f"{seed}:{entry.id}:{k}:{i}")))
        else:
            raise ArgumentError(f"unknown parameter-ideal strategy {strategy!r}")
    return tasks


def _run_task(entry, i, rng, strategy, k, ncap):
    ring = entry.ring()
    label = entry.id if strategy == "given" else f"{entry.id}#{i}"
    if strategy == "given":
        q = entry.parameter_ideal()
    elif strategy == "powers":
        q = ring.ideal(*[g ** k for g in entry.parameter_ideal().gens])
    else:
        try:
            q = random_parameter_ideal(ring, k, rng)
        except ArgumentError as exc:
            return BatchItem(label, (), skipped=str(exc))
        if q is None:
            return BatchItem(label, (), skipped=f"no parameter ideal in {DEFAULT_RETRIES} draws")
    gens = tuple(str(g) for g in q.gens)
    try:
        rep = verify_inequalities(ring, q, entry.unmixed, ncap=ncap)
    except ChernError as exc:
        return BatchItem(label, gens, skipped=str(exc))
    return BatchItem(label, gens, rep)


def batch_verify(entries, strategy="given", k=2, seed=0, samples=1, ncap=None,
                 threads: int | None = None) -> BatchReport:
    """Run the verdict report over many (entry, q) pairs; results are sorted by entry label."""
    entries = list(entries)
    if not entries:
        raise ArgumentError("batch selector matched no corpus entries")
    tasks = _tasks(entries, strategy, k, seed, samples)
    n = thread_count() if threads is None else threads
    run = lambda t: _run_task(*t, strategy, k, ncap)  # noqa: E731
    if n > 1:
        with ThreadPoolExecutor(max_workers=n) as pool:
            items = list(pool.map(run, tasks))
    else:
        items = [run(t) for t in tasks]
    items.sort(key=lambda it: (it.entry.split("#")[0], int(it.entry.split("#")[1]) if "#" in it.entry else 0))
    return BatchReport(strategy, None if strategy == "given" else seed, items)
