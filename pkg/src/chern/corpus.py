"""Built-in example rings with designated parameter ideals and curated annotations."""

from __future__ import annotations

import dataclasses
import threading
import warnings
from dataclasses import dataclass, field
from math import comb

from .errors import ArgumentError
from .ideal import RingPresentation
from .scalars import QQ, Fp

GS_VARIANTS = ("as-printed", "x_m-squared")
GS_MAX_M = 4
GS_NMAX = 6


@dataclass(frozen=True)
class Expected:
    value: int
    provenance: str  # "PUBLISHED" or "DERIVED"


@dataclass(eq=False)
class CorpusEntry:
    id: str
    names: tuple
    relations: tuple
    q: tuple
    unmixed: str
    cm_expected: bool
    description: str = ""
    depth_note: str = ""
    weights: tuple | None = None
    field_name: str = "QQ"
    expected: dict = field(default_factory=dict)
    family: str = "standard"
    params: dict = field(default_factory=dict)

    def __post_init__(self):
        self._lock = threading.RLock()
        self._ring = None
        self._q = None
        self._I = None

    @property
    def field(self):
        if self.field_name == "QQ":
            return QQ
        return Fp(int(self.field_name.split()[1]))

    def ring(self) -> RingPresentation:
        with self._lock:
            if self._ring is None:
                from .parsing import parse_polynomial
                from .poly import PolyRing

                amb = PolyRing(self.field, self.names, weights=self.weights)
                rels = [parse_polynomial(r, amb) for r in self.relations]
                self._ring = RingPresentation(self.field, self.names, rels, weights=self.weights,
                                              name=self.id)
            return self._ring

    def parameter_ideal(self):
        R = self.ring()
        with self._lock:
            if self._q is None:
                self._q = R.ideal(*[R.ambient.parse(g) for g in self.q], homogeneous=True)
            return self._q

    def socle_ideal(self):
        """I = q : m, computed once per entry."""
        from .ideal import colon_by_ideal

        q = self.parameter_ideal()
        with self._lock:
            if self._I is None:
                self._I = colon_by_ideal(q, self.ring().maximal_ideal())
            return self._I

    def over_field(self, field_name: str) -> "CorpusEntry":
        """The same entry over another coefficient field (e.g. "Fp 32003")."""
        if field_name == self.field_name:
            return self
        return dataclasses.replace(self, field_name=field_name)

    def to_script(self, commands=("verify",)) -> str:
        """The entry in the script format read by ``chern run``."""
        ring = f"ring R = {self.field_name}[{', '.join(self.names)}]"
        if self.relations:
            ring += " / (" + ", ".join(self.relations) + ")"
        if self.weights and any(w != 1 for w in self.weights):
            ring += " weights (" + ", ".join(map(str, self.weights)) + ")"
        lines = [f"# corpus entry {self.id}"]
        if self.description:
            lines.append(f"# {self.description}")
        lines += [ring + ";", "ideal q = (" + ", ".join(self.q) + ");"]
        for c in commands:
            lines.append(f"{c} q --unmixed {self.unmixed};" if c == "verify" else f"{c} q;")
        return "\n".join(lines) + "\n"

    def summary(self):
        return {
            "id": self.id,
            "family": self.family,
            "description": self.description,
            "unmixed": self.unmixed,
            "cm_expected": self.cm_expected,
            "field": self.field_name,
        }


# -- Goto-Sakurai family ------------------------------------------------------------

def goto_sakurai_expected(m: int, d: int) -> dict:
    ex = {
        "e0_q": 2 * m,
        "e1_q": -1,
        "e1_I": m - 2,
        "index_of_reducibility": m - 1,
        "colength_q": 2 * m + 1,
        "colength_I": m + 2,
    }
    for i in range(2, d + 1):
        ex[f"e{i}_q"] = 0
    for n in range(GS_NMAX + 1):
        ex[f"H_I({n})"] = 2 * m * comb(n + d, d) - (m - 2) * comb(n + d - 1, d - 1)
    return {k: Expected(v, "PUBLISHED") for k, v in ex.items()}


def build_goto_sakurai(m: int, d: int, variant: str = "x_m-squared", allow_large=False) -> CorpusEntry:
    """k[X_1..X_m, V, Z_1..Z_d] / b with q = (Z_1..Z_d).

    b = (X_1..X_{m-1})^2 + (g) + (X_i V) + (V^2 - sum_{i<=d} X_i Z_i), where g is the
    literal X_2^m for ``as-printed`` and X_m^2 for ``x_m-squared``.
    """
    if variant not in GS_VARIANTS:
        raise ArgumentError(f"unknown Goto-Sakurai variant {variant!r}; use one of {GS_VARIANTS}")
    if not (isinstance(m, int) and isinstance(d, int)) or not 2 <= d <= m:
        raise ArgumentError(f"need integers 2 <= d <= m, got m={m}, d={d}")
    if m > GS_MAX_M:
        if not allow_large:
            raise ArgumentError(f"m = {m} exceeds the desk-scale cap {GS_MAX_M}")
        warnings.warn(f"Goto-Sakurai ring with m = {m} beyond the desk-scale cap", RuntimeWarning)
    X = [f"x{i}" for i in range(1, m + 1)]
    Z = [f"z{i}" for i in range(1, d + 1)]
    rels = [f"{X[i]}*{X[j]}" for i in range(m - 1) for j in range(i, m - 1)]
    rels.append(f"x2^{m}" if variant == "as-printed" else f"x{m}^2")
    rels += [f"{x}*v" for x in X]
    rels.append("v^2 - " + " - ".join(f"x{i}*z{i}" for i in range(1, d + 1)))
    return CorpusEntry(
        id=f"goto-sakurai-{m}-{d}" + ("-as-printed" if variant == "as-printed" else ""),
        names=tuple(X + ["v"] + Z),
        relations=tuple(rels),
        q=tuple(Z),
        unmixed="unknown",
        cm_expected=False,
        description=f"Goto-Sakurai ring, m={m}, d={d}, variant {variant}",
        depth_note="depth d-1 claimed, not computed",
        expected=goto_sakurai_expected(m, d),
        family="goto-sakurai",
        params={"m": m, "d": d, "variant": variant},
    )


@dataclass(frozen=True)
class VariantCheck:
    variant: str
    computed: dict
    mismatches: dict  # name -> (expected, computed)
    error: str | None = None

    @property
    def matches(self) -> bool:
        return self.error is None and not self.mismatches

    def to_json(self):
        return {
            "variant": self.variant,
            "matches": self.matches,
            "computed": dict(self.computed),
            "mismatches": {k: {"expected": a, "computed": b} for k, (a, b) in self.mismatches.items()},
            "error": self.error,
        }


def entry_values(entry: CorpusEntry, ncap=None) -> dict:
    """The named quantities an entry's expected map refers to, computed fresh."""
    from .hilbert import fit_hilbert_samuel, hilbert_samuel_value
    from .quotient import INFINITE, colength, index_of_reducibility

    q = entry.parameter_ideal()
    out = {"colength_q": colength(q)}
    if out["colength_q"] == INFINITE:
        out["colength_q"] = "infinite"
        return out
    I = entry.socle_ideal()
    out["colength_I"] = colength(I)
    out["index_of_reducibility"] = index_of_reducibility(q).index_of_reducibility
    eq = fit_hilbert_samuel(q, ncap=ncap).coefficients
    for i, c in enumerate(eq):
        out[f"e{i}_q"] = c
    if not I.is_unit():
        eI = fit_hilbert_samuel(I, ncap=ncap).coefficients
        for i, c in enumerate(eI):
            out[f"e{i}_I"] = c
        for n in range(GS_NMAX + 1):
            out[f"H_I({n})"] = hilbert_samuel_value(I, n)
    return out


def compare_expected(entry: CorpusEntry, computed: dict) -> dict:
    bad = {}
    for k, ex in entry.expected.items():
        got = computed.get(k)
        if got != ex.value:
            bad[k] = (ex.value, got)
    return bad


def validate_variant(m: int, d: int, variant: str, ncap=None) -> VariantCheck:
    from .errors import ChernError

    entry = build_goto_sakurai(m, d, variant)
    try:
        vals = entry_values(entry, ncap)
    except ChernError as exc:
        return VariantCheck(variant, {}, {}, str(exc))
    return VariantCheck(variant, vals, compare_expected(entry, vals))


_variant_cache: dict = {}
_variant_lock = threading.Lock()


def goto_sakurai_variants(m: int, d: int, ncap=None):
    """Both variants' checks against the expected values, cached per (m, d)."""
    key = (m, d, ncap)
    with _variant_lock:
        hit = _variant_cache.get(key)
    if hit is None:
        hit = tuple(validate_variant(m, d, v, ncap) for v in GS_VARIANTS)
        with _variant_lock:
            hit = _variant_cache.setdefault(key, hit)
    return hit


def matching_variant(m: int, d: int, ncap=None):
    """Name of the first variant whose computed values all match, or None."""
    for chk in goto_sakurai_variants(m, d, ncap):
        if chk.matches:
            return chk.variant
    return None


def default_goto_sakurai(m: int, d: int) -> CorpusEntry:
    """The shipped Goto-Sakurai entry: the matching variant if any, else x_m-squared.

    At m = 2 the variants coincide and the entry is the same ring either way.
    The as-printed variant has a free variable x_m for m >= 3, so it is not
    the default when nothing matches.
    """
    v = matching_variant(m, d) or "x_m-squared"
    return build_goto_sakurai(m, d, v)


# -- standard entries --------------------------------------------------------------

def _d(**kw):
    return {k: Expected(v, "DERIVED") for k, v in kw.items()}


def standard_entries():
    E = CorpusEntry
    return [
        E("regular-2-m", ("x", "y"), (), ("x", "y"), "true", True,
          "k[x,y], q = m", expected=_d(colength_q=1, e0_q=1, index_of_reducibility=1)),
        E("regular-2-x2y2", ("x", "y"), (), ("x^2", "y^2"), "true", True,
          "k[x,y], q = (x^2, y^2)",
          expected=_d(colength_q=4, e0_q=4, e1_q=0, colength_I=3, e1_I=1, index_of_reducibility=1)),
        E("regular-2-x3y2", ("x", "y"), (), ("x^3", "y^2"), "true", True,
          "k[x,y], q = (x^3, y^2)",
          expected=_d(colength_q=6, e0_q=6, e1_q=0, colength_I=5, e1_I=1, index_of_reducibility=1)),
        E("regular-3-x2y2z2", ("x", "y", "z"), (), ("x^2", "y^2", "z^2"), "true", True,
          "k[x,y,z], q = (x^2, y^2, z^2)",
          expected=_d(colength_q=8, e0_q=8, e1_q=0, colength_I=7, e1_I=1, index_of_reducibility=1)),
        E("node", ("x", "y"), ("x*y",), ("x + y",), "true", True,
          "k[x,y]/(xy), q = (x+y)",
          expected=_d(colength_q=2, e0_q=2, e1_q=0, e1_I=1, index_of_reducibility=1)),
        E("node-sq", ("x", "y"), ("x*y",), ("x^2 + y^2",), "true", True,
          "k[x,y]/(xy), q = (x^2+y^2)", expected=_d(colength_q=4, e0_q=4)),
        E("quadric-yz", ("x", "y", "z"), ("x^2 + y^2 + z^2",), ("y", "z"), "true", True,
          "k[x,y,z]/(x^2+y^2+z^2), q = (y, z)", expected=_d(colength_q=2, e0_q=2)),
        E("quadric-y2z2", ("x", "y", "z"), ("x^2 + y^2 + z^2",), ("y^2", "z^2"), "true", True,
          "k[x,y,z]/(x^2+y^2+z^2), q = (y^2, z^2)",
          expected=_d(colength_q=8, e0_q=8, e1_q=0, index_of_reducibility=1)),
        E("t345-x", ("x", "y", "z"), ("y^2 - x*z", "z^2 - x^2*y", "y*z - x^3"), ("x",), "true", True,
          "k[t^3,t^4,t^5] with x,y,z = t^3,t^4,t^5, q = (x)", weights=(3, 4, 5),
          expected=_d(colength_q=3, e0_q=3, colength_I=1, index_of_reducibility=2)),
        E("t345-x2", ("x", "y", "z"), ("y^2 - x*z", "z^2 - x^2*y", "y*z - x^3"), ("x^2",), "true",
          True, "k[t^3,t^4,t^5], q = (x^2)", weights=(3, 4, 5),
          expected=_d(colength_q=6, e0_q=6, index_of_reducibility=2)),
        E("cubic-cone-ad", ("a", "b", "c", "d"), ("a*c - b^2", "b*d - c^2", "a*d - b*c"), ("a", "d"),
          "true", True, "cone over the twisted cubic, q = (a, d)",
          expected=_d(colength_q=3, e0_q=3, index_of_reducibility=2)),
        E("cubic-cone-a2d2", ("a", "b", "c", "d"), ("a*c - b^2", "b*d - c^2", "a*d - b*c"),
          ("a^2", "d^2"), "true", True, "cone over the twisted cubic, q = (a^2, d^2)",
          expected=_d(colength_q=12, e0_q=12, e1_q=0, index_of_reducibility=2)),
        E("embedded-point", ("x", "y"), ("x^2", "x*y"), ("y",), "false", False,
          "k[x,y]/(x^2, xy), q = (y); embedded prime at m", depth_note="depth 0",
          expected=_d(colength_q=2, e0_q=1)),
        E("embedded-point-y2", ("x", "y"), ("x^2", "x*y"), ("y^2",), "false", False,
          "k[x,y]/(x^2, xy), q = (y^2)", depth_note="depth 0", expected=_d(colength_q=3, e0_q=2)),
    ]


def goto_sakurai_entries():
    return [default_goto_sakurai(m, d) for m, d in ((2, 2), (3, 2))]


def all_entries(include_goto_sakurai=True):
    out = standard_entries()
    if include_goto_sakurai:
        out += goto_sakurai_entries()
    return out


def entry_ids():
    return [e.id for e in standard_entries()] + [f"goto-sakurai-{m}-{d}" for m, d in ((2, 2), (3, 2))]


def get_entry(entry_id: str) -> CorpusEntry:
    for e in standard_entries():
        if e.id == entry_id:
            return e
    if entry_id.startswith("goto-sakurai-"):
        parts = entry_id[len("goto-sakurai-"):].split("-", 2)
        try:
            m, d = int(parts[0]), int(parts[1])
        except (IndexError, ValueError):
            raise ArgumentError(f"malformed Goto-Sakurai id {entry_id!r}") from None
        rest = parts[2] if len(parts) > 2 else ""
        if rest == "as-printed":
            return build_goto_sakurai(m, d, "as-printed")
        if rest == "x_m-squared":
            return build_goto_sakurai(m, d, "x_m-squared")
        if rest:
            raise ArgumentError(f"unknown Goto-Sakurai variant suffix {rest!r}")
        return default_goto_sakurai(m, d)
    raise ArgumentError(f"no corpus entry {entry_id!r}")


def select(selector: str):
    """Entries by family name ("all", "standard", "cm", "goto-sakurai") or comma-separated ids."""
    if selector == "all":
        return all_entries()
    if selector == "standard":
        return standard_entries()
    if selector == "cm":
        return [e for e in standard_entries() if e.cm_expected]
    if selector == "goto-sakurai":
        return goto_sakurai_entries()
    return [get_entry(s.strip()) for s in selector.split(",") if s.strip()]
