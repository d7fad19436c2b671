"""Command dispatch: each command maps a session and arguments to a JSON-ready payload."""

from __future__ import annotations

from .errors import ArgumentError, ChernError, NotStabilized
from .hilbert import (
    IRREDUCIBLE,
    fit_binomial_polynomial,
    fit_hilbert_samuel,
    fit_irreducible,
    hilbert_samuel_table,
    irreducible_table,
)
from .poly import format_polynomial
from .quotient import (
    INFINITE,
    colength,
    index_of_reducibility,
    krull_dimension,
    redundant_generators,
)
from .theorems import cohen_macaulay_report, verify_inequalities


def _length(x):
    return "infinite" if x == INFINITE else x


def _gens(J):
    return [format_polynomial(g) for g in J.gens]


def _redundancy_warnings(J):
    extra = redundant_generators(J)
    return [f"generator {format_polynomial(g)} lies in the ideal of the others" for g in extra]


def cmd_gb(session, cmd, J):
    gb = J.gb()
    return {"ideal": cmd.args[0], "order": session.order, "reduced": gb.reduced,
            "elements": [format_polynomial(g) for g in gb.elements]}


def cmd_colength(session, cmd, J):
    return {"ideal": cmd.args[0], "colength": _length(colength(J))}


def cmd_dim(session, cmd, R):
    return {"ring": R.name, **krull_dimension(R).to_json()}


def cmd_socle(session, cmd, J):
    rep = index_of_reducibility(J)
    R = J.ring
    colon = [format_polynomial(g) for g in rep.colon.gb().elements
             if not R.base_gb().contains(g)]
    return {"ideal": cmd.args[0], **rep.to_json(), "colon": colon}


def cmd_indexred(session, cmd, J):
    return {"ideal": cmd.args[0], **index_of_reducibility(J).to_json()}


def cmd_hilbert(session, cmd, J):
    kind = cmd.flag("kind", "hilbert-samuel")
    if kind not in ("hilbert-samuel", IRREDUCIBLE):
        raise ArgumentError(f"unknown table kind {kind!r}")
    nmax = cmd.flag("nmax")
    if nmax is None:
        fit = fit_irreducible(J, session.ncap) if kind == IRREDUCIBLE else fit_hilbert_samuel(J, ncap=session.ncap)
        return {"ideal": cmd.args[0], **fit.to_json(), "warnings": list(fit.warnings)}
    try:
        n = int(nmax)
    except ValueError:
        raise ArgumentError(f"--nmax needs an integer, got {nmax!r}") from None
    if kind == IRREDUCIBLE:
        table = irreducible_table(J, n, session.ncap)
        s = krull_dimension(J.ring).dimension - 1
    else:
        table = hilbert_samuel_table(J, n, session.ncap)
        s = krull_dimension(J.ring).dimension
    out = {"ideal": cmd.args[0], **table.to_json()}
    try:
        fit = fit_binomial_polynomial(table, s)
        out.update(degree=fit.degree, coefficients=list(fit.coefficients), postulation=fit.postulation)
    except NotStabilized as exc:
        out.update(degree=s, coefficients=None, postulation=None, fit_error=str(exc))
    return out


def cmd_coeffs(session, cmd, J):
    fit = fit_hilbert_samuel(J, ncap=session.ncap)
    return {"ideal": cmd.args[0], "degree": fit.degree, "coefficients": list(fit.coefficients),
            "postulation": fit.postulation}


def cmd_chern(session, cmd, J):
    c = fit_hilbert_samuel(J, ncap=session.ncap).coefficients
    return {"ideal": cmd.args[0], "e1": c[1] if len(c) > 1 else 0}


def cmd_f0(session, cmd, J):
    fit = fit_irreducible(J, session.ncap)
    return {"ideal": cmd.args[0], "f0": fit.coefficients[0], "degree": fit.degree,
            "warnings": list(fit.warnings)}


def cmd_cmtest(session, cmd, J):
    rep = cohen_macaulay_report(J.ring, J, ncap=session.ncap)
    return {"ideal": cmd.args[0], **rep.to_json(), "warnings": list(rep.warnings)}


def cmd_verify(session, cmd, J):
    unmixed = cmd.flag("unmixed", "unknown")
    rep = verify_inequalities(J.ring, J, unmixed, ncap=session.ncap)
    return {"ideal": cmd.args[0], **rep.to_json()}


def corpus_list():
    from .corpus import entry_ids, standard_entries

    out = [e.summary() for e in standard_entries()]
    for eid in entry_ids():
        if eid.startswith("goto-sakurai-"):
            out.append({"id": eid, "family": "goto-sakurai",
                        "description": "Goto-Sakurai ring (matching variant, else x_m-squared)",
                        "unmixed": "unknown", "cm_expected": False})
    return {"entries": out}


def corpus_report(entry, ncap=None):
    """Values, expected-value comparison, verdicts and (Goto-Sakurai) both variants."""
    from .corpus import compare_expected, entry_values, goto_sakurai_variants

    out = {"entry": entry.summary()}
    try:
        vals = entry_values(entry, ncap)
    except ChernError as exc:
        vals = {"error": str(exc)}
    rep = None
    try:
        rep = verify_inequalities(entry.ring(), entry.parameter_ideal(), entry.unmixed, ncap=ncap)
    except ArgumentError as exc:
        out["verify_error"] = str(exc)
    if rep is not None:
        for k in ("f0_q", "cm", "r", "q_in_m2", "reduction"):
            vals[k] = rep.values.get(k)
    vals["e1_q"] = vals.get("e1_q")
    vals["e1_I"] = vals.get("e1_I")
    out["values"] = vals
    bad = compare_expected(entry, vals)
    out["expected"] = {
        k: {"value": ex.value, "provenance": ex.provenance, "computed": vals.get(k),
            "match": k not in bad}
        for k, ex in entry.expected.items()
    }
    out["all_expected_match"] = not bad
    if rep is not None:
        out["checks"] = [c.to_json() for c in rep.checks]
        out["cm"] = rep.cm.to_json() if rep.cm else None
        out["warnings"] = list(rep.warnings)
    if entry.family == "goto-sakurai":
        m, d = entry.params["m"], entry.params["d"]
        out["variants"] = [v.to_json() for v in goto_sakurai_variants(m, d, ncap)]
        out["matching_variant"] = next((v.variant for v in goto_sakurai_variants(m, d, ncap)
                                        if v.matches), None)
    return out


def cmd_corpus(session, cmd, _):
    from .corpus import all_entries, get_entry

    if cmd.args[0] == "list":
        return corpus_list()
    ncap = session.ncap if session else None
    if cmd.has_flag("all"):
        return {"reports": [corpus_report(e, ncap) for e in sorted(all_entries(), key=lambda e: e.id)]}
    return corpus_report(get_entry(cmd.args[1]), ncap)


_DISPATCH = {
    "gb": cmd_gb,
    "colength": cmd_colength,
    "dim": cmd_dim,
    "socle": cmd_socle,
    "indexred": cmd_indexred,
    "hilbert": cmd_hilbert,
    "coeffs": cmd_coeffs,
    "chern": cmd_chern,
    "f0": cmd_f0,
    "cmtest": cmd_cmtest,
    "verify": cmd_verify,
    "corpus": cmd_corpus,
}


def run_command(cmd, session):
    fn = _DISPATCH[cmd.name]
    if cmd.name == "corpus":
        return fn(session, cmd, None), []
    if cmd.name == "dim":
        return fn(session, cmd, session.rings[cmd.ring]), []
    J = session.ideals[cmd.args[0]]
    warnings = []
    if cmd.name in ("cmtest", "verify"):
        warnings = _redundancy_warnings(J)
    return fn(session, cmd, J), warnings
