"""Report envelopes, JSON encoding and the plain-text renderer."""

from __future__ import annotations

import json
from importlib import resources

from . import __version__

SAFE_INT = 2 ** 53


def json_safe(obj):
    """Copy of ``obj`` with integers beyond 53 bits turned into decimal strings."""
    if isinstance(obj, bool) or obj is None:
        return obj
    if isinstance(obj, int):
        return str(obj) if abs(obj) > SAFE_INT else obj
    if isinstance(obj, float):
        return obj
    if isinstance(obj, dict):
        return {str(k): json_safe(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [json_safe(v) for v in obj]
    return obj


def dumps(doc) -> str:
    return json.dumps(json_safe(doc), indent=2, sort_keys=False) + "\n"


def command_report(echo, result, warnings=(), timing_ms=None, seed=None):
    return {
        "command": echo,
        "result": result,
        "warnings": list(warnings),
        "timing_ms": None if timing_ms is None else round(timing_ms, 3),
        "version": __version__,
        "seed": seed,
    }


def document(reports, seed=None, error=None):
    doc = {"tool": "chern", "version": __version__, "seed": seed, "reports": list(reports)}
    if error is not None:
        doc["error"] = error
    return doc


def error_payload(exc, exit_code):
    out = {"kind": type(exc).__name__, "message": str(exc), "exit_code": exit_code}
    for attr in ("line", "column"):
        v = getattr(exc, attr, None)
        if v is not None:
            out[attr] = v
    expected = getattr(exc, "expected", None)
    if expected:
        out["expected"] = list(expected)
    return out


def load_schema():
    text = resources.files("chern").joinpath("schemas/report.schema.json").read_text()
    return json.loads(text)


def mask_volatile(doc):
    """Blank out version and timing fields so documents compare byte-exactly."""
    if isinstance(doc, dict):
        out = {}
        for k, v in doc.items():
            if k == "version":
                out[k] = "<version>"
            elif k == "timing_ms":
                out[k] = None
            else:
                out[k] = mask_volatile(v)
        return out
    if isinstance(doc, list):
        return [mask_volatile(v) for v in doc]
    return doc


# -- text ------------------------------------------------------------------------------

def _fmt(v):
    if v is None:
        return "-"
    if isinstance(v, bool):
        return "yes" if v else "no"
    if isinstance(v, list):
        return "[" + ", ".join(_fmt(x) for x in v) + "]"
    return str(v)


def _table(rows, header):
    cols = [header] + rows
    widths = [max(len(str(r[i])) for r in cols) for i in range(len(header))]
    lines = ["  ".join(str(c).ljust(w) for c, w in zip(r, widths)).rstrip() for r in cols]
    lines.insert(1, "  ".join("-" * w for w in widths))
    return lines


def _checks_table(checks):
    rows = []
    for c in checks:
        hyp = {True: "met", False: "unmet", None: "unknown"}[c["hypotheses_met"]]
        rows.append([c["id"], _fmt(c["lhs"]), c["relation"], _fmt(c["rhs"]), c["status"], hyp])
    return _table(rows, ["check", "lhs", "rel", "rhs", "status", "hypotheses"])


def render_result(result) -> list:
    lines = []
    for k, v in result.items():
        if k == "checks":
            lines += _checks_table(v)
        elif k == "values" and isinstance(v, list):
            lines.append("values: " + " ".join(f"{n}:{x}" for n, x in v))
        elif k == "reports":
            for sub in v:
                lines.append(f"-- {sub['entry']['id']}")
                lines += ["   " + x for x in render_result(sub)]
        elif k == "expected":
            bad = [f"{n}: expected {e['value']}, computed {_fmt(e['computed'])}"
                   for n, e in v.items() if not e["match"]]
            lines.append(f"expected values: {len(v) - len(bad)}/{len(v)} match")
            lines += ["  MISMATCH " + b for b in bad]
        elif k == "variants":
            for var in v:
                state = "matches" if var["matches"] else "does not match"
                lines.append(f"variant {var['variant']}: {state}")
                if var["error"]:
                    lines.append(f"  error: {var['error']}")
                comp = var["computed"]
                keys = [x for x in comp if not x.startswith("H_I(")]
                lines.append("  " + ", ".join(f"{x}={_fmt(comp[x])}" for x in keys))
        elif k == "entries":
            lines += _table([[e["id"], e["family"], e["unmixed"], _fmt(e["cm_expected"])] for e in v],
                            ["id", "family", "unmixed", "cm_expected"])
        elif isinstance(v, dict):
            lines.append(f"{k}:")
            lines += [f"  {a}: {_fmt(b)}" for a, b in v.items()]
        else:
            lines.append(f"{k}: {_fmt(v)}")
    return lines


def render_text(doc) -> str:
    out = []
    for rep in doc["reports"]:
        out.append(f"> {rep['command']}")
        out += render_result(rep["result"])
        out += [f"warning: {w}" for w in rep["warnings"]]
        out.append("")
    if "error" in doc:
        e = doc["error"]
        out.append(f"error ({e['kind']}): {e['message']}")
    return "\n".join(out).rstrip("\n") + "\n"
