"""The batch script language: parsing, printing and execution.

    field QQ;                       # or: field Fp 32003;
    ring R = QQ[x, y] / (x*y);      # fieldref: QQ | Fp p | k (the declared field)
    ring S = k[x, y, z] / (y^2 - x*z, z^2 - x^2*y, y*z - x^3) weights (3, 4, 5);
    ideal q = (x + y);
    chern q;
    verify q --unmixed true;

Every statement ends with ``;``.  Ideals belong to the ring in scope when they
are declared.  Commands take ideal names and ``--flag value`` options.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field

from .errors import ArgumentError, ParseError, SemanticError
from .parsing import RESERVED_NAMES, PolyParser, Token, TokenStream, tokenize
from .poly import Polynomial, PolyRing, format_polynomial
from .scalars import QQ, Fp

KEYWORDS = ("field", "ring", "ideal")

# command -> (number of ideal arguments, allowed flags)
COMMANDS = {
    "gb": (1, ()),
    "colength": (1, ()),
    "dim": (0, ()),
    "socle": (1, ()),
    "indexred": (1, ()),
    "hilbert": (1, ("nmax", "kind")),
    "coeffs": (1, ()),
    "chern": (1, ()),
    "f0": (1, ()),
    "cmtest": (1, ()),
    "verify": (1, ("unmixed",)),
    "corpus": (None, ()),
}


@dataclass(frozen=True)
class FieldDecl:
    modulus: int | None


@dataclass(frozen=True)
class RingDecl:
    name: str
    fieldref: str  # "QQ", "Fp <p>" or "k"
    variables: tuple
    relations: tuple  # Polynomial, over unit weights until bound
    weights: tuple | None


@dataclass(frozen=True)
class IdealDecl:
    name: str
    ring: str
    gens: tuple


@dataclass(frozen=True)
class Command:
    name: str
    args: tuple
    flags: tuple  # ((flag, value), ...)
    ring: str | None

    def flag(self, name, default=None):
        for k, v in self.flags:
            if k == name:
                return v
        return default

    def has_flag(self, name) -> bool:
        return any(k == name for k, _ in self.flags)

    def echo(self) -> str:
        parts = [self.name, *self.args]
        for k, v in self.flags:
            parts += [f"--{k}", v] if v is not None else [f"--{k}"]
        return " ".join(parts)


@dataclass(frozen=True)
class SessionScript:
    statements: tuple

    @property
    def rings(self):
        return [s for s in self.statements if isinstance(s, RingDecl)]

    @property
    def ideals(self):
        return [s for s in self.statements if isinstance(s, IdealDecl)]

    @property
    def commands(self):
        return [s for s in self.statements if isinstance(s, Command)]


# -- parsing -----------------------------------------------------------------------

def _field_of(fieldref: str, declared):
    if fieldref == "QQ":
        return QQ
    if fieldref.startswith("Fp "):
        return Fp(int(fieldref[3:]))
    return declared


class _ScriptParser:
    def __init__(self, text):
        self.s = TokenStream(tokenize(text))
        self.field = None  # declared field object
        self.field_ref = None
        self.rings = {}  # name -> (PolyRing, decl)
        self.ideals = {}
        self.current = None
        self.names = set()

    def error(self, msg, tok: Token):
        return SemanticError(msg, tok.line, tok.col)

    def claim(self, name_tok: Token):
        name = name_tok.text
        if name in RESERVED_NAMES:
            raise self.error(f"name {name!r} is reserved", name_tok)
        if name in self.names:
            raise self.error(f"duplicate name {name!r}", name_tok)
        self.names.add(name)

    def parse(self) -> SessionScript:
        out = []
        s = self.s
        while not s.at("eof"):
            out.append(self.statement())
            s.expect("op", ";", what="';'")
        if not out:
            t = s.peek()
            raise ParseError("empty script", t.line, t.col, expected=["statement"])
        return SessionScript(tuple(out))

    def statement(self):
        s = self.s
        t = s.peek()
        if t.kind != "name":
            raise ParseError(f"unexpected {t.text or 'end of input'!r}", t.line, t.col,
                             expected=["field", "ring", "ideal", "command"])
        if t.text == "field":
            s.next()
            return self.field_decl()
        if t.text == "ring":
            s.next()
            return self.ring_decl()
        if t.text == "ideal":
            s.next()
            return self.ideal_decl(t)
        if t.text in COMMANDS:
            s.next()
            return self.command(t)
        raise ParseError(f"unknown statement {t.text!r}", t.line, t.col,
                         expected=["field", "ring", "ideal", "command"])

    def fieldref(self, allow_k):
        s = self.s
        t = s.expect("name", what="field")
        if t.text == "QQ":
            return "QQ", QQ
        if t.text == "Fp":
            p = s.expect("int", what="prime modulus")
            try:
                F = Fp(int(p.text))
            except ArgumentError as exc:
                raise self.error(str(exc), p) from None
            return f"Fp {int(p.text)}", F
        if allow_k and t.text == "k":
            if self.field is None:
                raise self.error("no field in scope for 'k'", t)
            return "k", self.field
        raise ParseError(f"unexpected {t.text!r}", t.line, t.col,
                         expected=["QQ", "Fp"] + (["k"] if allow_k else []))

    def field_decl(self):
        ref, F = self.fieldref(allow_k=False)
        self.field, self.field_ref = F, ref
        return FieldDecl(F.modulus)

    def ring_decl(self):
        s = self.s
        name_tok = s.expect("name", what="ring name")
        self.claim(name_tok)
        s.expect("op", "=", what="'='")
        ref, F = self.fieldref(allow_k=True)
        s.expect("op", "[", what="'['")
        vars_ = []
        while True:
            v = s.peek()
            if v.kind == "reserved":
                raise self.error(f"name {v.text!r} is reserved", v)
            v = s.expect("name", what="variable")
            if v.text in vars_:
                raise self.error(f"duplicate variable {v.text!r}", v)
            vars_.append(v.text)
            if not s.accept("op", ","):
                break
        s.expect("op", "]", what="']'")
        amb = PolyRing(F, vars_)
        rels = []
        if s.accept("op", "/"):
            s.expect("op", "(", what="'('")
            if not s.at("op", ")"):
                rels.append((s.peek(), PolyParser(s, amb).expr()))
                while s.accept("op", ","):
                    rels.append((s.peek(), PolyParser(s, amb).expr()))
            s.expect("op", ")", what="')'")
        weights = None
        if s.at("name", "weights"):
            wt = s.next()
            weights = self.intlist()
            if len(weights) != len(vars_):
                raise self.error(f"{len(weights)} weights for {len(vars_)} variables", wt)
            if any(w <= 0 for w in weights):
                raise self.error("weights must be positive", wt)
        ring = PolyRing(F, vars_, weights=weights)
        out = []
        for tok, f in rels:
            g = Polynomial(ring, f._d)
            if g.is_zero():
                continue
            if not g.is_homogeneous():
                raise self.error(f"inhomogeneous relation {format_polynomial(g)}", tok)
            out.append(g)
        decl = RingDecl(name_tok.text, ref, tuple(vars_), tuple(out), weights)
        self.rings[decl.name] = (ring, decl)
        self.current = decl.name
        return decl

    def intlist(self):
        s = self.s
        wrapped = bool(s.accept("op", "("))
        vals = [int(s.expect("int", what="integer").text)]
        while s.accept("op", ","):
            vals.append(int(s.expect("int", what="integer").text))
        if wrapped:
            s.expect("op", ")", what="')'")
        return tuple(vals)

    def ideal_decl(self, kw: Token):
        s = self.s
        if self.current is None:
            raise self.error("no ring in scope", kw)
        name_tok = s.expect("name", what="ideal name")
        self.claim(name_tok)
        s.expect("op", "=", what="'='")
        ring, _ = self.rings[self.current]
        s.expect("op", "(", what="'('")
        gens = []
        if not s.at("op", ")"):
            gens.append(PolyParser(s, ring).expr())
            while s.accept("op", ","):
                gens.append(PolyParser(s, ring).expr())
        s.expect("op", ")", what="')'")
        decl = IdealDecl(name_tok.text, self.current, tuple(gens))
        self.ideals[decl.name] = decl
        return decl

    def command(self, kw: Token):
        s = self.s
        nargs, allowed = COMMANDS[kw.text]
        args = []
        flags = []
        while not s.at("op", ";") and not s.at("eof"):
            t = s.next()
            if t.kind == "flag":
                key = t.text[2:]
                if kw.text != "corpus" and key not in allowed:
                    raise self.error(f"unknown option {t.text} for {kw.text}", t)
                val = None
                if s.peek().kind in ("name", "int"):
                    val = s.next().text
                flags.append((key, val))
            elif t.kind in ("name", "int") or (t.kind == "op" and t.text == "-"):
                args.append(t.text)
            else:
                raise ParseError(f"unexpected {t.text!r}", t.line, t.col, expected=["argument", "';'"])
        if kw.text == "corpus":
            if not args or args[0] not in ("list", "run"):
                raise self.error("corpus needs 'list' or 'run <id>'", kw)
            if args[0] == "run" and len(args) != 2 and ("all", None) not in flags:
                raise self.error("corpus run needs one entry id", kw)
            return Command(kw.text, tuple(args), tuple(flags), None)
        if len(args) != nargs:
            raise self.error(f"{kw.text} takes {nargs} argument(s), got {len(args)}", kw)
        if self.current is None:
            raise self.error("no ring in scope", kw)
        for a in args:
            if a not in self.ideals:
                raise self.error(f"unknown ideal {a!r}", kw)
        ring = self.ideals[args[0]].ring if args else self.current
        return Command(kw.text, tuple(args), tuple(flags), ring)


def parse_script(text: str) -> SessionScript:
    return _ScriptParser(text).parse()


# -- printing ----------------------------------------------------------------------

def format_statement(st) -> str:
    if isinstance(st, FieldDecl):
        return "field QQ" if st.modulus is None else f"field Fp {st.modulus}"
    if isinstance(st, RingDecl):
        out = f"ring {st.name} = {st.fieldref}[{', '.join(st.variables)}]"
        if st.relations:
            out += " / (" + ", ".join(format_polynomial(f) for f in st.relations) + ")"
        if st.weights is not None:
            out += " weights (" + ", ".join(map(str, st.weights)) + ")"
        return out
    if isinstance(st, IdealDecl):
        return f"ideal {st.name} = (" + ", ".join(format_polynomial(f) for f in st.gens) + ")"
    if isinstance(st, Command):
        return st.echo()
    raise TypeError(st)


def print_script(script: SessionScript) -> str:
    return "".join(format_statement(st) + ";\n" for st in script.statements)


# -- execution ---------------------------------------------------------------------

@dataclass
class Session:
    """Rings and ideals materialised from a parsed script."""

    script: SessionScript
    order: str = "grevlex"
    ncap: int | None = None
    rings: dict = field(default_factory=dict)
    ideals: dict = field(default_factory=dict)

    def __post_init__(self):
        from .ideal import RingPresentation

        declared = QQ
        for st in self.script.statements:
            if isinstance(st, FieldDecl):
                declared = QQ if st.modulus is None else Fp(st.modulus)
            elif isinstance(st, RingDecl):
                F = _field_of(st.fieldref, declared)
                self.rings[st.name] = RingPresentation(F, st.variables, st.relations,
                                                       weights=st.weights, order=self.order,
                                                       name=st.name)
            elif isinstance(st, IdealDecl):
                R = self.rings[st.ring]
                self.ideals[st.name] = R.ideal(*[R.ambient(Polynomial(R.ambient, g._d))
                                                 for g in st.gens])

    def run(self, cmd: Command):
        from .commands import run_command

        start = time.perf_counter()
        result = run_command(cmd, self)
        return result, (time.perf_counter() - start) * 1000.0
