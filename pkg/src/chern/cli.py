"""Command-line entry point.

    chern run SCRIPT [--json] [--order lex] [--ncap N]
    chern parse SCRIPT                 print the canonical form of a script
    chern corpus list
    chern corpus run ID | --all
    chern corpus export ID
    chern batch SELECTOR --strategy {given,random-forms,powers} [--k K] [--samples N] [--seed S]
                [--prime P]

Exit codes: 0 success, 2 user error, 3 internal invariant failure.
"""

from __future__ import annotations

import argparse
import logging
import sys
import traceback

from . import __version__
from .errors import ArgumentError, ChernError, InvariantError
from .report import command_report, document, dumps, error_payload, render_text

log = logging.getLogger("chern")


def _read(path):
    if path == "-":
        return sys.stdin.read()
    try:
        with open(path, encoding="utf-8") as fh:
            return fh.read()
    except OSError as exc:
        raise ArgumentError(f"cannot read {path}: {exc.strerror}") from None


def _ncap(args):
    if args.ncap is not None:
        if args.ncap < 1:
            raise ArgumentError("--ncap must be positive")
        return args.ncap
    from .hilbert import default_ncap
    return default_ncap()


def _run_script(args, reports):
    from .script import Session, parse_script

    script = parse_script(_read(args.script))
    session = Session(script, order=args.order, ncap=_ncap(args))
    for cmd in script.commands:
        result, ms = session.run(cmd)
        payload, warnings = result
        reports.append(command_report(cmd.echo(), payload, warnings, ms, args.seed))


def _run_corpus(args, reports):
    from .commands import corpus_list, corpus_report
    from .corpus import all_entries, get_entry

    ncap = _ncap(args)
    if args.action == "list":
        reports.append(command_report("corpus list", corpus_list()))
        return
    if args.action == "export":
        if not args.id:
            raise ArgumentError("corpus export needs an entry id")
        sys.stdout.write(get_entry(args.id).to_script())
        return "exported"
    if args.all:
        entries = sorted(all_entries(), key=lambda e: e.id)
        from concurrent.futures import ThreadPoolExecutor
        from .theorems import thread_count

        n = thread_count()
        if n > 1:
            with ThreadPoolExecutor(max_workers=n) as pool:
                results = list(pool.map(lambda e: corpus_report(e, ncap), entries))
        else:
            results = [corpus_report(e, ncap) for e in entries]
        for e, res in zip(entries, results):
            reports.append(command_report(f"corpus run {e.id}", res))
        return
    if not args.id:
        raise ArgumentError("corpus run needs an entry id or --all")
    import time

    start = time.perf_counter()
    res = corpus_report(get_entry(args.id), ncap)
    reports.append(command_report(f"corpus run {args.id}", res,
                                  timing_ms=(time.perf_counter() - start) * 1000))


def _run_batch(args, reports):
    from .corpus import select
    from .theorems import batch_verify

    entries = select(args.selector)
    if args.prime is not None:
        from .scalars import Fp

        Fp(args.prime)  # validates the modulus
        entries = [e.over_field(f"Fp {args.prime}") for e in entries]
    rep = batch_verify(entries, args.strategy, k=args.k, seed=args.seed or 0,
                       samples=args.samples, ncap=_ncap(args))
    echo = f"batch {args.selector} --strategy {args.strategy} --k {args.k} --samples {args.samples}"
    if args.prime is not None:
        echo += f" --prime {args.prime}"
    reports.append(command_report(echo, rep.to_json(), seed=rep.seed))


def _parse_only(args, reports):
    from .script import parse_script, print_script

    sys.stdout.write(print_script(parse_script(_read(args.script))))
    return "printed"


def build_parser():
    p = argparse.ArgumentParser(prog="chern", description="Hilbert-Samuel coefficients, "
                                "index of reducibility and Cohen-Macaulay verdicts.")
    p.add_argument("--version", action="version", version=f"chern {__version__}")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="emit a JSON document")
    common.add_argument("--seed", type=int, default=None, help="seed for all randomness")
    common.add_argument("--order", choices=("grevlex", "lex"), default="grevlex")
    common.add_argument("--ncap", type=int, default=None,
                        help="largest n for function tables (default $CHERN_NCAP or 40)")
    common.add_argument("-v", "--verbose", action="store_true")
    sub = p.add_subparsers(dest="mode", required=True)

    r = sub.add_parser("run", parents=[common], help="execute a script file ('-' for stdin)")
    r.add_argument("script")
    r.set_defaults(func=_run_script)

    pr = sub.add_parser("parse", parents=[common], help="print a script in canonical form")
    pr.add_argument("script")
    pr.set_defaults(func=_parse_only)

    c = sub.add_parser("corpus", parents=[common], help="built-in examples")
    c.add_argument("action", choices=("list", "run", "export"))
    c.add_argument("id", nargs="?")
    c.add_argument("--all", action="store_true")
    c.set_defaults(func=_run_corpus)

    b = sub.add_parser("batch", parents=[common], help="verdict sweep over corpus entries")
    b.add_argument("selector", help="all, standard, cm, goto-sakurai, or comma-separated ids")
    b.add_argument("--strategy", choices=("given", "random-forms", "powers"), default="given")
    b.add_argument("--k", type=int, default=2, help="form degree or power")
    b.add_argument("--samples", type=int, default=1)
    b.add_argument("--prime", type=int, default=None,
                   help="run the sweep over F_p instead of the entries' own field")
    b.set_defaults(func=_run_batch)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 0 if exc.code in (0, None) else 2
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING,
                        format="%(levelname)s: %(message)s", stream=sys.stderr)
    reports = []
    error = None
    code = 0
    try:
        done = args.func(args, reports)
    except ChernError as exc:
        code, error = 2, exc
        done = None
    except InvariantError as exc:
        code, error = 3, exc
        done = None
    except Exception as exc:  # anything else is a bug, reported like an invariant failure
        log.debug("%s", traceback.format_exc())
        code, error = 3, exc
        done = None
    if done in ("exported", "printed"):
        return 0
    err = error_payload(error, code) if error is not None else None
    doc = document(reports, seed=args.seed, error=err)
    sys.stdout.write(dumps(doc) if args.json else render_text(doc))
    if error is not None:
        print(f"chern: error: {error}", file=sys.stderr)
    for rep in reports:
        for w in rep["warnings"]:
            log.warning(w)
    return code


if __name__ == "__main__":
    sys.exit(main())
