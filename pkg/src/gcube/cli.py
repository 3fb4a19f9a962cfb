"""Command-line driver: `check` and `normalize` over .ctt modules.

Exit codes: 0 success, 1 type error, 2 parse error, 3 I/O failure.
"""
from __future__ import annotations

import argparse
import json
import sys
import time
from pathlib import Path

from . import typecheck as checker

from .typecheck import Definitions, check_declaration
from .errors import Diagnostic, ParseError, TypeCheckError
from .evaluator import normalize
from .parser import SourceModule, parse_expression, parse_module
from .pretty import pretty
from .syntax import Context


class LoadError(Exception):
    def __init__(self, exit_code: int, diagnostic: Diagnostic):
        self.exit_code = exit_code
        self.diagnostic = diagnostic


def load_module(path: Path, defs: Definitions, *, loaded: set[Path] | None = None,
                loading: tuple[Path, ...] = (), timings: list | None = None) -> SourceModule:
    """Parse and check one module and its imports (relative to its folder)."""
    path = path.resolve()
    loaded = loaded if loaded is not None else set()
    if path in loading:
        raise LoadError(2, Diagnostic(
            "error", "SyntaxError", f"import cycle through {path.name}",
            str(path), (1, 1), (1, 1)))
    try:
        source = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise LoadError(3, Diagnostic(
            "error", "IOError", str(exc), str(path), (1, 1), (1, 1)))
    try:
        module = parse_module(source)
    except ParseError as exc:
        raise LoadError(2, Diagnostic.from_error(exc, str(path)))
    for imp in module.imports:
        dep = path.parent / f"{imp}.ctt"
        if dep.resolve() in loaded:
            continue
        load_module(dep, defs, loaded=loaded, loading=loading + (path,),
                    timings=timings)
    for decl in module.declarations:
        if decl.name in defs:
            continue  # an import already provided it
        t0 = time.perf_counter()
        try:
            check_declaration(defs, decl.name, decl.ty, decl.body)
        except TypeCheckError as exc:
            if exc.span is None:
                exc.span = decl.span
            raise LoadError(1, Diagnostic.from_error(exc, str(path)))
        if timings is not None:
            timings.append((decl.name, time.perf_counter() - t0))
    loaded.add(path)
    return module


def _emit(diags: list[Diagnostic], as_json: bool) -> None:
    if as_json:
        payload = {"version": Diagnostic.SCHEMA_VERSION,
                   "diagnostics": [d.to_json() for d in diags]}
        print(json.dumps(payload, sort_keys=True))
    else:
        for d in diags:
            (l1, c1), _ = d.start, d.end
            print(f"{d.file}:{l1}:{c1}: {d.message}", file=sys.stderr)


def cmd_check(args) -> int:
    diags: list[Diagnostic] = []
    worst = 0
    for name in args.files:
        defs = Definitions()
        timings: list | None = [] if args.timings else None
        try:
            load_module(Path(name), defs, timings=timings)
        except LoadError as exc:
            diags.append(exc.diagnostic)
            worst = max(worst, exc.exit_code)
            continue
        if timings:
            for decl, dt in timings:
                print(f"{decl}: {dt * 1000:.1f} ms", file=sys.stderr)
        if not args.json:
            print(f"{name}: ok ({len(defs.order)} declarations)")
    if args.json:
        _emit(diags, True)
    elif diags:
        _emit(diags, False)
    return worst


def cmd_normalize(args) -> int:
    defs = Definitions()
    try:
        load_module(Path(args.file), defs)
        expr = parse_expression(args.expr)
    except LoadError as exc:
        _emit([exc.diagnostic], args.json)
        return exc.exit_code
    except ParseError as exc:
        _emit([Diagnostic.from_error(exc, "<expression>")], args.json)
        return 2
    ctx = Context()
    try:
        rexpr = defs.resolve(expr)
        ty, elaborated = checker.infer(ctx, rexpr)
        value = normalize(ctx, elaborated)
    except TypeCheckError as exc:
        _emit([Diagnostic.from_error(exc, "<expression>")], args.json)
        return 1
    if args.json:
        print(json.dumps({"value": pretty(value), "type": pretty(ty)},
                         sort_keys=True))
    else:
        print(pretty(value))
    return 0


def build_arg_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="gcube",
        description="type checker for a guarded cubical type theory")
    sub = ap.add_subparsers(dest="command", required=True)

    p_check = sub.add_parser("check", help="type check modules")
    p_check.add_argument("files", nargs="+", metavar="FILE")
    p_check.add_argument("--json", action="store_true",
                         help="machine-readable diagnostics")
    p_check.add_argument("--trace-conversion", action="store_true",
                         help="log every conversion judgement to stderr")
    p_check.add_argument("--timings", action="store_true",
                         help="per-declaration wall time on stderr")
    p_check.set_defaults(fn=cmd_check)

    p_norm = sub.add_parser("normalize", help="normalize an expression")
    p_norm.add_argument("file", metavar="FILE")
    p_norm.add_argument("-e", "--expr", required=True,
                        help="expression in the module's scope")
    p_norm.add_argument("--json", action="store_true")
    p_norm.set_defaults(fn=cmd_normalize)
    return ap


def _trace(judgement) -> None:
    kind = judgement.kind
    subjects = ", ".join(repr(s) for s in judgement.subjects[:2])
    print(f"[{kind}] {subjects}", file=sys.stderr)


def run_cli(argv: list[str] | None = None) -> int:
    args = build_arg_parser().parse_args(argv)
    if getattr(args, "trace_conversion", False):
        checker.TRACE_CONVERSION = _trace
    try:
        return args.fn(args)
    finally:
        checker.TRACE_CONVERSION = None


def main() -> None:
    sys.exit(run_cli())


if __name__ == "__main__":
    main()
