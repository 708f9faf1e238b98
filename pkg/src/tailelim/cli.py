"""Command-line interface.

INPUT arguments are an expression (``"A'C' + BC"``), ``-`` for stdin, or a
file path (anything containing ``/`` or ``.``, or prefixed with ``@``).
File and stdin contents are read as PLA when they contain a ``.i`` line and
as an expression otherwise.

Exit codes: 0 success, 1 verification failure, 64 usage error,
65 parse/data error, 70 internal invariant breach.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from dataclasses import dataclass

from . import bench
from .cubes import Cover, WidthError, cover_minterms
from .engine import AnchorPolicy, InvariantError, Mode, minimize_function, te_minimize
from .expand import FunctionSpec, prime_implicants
from .oracle import DEFAULT_EXACT_CAP, covers_function, exact_minimum_cover
from .temap import build_te_map
from .textio import (default_names, parse_expression, parse_pla, render_expression,
                     render_kmap, render_te_map, trace_to_dict, write_pla)

EXIT_OK = 0
EXIT_FAIL = 1
EXIT_USAGE = 64
EXIT_DATA = 65
EXIT_INTERNAL = 70

log = logging.getLogger("tailelim")

MODES = {"faithful": Mode.FAITHFUL, "safe": Mode.SAFE}
ANCHORS = {"tail": AnchorPolicy.TAIL_ONLY, "essential": AnchorPolicy.ANY_ESSENTIAL}


class UsageError(Exception):
    pass


class DataError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


@dataclass
class Loaded:
    spec: FunctionSpec
    cover: Cover
    names: list[str]


def _read_source(arg: str, stdin) -> str:
    if arg == "-":
        return stdin.read()
    if arg.startswith("@"):
        path = arg[1:]
    elif "/" in arg or "." in arg:
        path = arg
    else:
        return arg
    try:
        with open(path, encoding="utf-8") as fh:
            return fh.read()
    except OSError as exc:
        raise DataError(f"cannot read {path}: {exc.strerror}") from None


def _is_pla(text: str) -> bool:
    return any(line.strip().startswith(".i") for line in text.splitlines())


def _names_of(text: str) -> list[str] | None:
    """Names that a bare expression would auto-register (None for PLA)."""
    if _is_pla(text):
        return None
    return list(parse_expression(text).names)


def _load_text(text: str, names: list[str] | None) -> Loaded:
    if _is_pla(text):
        data = parse_pla(text)
        width = data.spec.width
        if names is not None and len(names) != width:
            raise DataError(f"--vars lists {len(names)} names for {width} inputs")
        chosen = names or (list(data.names) if data.names else default_names(width))
        return Loaded(data.spec, data.on_cubes, chosen)
    parsed = parse_expression(text, names)
    for term in parsed.contradictions:
        log.warning("dropped contradictory term %s", term)
    v = parsed.cover
    return Loaded(FunctionSpec(v.width, cover_minterms(v)), v, list(parsed.names))


def _vars(args) -> list[str] | None:
    if not getattr(args, "vars", None):
        return None
    return [n.strip() for n in args.vars.split(",") if n.strip()]


def _load(args, stdin) -> Loaded:
    text = _read_source(args.input, stdin)
    return _load_text(text, _vars(args))


def _input_order(src: Loaded, v: Cover) -> Cover:
    """``v`` with the input's own terms first, in input order."""
    kept = [c for c in src.cover.cubes if c in v]
    return Cover(v.width, tuple(kept) + tuple(c for c in v.cubes if c not in kept))


def _expanded(src: Loaded) -> Cover:
    return _input_order(src, prime_implicants(src.spec))


def _emit_cover(v: Cover, names: list[str], fmt: str, out) -> None:
    if fmt == "pla":
        out.write(write_pla(v, names))
    else:
        out.write(render_expression(v, names) + "\n")


def cmd_primes(args, stdin, out) -> int:
    src = _load(args, stdin)
    _emit_cover(_expanded(src), src.names, args.format, out)
    return EXIT_OK


def cmd_temap(args, stdin, out) -> int:
    src = _load(args, stdin)
    v = src.cover if args.no_expand else _expanded(src)
    if not v.cubes:
        raise DataError("the function is constant 0; there is no map to build")
    out.write(render_te_map(build_te_map(v), src.names))
    return EXIT_OK


def cmd_minimize(args, stdin, out) -> int:
    src = _load(args, stdin)
    mode, anchor = MODES[args.mode], ANCHORS[args.anchor]
    v = src.cover if args.no_expand else _expanded(src)
    if v.cubes:
        trace = te_minimize(v, mode, anchor)
    else:
        trace = minimize_function(src.spec, mode, anchor)
    if args.trace:
        with open(args.trace, "w", encoding="utf-8") as fh:
            json.dump(trace_to_dict(trace), fh, indent=2)
            fh.write("\n")
    _emit_cover(trace.final, src.names, args.format, out)
    if not covers_function(trace.final, src.spec):
        log.warning("result is NOT equivalent to the input")
        if args.require_equivalent:
            return EXIT_FAIL
    return EXIT_OK


def cmd_exact(args, stdin, out) -> int:
    src = _load(args, stdin)
    best = exact_minimum_cover(src.spec, max_width=args.cap)
    _emit_cover(_input_order(src, best), src.names, args.format, out)
    return EXIT_OK


def cmd_verify(args, stdin, out) -> int:
    left = _read_source(args.left, stdin)
    right = _read_source(args.right, stdin)
    names = _vars(args)
    if names is None:
        found = [_names_of(left), _names_of(right)]
        if all(f is not None for f in found):
            names = sorted(set(found[0]) | set(found[1]))
    a = _load_text(left, names)
    b = _load_text(right, names)
    if a.spec.width != b.spec.width:
        raise DataError(f"inputs have different widths ({a.spec.width} vs {b.spec.width})")
    if a.spec.on == b.spec.on and a.spec.dc == b.spec.dc:
        out.write("EQUIVALENT\n")
        return EXIT_OK
    diff = sorted((a.spec.on ^ b.spec.on) | (a.spec.dc ^ b.spec.dc))[0]
    bits = format(diff, f"0{a.spec.width}b")
    assignment = " ".join(f"{n}={b_}" for n, b_ in zip(a.names, bits))
    out.write(f"NOT EQUIVALENT\ncounterexample: minterm {diff} ({assignment})\n")
    return EXIT_FAIL


def cmd_kmap(args, stdin, out) -> int:
    src = _load(args, stdin)
    out.write(render_kmap(src.cover, src.names))
    return EXIT_OK


def _choices(value: str, table: dict) -> tuple:
    if value == "both":
        return tuple(table.values())
    return (table[value],)


def cmd_bench(args, stdin, out) -> int:
    try:
        spec = bench.BenchSpec(
            n=args.n, count=args.count, density=args.density, dc_density=args.dc_density,
            seed=args.seed, modes=_choices(args.mode, MODES),
            anchors=_choices(args.anchor, ANCHORS),
            exhaustive=args.exhaustive, timing=args.timing)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    rows = bench.run_bench(spec, workers=args.workers)
    csv_text = bench.rows_to_csv(rows)
    summary = bench.summarize(spec, rows)
    json_text = bench.summary_to_json(summary)
    if args.csv:
        with open(args.csv, "w", encoding="utf-8", newline="") as fh:
            fh.write(csv_text)
    else:
        out.write(csv_text)
    if args.json:
        with open(args.json, "w", encoding="utf-8") as fh:
            fh.write(json_text)
    elif args.csv:
        out.write(json_text)
    else:
        sys.stderr.write(json_text)
    unsafe = [r for r in rows if r.mode is Mode.SAFE and not r.report.equivalent]
    if unsafe:
        log.error("safe mode produced %d non-equivalent results", len(unsafe))
        return EXIT_INTERNAL
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="tailelim", description="Two-level Boolean minimization "
                "with the Tail-Eliminate heuristic.")
    p.add_argument("-v", "--verbose", action="store_true", help="debug logging on stderr")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def with_input(sp):
        sp.add_argument("input", help="expression, file path, or '-' for stdin")
        sp.add_argument("--vars", help="comma-separated variable names, in index order")
        return sp

    def with_format(sp):
        sp.add_argument("--format", choices=["expr", "pla"], default="expr")
        return sp

    sp = with_format(with_input(sub.add_parser("primes", help="list all prime implicants")))
    sp.set_defaults(func=cmd_primes)

    sp = with_input(sub.add_parser("temap", help="print the Tail-Eliminate map"))
    sp.add_argument("--no-expand", action="store_true", help="map the input cover as given")
    sp.set_defaults(func=cmd_temap)

    sp = with_format(with_input(sub.add_parser("minimize", help="run Tail-Eliminate")))
    sp.add_argument("--mode", choices=list(MODES), default="safe")
    sp.add_argument("--anchor", choices=list(ANCHORS), default="tail")
    sp.add_argument("--no-expand", action="store_true", help="skip prime expansion")
    sp.add_argument("--trace", metavar="FILE", help="write the JSON iteration trace")
    sp.add_argument("--require-equivalent", action="store_true",
                    help="exit 1 if the result changes the function")
    sp.set_defaults(func=cmd_minimize)

    sp = with_format(with_input(sub.add_parser("exact", help="exact minimum cover")))
    sp.add_argument("--cap", type=int, default=DEFAULT_EXACT_CAP,
                    help="largest width the exact search accepts")
    sp.set_defaults(func=cmd_exact)

    sp = sub.add_parser("verify", help="check two inputs for equivalence")
    sp.add_argument("left")
    sp.add_argument("right")
    sp.add_argument("--vars", help="comma-separated variable names, in index order")
    sp.set_defaults(func=cmd_verify)

    sp = with_input(sub.add_parser("kmap", help="draw a Karnaugh map (2-4 variables)"))
    sp.set_defaults(func=cmd_kmap)

    sp = sub.add_parser("bench", help="score Tail-Eliminate against the exact oracle")
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--count", type=int, default=100)
    sp.add_argument("--density", type=float, default=0.5)
    sp.add_argument("--dc-density", type=float, default=0.0)
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--mode", choices=[*MODES, "both"], default="safe")
    sp.add_argument("--anchor", choices=[*ANCHORS, "both"], default="tail")
    sp.add_argument("--exhaustive", action="store_true",
                    help="enumerate every function of n <= 4 variables")
    sp.add_argument("--workers", type=int, default=1)
    sp.add_argument("--timing", action="store_true",
                    help="fill te_ms/exact_ms (makes output run-dependent)")
    sp.add_argument("--csv", metavar="FILE", help="write rows here instead of stdout")
    sp.add_argument("--json", metavar="FILE", help="write the summary here")
    sp.set_defaults(func=cmd_bench)
    return p


def main(argv: list[str] | None = None, stdin=None, stdout=None) -> int:
    stdin = stdin or sys.stdin
    stdout = stdout or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_USAGE
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING,
                        format="%(levelname)s: %(message)s", stream=sys.stderr)
    try:
        return args.func(args, stdin, stdout)
    except UsageError as exc:
        print(f"tailelim: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except InvariantError as exc:
        print(f"tailelim: internal error: {exc}", file=sys.stderr)
        return EXIT_INTERNAL
    except (DataError, WidthError, ValueError) as exc:
        print(f"tailelim: {exc}", file=sys.stderr)
        return EXIT_DATA
