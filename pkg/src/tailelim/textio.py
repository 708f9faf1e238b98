"""Text formats: algebraic SOP expressions, single-output PLA, TE maps, K-maps."""

from __future__ import annotations

import re
import string
from dataclasses import dataclass, field

from .cubes import Cover, Cube, Literal, covers, iter_minterms
from .expand import FunctionSpec
from .temap import TEMap

NAME_RE = re.compile(r"[A-Za-z][A-Za-z0-9_]*\Z")


class ExpressionSyntaxError(ValueError):
    def __init__(self, message: str, position: int):
        super().__init__(f"{message} at position {position}")
        self.position = position


class PlaError(ValueError):
    def __init__(self, message: str, line: int | None = None):
        super().__init__(f"line {line}: {message}" if line else message)
        self.line = line


def default_names(width: int) -> list[str]:
    letters = string.ascii_uppercase
    if width <= len(letters):
        return list(letters[:width])
    return [f"x{i}" for i in range(width)]


def check_names(names: list[str]) -> None:
    if len(set(names)) != len(names):
        raise ValueError(f"duplicate variable names in {names}")
    for n in names:
        if not NAME_RE.match(n):
            raise ValueError(f"invalid variable name {n!r}")


@dataclass(frozen=True)
class ParsedExpression:
    cover: Cover
    names: tuple[str, ...]
    # Terms that contained both X and X' and were dropped.
    contradictions: tuple[str, ...] = field(default=())


def _tokenize(text: str, names: list[str] | None):
    """Yield (kind, value, position) tokens."""
    by_length = sorted(names, key=len, reverse=True) if names else None
    i = 0
    while i < len(text):
        ch = text[i]
        if ch.isspace():
            i += 1
        elif ch in "+'!":
            yield ch, ch, i
            i += 1
        elif ch in "01":
            yield "const", ch, i
            i += 1
        elif ch.isalpha():
            if by_length is None:
                yield "name", ch, i
                i += 1
                continue
            for n in by_length:
                if text.startswith(n, i):
                    yield "name", n, i
                    i += len(n)
                    break
            else:
                m = re.compile(r"[A-Za-z][A-Za-z0-9_]*").match(text, i)
                raise ExpressionSyntaxError(f"unknown variable {m.group(0)!r}", i)
        else:
            raise ExpressionSyntaxError(f"unexpected character {ch!r}", i)
    yield "end", "", len(text)


def _parse_terms(text: str, names: list[str] | None):
    """Parse into a list of terms; each term is a list of (name, positive) or a constant."""
    tokens = list(_tokenize(text, names))
    terms = []
    k = 0

    def expect_term_start():
        kind, value, at = tokens[k]
        raise ExpressionSyntaxError(
            "expected a term" if kind in ("+", "end") else f"unexpected {value!r}", at)

    while True:
        kind, value, at = tokens[k]
        if kind == "const":
            terms.append((value, at))
            k += 1
        elif kind in ("name", "!"):
            lits = []
            while tokens[k][0] in ("name", "!"):
                negate = False
                if tokens[k][0] == "!":
                    negate = True
                    k += 1
                    if tokens[k][0] != "name":
                        raise ExpressionSyntaxError("expected a variable after '!'", tokens[k][2])
                name = tokens[k][1]
                k += 1
                while tokens[k][0] == "'":
                    negate = not negate
                    k += 1
                lits.append((name, not negate))
            terms.append((lits, at))
        else:
            expect_term_start()
        kind, value, at = tokens[k]
        if kind == "end":
            return terms
        if kind != "+":
            raise ExpressionSyntaxError(f"unexpected {value!r}", at)
        k += 1


def parse_expression(text: str, names: list[str] | None = None) -> ParsedExpression:
    """Parse a sum of products such as ``A'C' + A'B + BC``.

    Complements are written ``A'`` or ``!A``; ``1`` is the universal term and
    ``0`` terms are dropped.  Without ``names`` every letter is its own
    variable and the variables are ordered alphabetically.
    """
    if names is not None:
        names = list(names)
        check_names(names)
    terms = _parse_terms(text, names)
    if names is None:
        seen = {n for t, _ in terms if isinstance(t, list) for n, _ in t}
        names = sorted(seen) or ["A"]
    width = len(names)
    index = {n: i for i, n in enumerate(names)}
    cubes = []
    contradictions = []
    for term, at in terms:
        if term == "0":
            continue
        if term == "1":
            cubes.append(Cube.universal(width))
            continue
        lits: dict[int, Literal] = {}
        bad = False
        for name, positive in term:
            lit = Literal.POS if positive else Literal.NEG
            if lits.setdefault(index[name], lit) is not lit:
                bad = True
        if bad:
            contradictions.append(_term_text(term))
            continue
        cubes.append(Cube.from_literals(width, lits))
    return ParsedExpression(Cover(width, tuple(cubes)), tuple(names), tuple(contradictions))


def _term_text(term) -> str:
    return "".join(n + ("" if pos else "'") for n, pos in term)


def render_cube(c: Cube, names: list[str] | None = None) -> str:
    names = list(names) if names else default_names(c.width)
    sep = "" if all(len(n) == 1 for n in names) else " "
    parts = []
    for i in range(c.width):
        lit = c.literal(i)
        if lit is Literal.POS:
            parts.append(names[i])
        elif lit is Literal.NEG:
            parts.append(names[i] + "'")
    return sep.join(parts) or "1"


def render_expression(v: Cover, names: list[str] | None = None) -> str:
    if not v.cubes:
        return "0"
    return " + ".join(render_cube(c, names) for c in v.cubes)


@dataclass(frozen=True)
class PlaData:
    spec: FunctionSpec
    names: tuple[str, ...] | None
    # Input cubes of the rows whose output is '1', in file order.
    on_cubes: Cover


def parse_pla(text: str) -> PlaData:
    width = None
    names = None
    on_rows: list[Cube] = []
    dc_rows: list[Cube] = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if line.startswith("."):
            key, *args = line.split()
            if key == ".i":
                width = _pla_int(args, lineno)
                if width < 1:
                    raise PlaError(".i must be at least 1", lineno)
            elif key == ".o":
                if _pla_int(args, lineno) != 1:
                    raise PlaError("only single-output PLA files are supported", lineno)
            elif key == ".ilb":
                names = args
            elif key == ".type":
                if args not in (["f"], ["fd"], ["fr"]):
                    raise PlaError(f"unsupported .type {' '.join(args)}", lineno)
            elif key in (".e", ".end"):
                break
            elif key in (".p", ".ob"):
                pass
            else:
                raise PlaError(f"unknown directive {key}", lineno)
            continue
        if width is None:
            raise PlaError("cube line before .i", lineno)
        fields = line.split()
        if len(fields) < 2:
            raise PlaError("expected '<inputs> <output>'", lineno)
        inputs, output = "".join(fields[:-1]), fields[-1]
        if len(inputs) != width:
            raise PlaError(f"expected {width} input columns, found {len(inputs)}", lineno)
        try:
            cube = Cube.from_string(inputs)
        except ValueError as exc:
            raise PlaError(str(exc), lineno) from None
        if output == "1":
            on_rows.append(cube)
        elif output in ("-", "~", "2"):
            dc_rows.append(cube)
        elif output != "0":
            raise PlaError(f"invalid output value {output!r}", lineno)
    if width is None:
        raise PlaError("missing .i directive")
    if names is not None:
        if len(names) != width:
            raise PlaError(f".ilb lists {len(names)} names for {width} inputs")
        try:
            check_names(names)
        except ValueError as exc:
            raise PlaError(str(exc)) from None
    on = Cover(width, tuple(on_rows))
    on_set = _minterm_union(on_rows)
    # ON rows win over overlapping don't-care rows.
    dc_set = _minterm_union(dc_rows) - on_set
    return PlaData(FunctionSpec(width, on_set, dc_set),
                   tuple(names) if names else None, on)


def _minterm_union(cubes: list[Cube]) -> frozenset[int]:
    out: set[int] = set()
    for c in cubes:
        out.update(iter_minterms(c))
    return frozenset(out)


def _pla_int(args: list[str], lineno: int) -> int:
    if len(args) != 1 or not args[0].isdigit():
        raise PlaError("expected a single integer argument", lineno)
    return int(args[0])


def read_pla(text: str) -> FunctionSpec:
    return parse_pla(text).spec


def write_pla(x: FunctionSpec | Cover, names: list[str] | None = None) -> str:
    """Canonical PLA text.  Functions are written minterm by minterm."""
    width = x.width
    if isinstance(x, Cover):
        rows = [(c.encode(), "1") for c in x.cubes]
    else:
        rows = [(format(m, f"0{width}b"), "1") for m in sorted(x.on)]
        rows += [(format(m, f"0{width}b"), "-") for m in sorted(x.dc)]
    lines = [f".i {width}", ".o 1"]
    if names:
        lines.append(".ilb " + " ".join(names))
    lines.append(f".p {len(rows)}")
    lines += [f"{i} {o}" for i, o in rows]
    lines.append(".e")
    return "\n".join(lines) + "\n"


def _table(rows: list[list[str]]) -> str:
    widths = [max(len(r[c]) for r in rows) for c in range(len(rows[0]))]
    out = []
    for r in rows:
        cells = [r[0].ljust(widths[0])] + [v.rjust(w) for v, w in zip(r[1:], widths[1:])]
        out.append("  ".join(cells).rstrip())
    return "\n".join(out) + "\n"


def render_te_map(m: TEMap, names: list[str] | None = None) -> str:
    labels = [render_cube(c, names) for c in m.implicants]
    n = len(labels)
    rows = [["x"] + labels]
    for i in range(n):
        rows.append([labels[i]] + ["x" if i == j else str(m.count(i, j)) for j in range(n)])
    rows.append(["Total Overlaps"] + [str(t) for t in m.totals])
    rows.append(["Tail Quotient"] + [str(t) for t in m.quotients])
    return _table(rows)


GRAY2 = ["00", "01", "11", "10"]
GRAY1 = ["0", "1"]


def kmap_layout(width: int) -> tuple[int, list[str], list[str]]:
    """(column variable count, column labels, row labels) for a K-map."""
    if width == 2:
        return 1, GRAY1, GRAY1
    if width == 3:
        return 2, GRAY2, GRAY1
    if width == 4:
        return 2, GRAY2, GRAY2
    raise ValueError(f"K-maps need 2 to 4 variables, got {width}; "
                     "use a truth table for other widths")


def kmap_minterm(width: int, row: str, col: str) -> int:
    kmap_layout(width)
    return int(col + row, 2)


def render_kmap(v: Cover, names: list[str] | None = None) -> str:
    width = v.width
    ncol, cols, rows = kmap_layout(width)
    names = list(names) if names else default_names(width)
    col_title = "".join(names[:ncol])
    row_title = "".join(names[ncol:])
    pad = max(len(row_title), 1)
    lines = [" " * pad + "  " + " " * len(rows[0]) + "  " + col_title,
             " " * pad + "  " + " " * len(rows[0]) + "  " + " ".join(c.rjust(2) for c in cols)]
    for k, r in enumerate(rows):
        bits = []
        for c in cols:
            m = kmap_minterm(width, r, c)
            bits.append("1" if any(covers(x, m) for x in v.cubes) else "0")
        title = row_title if k == 0 else ""
        lines.append(title.ljust(pad) + "  " + r + "  " + " ".join(b.rjust(2) for b in bits))
    return "\n".join(lines) + "\n"


def trace_to_dict(trace) -> dict:
    """JSON-ready form of a ``MinimizationTrace``; cubes are canonical encodings."""
    iterations = []
    for step in trace.steps:
        m = step.map
        iterations.append({
            "cover": step.cover_before.encodings(),
            "matrix": m.matrix(),
            "totals": m.totals,
            "quotients": m.quotients,
            "tails": list(step.tails),
            "selectives": list(step.selectives),
            "removable": list(step.removable),
            "removed": step.removed.encode() if step.removed is not None else None,
            "skipped_unsafe": [c.encode() for c in step.skipped_unsafe],
            "end_reason": step.end_reason.value if step.end_reason is not None else None,
        })
    return {
        "mode": trace.mode.value,
        "anchor": trace.anchor.value,
        "width": trace.initial.width,
        "initial": trace.initial.encodings(),
        "final": trace.final.encodings(),
        "equivalent": trace.equivalent_to_input,
        "iterations": iterations,
    }
