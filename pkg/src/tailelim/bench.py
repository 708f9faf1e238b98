"""Benchmark harness: seeded random functions, scoring runs, CSV/JSON reports.

Generator
---------
Function ``index`` under ``seed`` draws from a SplitMix64 stream whose
initial state is the ``index + 1``-th SplitMix64 output of ``seed``.  For
each minterm in ascending order one 64-bit word ``w`` is drawn and
``u = (w >> 11) / 2**53``.  The minterm is ON if ``u < density``, a
don't-care if ``u < density + dc_density``, otherwise OFF.
"""

from __future__ import annotations

import csv
import io
import json
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, replace
from fractions import Fraction

from .engine import AnchorPolicy, Mode, minimize_function
from .expand import FunctionSpec
from .oracle import ScoreReport, exact_minimum_cover, score

MASK64 = (1 << 64) - 1
GOLDEN = 0x9E3779B97F4A7C15

CSV_COLUMNS = ["index", "n", "on_count", "dc_count", "te_terms", "te_literals",
               "exact_terms", "equivalent", "optimal", "te_ms", "exact_ms",
               "mode", "anchor"]


def _mix64(z: int) -> int:
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & MASK64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & MASK64
    return z ^ (z >> 31)


class SplitMix64:
    def __init__(self, seed: int):
        self.state = seed & MASK64

    def next(self) -> int:
        self.state = (self.state + GOLDEN) & MASK64
        return _mix64(self.state)

    def unit(self) -> float:
        return (self.next() >> 11) / 9007199254740992.0


@dataclass(frozen=True)
class BenchSpec:
    n: int
    count: int = 100
    density: float = 0.5
    dc_density: float = 0.0
    seed: int = 0
    modes: tuple[Mode, ...] = (Mode.SAFE,)
    anchors: tuple[AnchorPolicy, ...] = (AnchorPolicy.TAIL_ONLY,)
    exhaustive: bool = False
    timing: bool = False

    def __post_init__(self):
        if not (0.0 <= self.density <= 1.0 and 0.0 <= self.dc_density <= 1.0):
            raise ValueError("densities must lie in [0, 1]")
        if self.density + self.dc_density > 1.0:
            raise ValueError("density + dc-density must not exceed 1")
        if self.n < 1:
            raise ValueError("n must be at least 1")
        if self.exhaustive and self.n > 4:
            raise ValueError("exhaustive enumeration is limited to n <= 4")

    @property
    def function_count(self) -> int:
        return 1 << (1 << self.n) if self.exhaustive else self.count


def generate_function(spec: BenchSpec, index: int) -> FunctionSpec:
    if spec.exhaustive:
        return FunctionSpec(spec.n, frozenset(m for m in range(1 << spec.n) if index >> m & 1))
    state = (spec.seed + (index + 1) * GOLDEN) & MASK64
    rng = SplitMix64(_mix64(state))
    on, dc = set(), set()
    for m in range(1 << spec.n):
        u = rng.unit()
        if u < spec.density:
            on.add(m)
        elif u < spec.density + spec.dc_density:
            dc.add(m)
    return FunctionSpec(spec.n, frozenset(on), frozenset(dc))


@dataclass(frozen=True)
class BenchRow:
    index: int
    n: int
    on_count: int
    dc_count: int
    mode: Mode
    anchor: AnchorPolicy
    report: ScoreReport

    def csv_fields(self) -> list[str]:
        r = self.report
        return [str(self.index), str(self.n), str(self.on_count), str(self.dc_count),
                str(r.output_terms), str(r.output_literals), str(r.optimal_terms),
                str(int(r.equivalent)), str(int(r.is_optimal)),
                _ms(r.runtime_heuristic), _ms(r.runtime_exact),
                self.mode.value, self.anchor.value]


def _ms(seconds: float | None) -> str:
    return "" if seconds is None else f"{seconds * 1000:.3f}"


def _run_one(spec: BenchSpec, index: int) -> list[BenchRow]:
    f = generate_function(spec, index)
    start = time.perf_counter()
    exact = exact_minimum_cover(f)
    exact_time = time.perf_counter() - start
    rows = []
    for mode in spec.modes:
        for anchor in spec.anchors:
            start = time.perf_counter()
            trace = minimize_function(f, mode, anchor)
            te_time = time.perf_counter() - start
            if spec.timing:
                rep = replace(score(trace, f, exact=exact, runtime_heuristic=te_time),
                              runtime_exact=exact_time)
            else:
                rep = score(trace, f, exact=exact)
            rows.append(BenchRow(index, f.width, len(f.on), len(f.dc), mode, anchor, rep))
    return rows


def _run_chunk(spec: BenchSpec, indices: list[int]) -> list[BenchRow]:
    out = []
    for i in indices:
        out.extend(_run_one(spec, i))
    return out


def run_bench(spec: BenchSpec, workers: int = 1) -> list[BenchRow]:
    """Score every generated function; rows are ordered by index, then config."""
    indices = list(range(spec.function_count))
    if workers <= 1:
        return _run_chunk(spec, indices)
    chunks = [indices[k::workers] for k in range(workers)]
    rows: list[BenchRow] = []
    with ProcessPoolExecutor(max_workers=workers) as pool:
        for part in pool.map(_run_chunk, [spec] * workers, chunks):
            rows.extend(part)
    order = {(m, a): k for k, (m, a) in enumerate(
        (m, a) for m in spec.modes for a in spec.anchors)}
    rows.sort(key=lambda r: (r.index, order[(r.mode, r.anchor)]))
    return rows


def format_rate(x: Fraction | None) -> str | None:
    """Render a rational to 6 decimals, rounding half up."""
    if x is None:
        return None
    scaled = x * 10**6
    q = (scaled.numerator * 2 + scaled.denominator) // (2 * scaled.denominator)
    return f"{q // 10**6}.{q % 10**6:06d}"


def aggregate(rows: list[BenchRow]) -> dict:
    total = len(rows)
    eq = [r for r in rows if r.report.equivalent]
    opt = [r for r in eq if r.report.is_optimal]
    ratios = [Fraction(r.report.output_terms, r.report.optimal_terms)
              for r in eq if r.report.optimal_terms > 0]
    out = {
        "functions": total,
        "equivalent": len(eq),
        "optimal": len(opt),
        "equivalence_rate": format_rate(Fraction(len(eq), total) if total else None),
        "optimality_rate": format_rate(Fraction(len(opt), len(eq)) if eq else None),
        "mean_term_ratio": format_rate(sum(ratios, Fraction(0)) / len(ratios) if ratios else None),
    }
    te_times = [r.report.runtime_heuristic for r in rows if r.report.runtime_heuristic is not None]
    ex_times = [r.report.runtime_exact for r in rows if r.report.runtime_exact is not None]
    out["mean_te_ms"] = _ms(sum(te_times) / len(te_times)) if te_times else None
    out["mean_exact_ms"] = _ms(sum(ex_times) / len(ex_times)) if ex_times else None
    return out


def summarize(spec: BenchSpec, rows: list[BenchRow]) -> dict:
    configs = []
    for mode in spec.modes:
        for anchor in spec.anchors:
            sel = [r for r in rows if r.mode is mode and r.anchor is anchor]
            configs.append({"mode": mode.value, "anchor": anchor.value, **aggregate(sel)})
    return {
        "n": spec.n,
        "functions": spec.function_count,
        "exhaustive": spec.exhaustive,
        "density": spec.density,
        "dc_density": spec.dc_density,
        "seed": spec.seed,
        "configs": configs,
    }


def rows_to_csv(rows: list[BenchRow]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(CSV_COLUMNS)
    for r in rows:
        w.writerow(r.csv_fields())
    return buf.getvalue()


def summary_to_json(summary: dict) -> str:
    return json.dumps(summary, indent=2, sort_keys=False) + "\n"
