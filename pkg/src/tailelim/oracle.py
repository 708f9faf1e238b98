"""Exact minimum covers and scoring of heuristic results against them."""

from __future__ import annotations

import time
from dataclasses import dataclass

from .cubes import Cover, check_oracle_width, cover_minterms, iter_minterms
from .engine import MinimizationTrace
from .expand import FunctionSpec, prime_implicants

DEFAULT_EXACT_CAP = 16


@dataclass(frozen=True)
class ScoreReport:
    input_terms: int
    output_terms: int
    input_literals: int
    output_literals: int
    equivalent: bool
    optimal_terms: int
    is_optimal: bool
    runtime_heuristic: float | None = None
    runtime_exact: float | None = None


def _cost(cubes) -> tuple:
    ordered = sorted(cubes)
    return (len(ordered), sum(c.bound_count for c in ordered),
            tuple(c.encode() for c in ordered))


def exact_minimum_cover(f: FunctionSpec, max_width: int = DEFAULT_EXACT_CAP) -> Cover:
    """Minimum-cardinality prime cover of ``f.on`` by branch and bound.

    Ties go to the fewest literals, then to the lexicographically smallest
    sorted list of encodings.
    """
    check_oracle_width(f.width, max_width)
    if not f.on:
        return Cover(f.width)
    primes = [p for p in prime_implicants(f).cubes
              if any(m in f.on for m in iter_minterms(p))]
    # Coverage of each prime as a bitset over the ON-set positions.
    on_list = sorted(f.on)
    pos = {m: i for i, m in enumerate(on_list)}
    cov = []
    for p in primes:
        bits = 0
        for m in iter_minterms(p):
            if m in pos:
                bits |= 1 << pos[m]
        cov.append(bits)
    everything = (1 << len(on_list)) - 1
    by_minterm = [[k for k, b in enumerate(cov) if b >> i & 1]
                  for i in range(len(on_list))]

    # Essential reduction: a minterm covered by a single prime forces it.
    forced = sorted({ks[0] for ks in by_minterm if len(ks) == 1})
    base = 0
    for k in forced:
        base |= cov[k]
    widest = max(b.bit_count() for b in cov)

    best: list = [None, None]  # [cost, chosen]

    def search(chosen: list[int], covered: int) -> None:
        uncovered = everything & ~covered
        if not uncovered:
            cost = _cost(primes[k] for k in chosen)
            if best[0] is None or cost < best[0]:
                best[0], best[1] = cost, list(chosen)
            return
        left = uncovered.bit_count()
        bound = len(chosen) + -(-left // widest)
        if best[0] is not None and bound > best[0][0]:
            return
        # Branch on the uncovered minterm with the fewest covering primes.
        i = min((j for j in range(len(on_list)) if uncovered >> j & 1),
                key=lambda j: len(by_minterm[j]))
        for k in by_minterm[i]:
            chosen.append(k)
            search(chosen, covered | cov[k])
            chosen.pop()

    search(list(forced), base)
    return Cover(f.width, tuple(sorted(primes[k] for k in best[1])))


def covers_function(v: Cover, f: FunctionSpec) -> bool:
    """True when ``v`` covers every ON minterm and nothing outside ON plus DC."""
    got = cover_minterms(v)
    return f.on <= got and got <= f.care_on


def score(trace: MinimizationTrace, f: FunctionSpec, exact: Cover | None = None,
          runtime_heuristic: float | None = None) -> ScoreReport:
    if trace.final.width != f.width:
        raise ValueError("trace and function widths differ")
    runtime_exact = None
    if exact is None:
        start = time.perf_counter()
        exact = exact_minimum_cover(f)
        runtime_exact = time.perf_counter() - start
    ok = covers_function(trace.final, f)
    out_terms = len(trace.final)
    return ScoreReport(
        input_terms=len(trace.initial),
        output_terms=out_terms,
        input_literals=trace.initial.literal_count,
        output_literals=trace.final.literal_count,
        equivalent=ok,
        optimal_terms=len(exact),
        is_optimal=ok and out_terms == len(exact),
        runtime_heuristic=runtime_heuristic,
        runtime_exact=runtime_exact,
    )
