"""The iterative Tail-Eliminate minimization loop."""

from __future__ import annotations

import logging
from dataclasses import dataclass
from enum import Enum

from .cubes import Cover, Cube, equivalent, is_redundant_in
from .expand import FunctionSpec, expand_cover, prime_implicants
from .temap import TEMap, build_te_map, classify

log = logging.getLogger(__name__)


class InvariantError(RuntimeError):
    """An internal guarantee of the minimizer was violated."""


class Mode(Enum):
    FAITHFUL = "FAITHFUL"
    SAFE = "SAFE"


class AnchorPolicy(Enum):
    # Selectives must overlap a tail implicant.
    TAIL_ONLY = "TAIL_ONLY"
    # Selectives may also be anchored by any implicant that is essential
    # within the current cover (covers a minterm nothing else covers).
    ANY_ESSENTIAL = "ANY_ESSENTIAL"


class EndReason(Enum):
    ALL_QUOTIENTS_POSITIVE = "ALL_QUOTIENTS_POSITIVE"
    ALL_QUOTIENTS_EQUAL = "ALL_QUOTIENTS_EQUAL"
    NO_REMOVABLE_SELECTIVE = "NO_REMOVABLE_SELECTIVE"
    NO_SAFE_REMOVAL = "NO_SAFE_REMOVAL"


@dataclass(frozen=True)
class IterationRecord:
    cover_before: Cover
    map: TEMap
    tails: tuple[int, ...]
    selectives: tuple[int, ...]
    removable: tuple[int, ...]
    removed: Cube | None = None
    skipped_unsafe: tuple[Cube, ...] = ()
    end_reason: EndReason | None = None

    def __post_init__(self):
        if (self.removed is None) == (self.end_reason is None):
            raise ValueError("an iteration either removes a cube or ends the run")


@dataclass(frozen=True)
class MinimizationTrace:
    mode: Mode
    initial: Cover
    steps: tuple[IterationRecord, ...]
    final: Cover
    equivalent_to_input: bool
    anchor: AnchorPolicy = AnchorPolicy.TAIL_ONLY

    @property
    def removals(self) -> list[Cube]:
        return [s.removed for s in self.steps if s.removed is not None]

    @property
    def end_reason(self) -> EndReason | None:
        if self.steps and self.steps[-1].end_reason is not None:
            return self.steps[-1].end_reason
        return None


def end_condition(m: TEMap) -> EndReason | None:
    q = m.quotients
    if all(t > 0 for t in q):
        return EndReason.ALL_QUOTIENTS_POSITIVE
    if len(set(q)) == 1:
        return EndReason.ALL_QUOTIENTS_EQUAL
    return None


def removable_candidates(m: TEMap, anchor: AnchorPolicy = AnchorPolicy.TAIL_ONLY) -> list[int]:
    """Selective implicants overlapping at least one anchor implicant."""
    tails, selectives = classify(m)
    anchors = set(tails)
    if anchor is AnchorPolicy.ANY_ESSENTIAL:
        cover = Cover(m.width, m.implicants)
        anchors.update(i for i, c in enumerate(m.implicants)
                       if not is_redundant_in(c, cover))
    return [i for i in selectives
            if any(j != i and m.count(i, j) > 0 for j in anchors)]


def _tie_break(m: TEMap, indices: list[int]) -> int:
    # Most-overlapped first, then smallest encoding.
    return min(indices, key=lambda i: (-m.stats[i].total_overlaps,
                                       m.implicants[i].encode()))


def select_removal(m: TEMap, mode: Mode, remaining: Cover,
                   anchor: AnchorPolicy = AnchorPolicy.TAIL_ONLY) -> Cube | None:
    candidates = removable_candidates(m, anchor)
    if mode is Mode.SAFE:
        candidates = [i for i in candidates
                      if is_redundant_in(m.implicants[i], remaining)]
    if not candidates:
        return None
    return m.implicants[_tie_break(m, candidates)]


def te_minimize(v: Cover, mode: Mode = Mode.SAFE,
                anchor: AnchorPolicy = AnchorPolicy.TAIL_ONLY,
                expand: bool = False) -> MinimizationTrace:
    """Run Tail-Eliminate on ``v``, removing one implicant per iteration.

    ``v`` is expected to hold every prime implicant already; pass
    ``expand=True`` to expand it first.
    """
    if not v.cubes:
        raise ValueError("cannot minimize an empty cover")
    initial = expand_cover(v) if expand else v
    current = initial
    steps: list[IterationRecord] = []
    while True:
        m = build_te_map(current)
        tails, selectives = classify(m)
        reason = end_condition(m)
        if reason is not None:
            steps.append(IterationRecord(current, m, tuple(tails), tuple(selectives),
                                         (), end_reason=reason))
            break
        removable = removable_candidates(m, anchor)
        skipped: list[Cube] = []
        chosen = removable
        if mode is Mode.SAFE:
            chosen = [i for i in removable
                      if is_redundant_in(m.implicants[i], current)]
            skipped = [m.implicants[i] for i in removable if i not in chosen]
        if not chosen:
            reason = (EndReason.NO_SAFE_REMOVAL if removable
                      else EndReason.NO_REMOVABLE_SELECTIVE)
            steps.append(IterationRecord(current, m, tuple(tails), tuple(selectives),
                                         tuple(removable), skipped_unsafe=tuple(skipped),
                                         end_reason=reason))
            break
        victim = m.implicants[_tie_break(m, chosen)]
        log.debug("removing %s", victim)
        steps.append(IterationRecord(current, m, tuple(tails), tuple(selectives),
                                     tuple(removable), removed=victim,
                                     skipped_unsafe=tuple(skipped)))
        current = current.without(victim)

    ok = equivalent(current, initial)
    if mode is Mode.SAFE and not ok:
        raise InvariantError("safe mode produced a non-equivalent cover")
    return MinimizationTrace(mode, initial, tuple(steps), current, ok, anchor)


def minimize_function(f: FunctionSpec, mode: Mode = Mode.SAFE,
                      anchor: AnchorPolicy = AnchorPolicy.TAIL_ONLY) -> MinimizationTrace:
    """Expand ``f`` to its primes and minimize them.

    A function with an empty ON-set has no primes; its trace has no steps.
    """
    primes = prime_implicants(f)
    if not primes.cubes:
        return MinimizationTrace(mode, primes, (), primes, True, anchor)
    return te_minimize(primes, mode, anchor)
