"""The Tail-Eliminate map: pairwise overlaps, totals, tail quotients, classes."""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

from .cubes import Cover, Cube, intersect, weight


class ImplicantClass(Enum):
    TAIL = "TAIL"
    SELECTIVE = "SELECTIVE"
    ESSENTIAL_ZERO_OVERLAP = "ESSENTIAL_ZERO_OVERLAP"
    OTHER = "OTHER"


@dataclass(frozen=True)
class OverlapEntry:
    row: int
    col: int
    intersection: Cube | None
    bound_count: int
    count: int


@dataclass(frozen=True)
class ImplicantStats:
    cube: Cube
    h: int
    total_overlaps: int
    tail_quotient: int
    klass: ImplicantClass


@dataclass(frozen=True)
class TEMap:
    width: int
    implicants: tuple[Cube, ...]
    # entries[i][j] is None on the diagonal.
    entries: tuple[tuple[OverlapEntry | None, ...], ...]
    stats: tuple[ImplicantStats, ...]

    def count(self, i: int, j: int) -> int:
        entry = self.entries[i][j]
        return -1 if entry is None else entry.count

    @property
    def totals(self) -> list[int]:
        return [s.total_overlaps for s in self.stats]

    @property
    def quotients(self) -> list[int]:
        return [s.tail_quotient for s in self.stats]

    def matrix(self) -> list[list[int]]:
        """Overlap counts with -1 on the diagonal."""
        n = len(self.implicants)
        return [[self.count(i, j) for j in range(n)] for i in range(n)]


def _entry(row: int, col: int, a: Cube, b: Cube) -> OverlapEntry:
    inter = intersect(a, b)
    if inter is None:
        return OverlapEntry(row, col, None, 0, 0)
    return OverlapEntry(row, col, inter, inter.bound_count,
                        1 << (a.width - inter.bound_count))


def overlap(a: Cube, b: Cube) -> int:
    """Number of minterms shared by ``a`` and ``b``, as 2^(n - a) of their AND."""
    return _entry(0, 1, a, b).count


def build_te_map(v: Cover) -> TEMap:
    if not v.cubes:
        raise ValueError("cannot build a Tail-Eliminate map of an empty cover")
    cubes = v.cubes
    n = len(cubes)
    rows: list[list[OverlapEntry | None]] = [[None] * n for _ in range(n)]
    for i in range(n):
        for j in range(i + 1, n):
            e = _entry(i, j, cubes[i], cubes[j])
            rows[i][j] = e
            rows[j][i] = OverlapEntry(j, i, e.intersection, e.bound_count, e.count)

    totals = [sum(e.count for e in row if e is not None) for row in rows]
    quotients = [weight(c) - t for c, t in zip(cubes, totals)]
    tails, selectives = _extremes(totals, quotients)
    stats = []
    for i, c in enumerate(cubes):
        if totals[i] == 0:
            klass = ImplicantClass.ESSENTIAL_ZERO_OVERLAP
        elif i in tails:
            klass = ImplicantClass.TAIL
        elif i in selectives:
            klass = ImplicantClass.SELECTIVE
        else:
            klass = ImplicantClass.OTHER
        stats.append(ImplicantStats(c, weight(c), totals[i], quotients[i], klass))
    return TEMap(v.width, cubes, tuple(tuple(r) for r in rows), tuple(stats))


def _extremes(totals: list[int], quotients: list[int]) -> tuple[list[int], list[int]]:
    candidates = [i for i, t in enumerate(totals) if t > 0]
    if not candidates:
        return [], []
    hi = max(quotients[i] for i in candidates)
    lo = min(quotients[i] for i in candidates)
    return ([i for i in candidates if quotients[i] == hi],
            [i for i in candidates if quotients[i] == lo])


def classify(m: TEMap) -> tuple[list[int], list[int]]:
    """Indices of the tail and selective implicants.

    Implicants with no overlaps are left out of both sets.  When every
    remaining quotient is equal the two sets coincide.
    """
    return _extremes(m.totals, m.quotients)
