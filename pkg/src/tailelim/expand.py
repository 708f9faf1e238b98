"""Prime implicant generation by iterative adjacent-cube merging."""

from __future__ import annotations

from dataclasses import dataclass, field

from .cubes import Cover, Cube, WidthError, check_oracle_width, cover_minterms


@dataclass(frozen=True)
class FunctionSpec:
    """A single-output function given by its ON-set and don't-care set."""

    width: int
    on: frozenset[int]
    dc: frozenset[int] = field(default=frozenset())

    def __post_init__(self):
        if self.width < 1:
            raise WidthError("function width must be at least 1")
        object.__setattr__(self, "on", frozenset(self.on))
        object.__setattr__(self, "dc", frozenset(self.dc))
        size = 1 << self.width
        if any(not 0 <= m < size for m in self.on | self.dc):
            raise ValueError(f"minterm outside [0, {size})")
        if self.on & self.dc:
            raise ValueError("ON-set and don't-care set overlap")

    @classmethod
    def from_cover(cls, v: Cover) -> FunctionSpec:
        return cls(v.width, cover_minterms(v))

    @property
    def care_on(self) -> frozenset[int]:
        return self.on | self.dc


def prime_implicants(f: FunctionSpec) -> Cover:
    """All prime implicants of ``f``, sorted by canonical encoding.

    Don't-cares take part in merging; primes made only of don't-cares are
    kept.  An empty ON-set gives the empty cover.
    """
    check_oracle_width(f.width)
    if not f.on:
        return Cover(f.width)
    full = (1 << f.width) - 1
    level = {Cube(f.width, full, m) for m in f.care_on}
    primes: set[Cube] = set()
    while level:
        merged: set[Cube] = set()
        nxt: set[Cube] = set()
        by_key = {(c.mask, c.value) for c in level}
        for c in level:
            bits = c.mask
            while bits:
                bit = bits & -bits
                bits ^= bit
                # Pair each cube with its neighbour that has this bit set.
                if c.value & bit:
                    continue
                if (c.mask, c.value | bit) in by_key:
                    merged.add(c)
                    merged.add(Cube(f.width, c.mask, c.value | bit))
                    nxt.add(Cube(f.width, c.mask & ~bit, c.value))
        primes.update(level - merged)
        level = nxt
    return Cover(f.width, tuple(sorted(primes)))


def expand_cover(v: Cover) -> Cover:
    return prime_implicants(FunctionSpec.from_cover(v))
