"""Product terms (cubes), sum-of-products covers and their truth-table semantics.

Variable 0 is the most significant bit of a minterm index, so the minterm
``0b010`` over (A, B, C) is the row A=0, B=1, C=0.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from typing import Iterable, Iterator

MAX_ORACLE_WIDTH = 24


class Literal(Enum):
    POS = "1"
    NEG = "0"
    FREE = "-"


class WidthError(ValueError):
    """Raised when operands disagree on width or a width is out of range."""


def check_oracle_width(width: int, cap: int = MAX_ORACLE_WIDTH) -> None:
    if width > cap:
        raise WidthError(
            f"width {width} exceeds the truth-table cap of {cap} variables")


@dataclass(frozen=True)
class Cube:
    """A product term over ``width`` variables.

    ``mask`` has a bit set for every bound variable and ``value`` holds the
    polarity of those bits (always a subset of ``mask``).  Bit ``width-1-i``
    belongs to variable ``i``.
    """

    width: int
    mask: int
    value: int

    def __post_init__(self):
        if self.width < 1:
            raise WidthError("cube width must be at least 1")
        full = (1 << self.width) - 1
        if self.mask & ~full or self.value & ~self.mask:
            raise ValueError("cube mask/value out of range")

    @classmethod
    def from_string(cls, text: str) -> Cube:
        if not text:
            raise ValueError("empty cube encoding")
        mask = value = 0
        for ch in text:
            mask <<= 1
            value <<= 1
            if ch == "1":
                mask |= 1
                value |= 1
            elif ch == "0":
                mask |= 1
            elif ch != "-":
                raise ValueError(f"invalid cube character {ch!r} in {text!r}")
        return cls(len(text), mask, value)

    @classmethod
    def from_literals(cls, width: int, literals: dict[int, Literal]) -> Cube:
        mask = value = 0
        for index, lit in literals.items():
            if not 0 <= index < width:
                raise WidthError(f"literal index {index} outside width {width}")
            if lit is Literal.FREE:
                continue
            bit = 1 << (width - 1 - index)
            mask |= bit
            if lit is Literal.POS:
                value |= bit
        return cls(width, mask, value)

    @classmethod
    def minterm(cls, width: int, index: int) -> Cube:
        return cls(width, (1 << width) - 1, index)

    @classmethod
    def universal(cls, width: int) -> Cube:
        return cls(width, 0, 0)

    def literal(self, index: int) -> Literal:
        bit = 1 << (self.width - 1 - index)
        if not self.mask & bit:
            return Literal.FREE
        return Literal.POS if self.value & bit else Literal.NEG

    @property
    def literals(self) -> dict[int, Literal]:
        return {i: self.literal(i) for i in range(self.width)
                if self.literal(i) is not Literal.FREE}

    @property
    def bound_count(self) -> int:
        return bin(self.mask).count("1")

    def encode(self) -> str:
        return "".join(self.literal(i).value for i in range(self.width))

    def __str__(self) -> str:
        return self.encode()

    def __repr__(self) -> str:
        return f"Cube({self.encode()!r})"

    def __lt__(self, other: Cube) -> bool:
        return self.encode() < other.encode()

    def free_literal(self, index: int) -> Cube:
        """The cube with variable ``index`` made free."""
        bit = 1 << (self.width - 1 - index)
        return Cube(self.width, self.mask & ~bit, self.value & ~bit)


def _check_same_width(a, b) -> None:
    if a.width != b.width:
        raise WidthError(f"width mismatch: {a.width} vs {b.width}")


def weight(c: Cube) -> int:
    """Number of minterms implied by ``c``: 2^(width - bound literals)."""
    return 1 << (c.width - c.bound_count)


def covers(c: Cube, m: int) -> bool:
    return m & c.mask == c.value


def iter_minterms(c: Cube) -> Iterator[int]:
    free = ((1 << c.width) - 1) & ~c.mask
    # Enumerate every submask of the free bits.
    sub = free
    out = []
    while True:
        out.append(c.value | sub)
        if sub == 0:
            break
        sub = (sub - 1) & free
    return iter(sorted(out))


def minterms(c: Cube) -> frozenset[int]:
    check_oracle_width(c.width)
    return frozenset(iter_minterms(c))


def intersect(a: Cube, b: Cube) -> Cube | None:
    """Logical AND of two cubes, or ``None`` when they contradict."""
    _check_same_width(a, b)
    common = a.mask & b.mask
    if (a.value ^ b.value) & common:
        return None
    return Cube(a.width, a.mask | b.mask, a.value | b.value)


@dataclass(frozen=True)
class Cover:
    """An ordered sum of distinct cubes.  Duplicates are dropped on construction."""

    width: int
    cubes: tuple[Cube, ...] = field(default=())

    def __post_init__(self):
        if self.width < 1:
            raise WidthError("cover width must be at least 1")
        seen = set()
        unique = []
        for c in self.cubes:
            if c.width != self.width:
                raise WidthError(
                    f"cube {c} has width {c.width}, cover has width {self.width}")
            if c not in seen:
                seen.add(c)
                unique.append(c)
        object.__setattr__(self, "cubes", tuple(unique))

    @classmethod
    def from_strings(cls, width: int, encodings: Iterable[str]) -> Cover:
        return cls(width, tuple(Cube.from_string(e) for e in encodings))

    def __len__(self) -> int:
        return len(self.cubes)

    def __iter__(self) -> Iterator[Cube]:
        return iter(self.cubes)

    def __contains__(self, c: object) -> bool:
        return c in self.cubes

    def encodings(self) -> list[str]:
        return [c.encode() for c in self.cubes]

    def without(self, c: Cube) -> Cover:
        return Cover(self.width, tuple(x for x in self.cubes if x != c))

    def sorted(self) -> Cover:
        return Cover(self.width, tuple(sorted(self.cubes)))

    @property
    def literal_count(self) -> int:
        return sum(c.bound_count for c in self.cubes)


def cover_minterms(v: Cover) -> frozenset[int]:
    check_oracle_width(v.width)
    out: set[int] = set()
    for c in v.cubes:
        out.update(iter_minterms(c))
    return frozenset(out)


def equivalent(u: Cover, v: Cover) -> bool:
    _check_same_width(u, v)
    return cover_minterms(u) == cover_minterms(v)


def is_redundant_in(c: Cube, v: Cover) -> bool:
    """True when every minterm of ``c`` is covered by another cube of ``v``."""
    if c not in v:
        raise ValueError(f"cube {c} is not a member of the cover")
    others = [x for x in v.cubes if x != c]
    return all(any(covers(x, m) for x in others) for m in iter_minterms(c))
