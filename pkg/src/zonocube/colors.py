"""Ground-set combinatorics: colors, the color involution, packets and sticks.

Colors are the integers ``1..n``. A :class:`ColorSet` stores its members as a
bitmask (color ``i`` is bit ``i-1``), which bounds ``n`` by :data:`MAX_COLORS`.
Every enumeration here is lexicographic on the sorted member sequences, and
everything downstream (node ids, document bytes) inherits that order.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache, total_ordering
from itertools import combinations
from typing import Iterable, Iterator

from .errors import InvalidInputError

MAX_COLORS = 64


def _bits(mask: int) -> tuple[int, ...]:
    out = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length())
        mask ^= low
    return tuple(out)


@total_ordering
@dataclass(frozen=True, slots=True, eq=True)
class ColorSet:
    """A subset of colors, ordered lexicographically on its sorted members."""

    mask: int

    @classmethod
    def of(cls, *colors: int) -> "ColorSet":
        return cls.from_colors(colors)

    @classmethod
    def from_colors(cls, colors: Iterable[int]) -> "ColorSet":
        mask = 0
        for c in colors:
            if not isinstance(c, int) or isinstance(c, bool):
                raise InvalidInputError(f"color must be an integer, got {c!r}")
            if c < 1 or c > MAX_COLORS:
                raise InvalidInputError(f"color {c} outside 1..{MAX_COLORS}")
            bit = 1 << (c - 1)
            if mask & bit:
                raise InvalidInputError(f"color {c} repeated")
            mask |= bit
        return cls(mask)

    @classmethod
    def parse(cls, text: str) -> "ColorSet":
        """Parse ``"1234"`` (one digit per color) or ``"1,2,10"``."""
        raw = text.strip().strip("{}[]")
        if not raw:
            return cls(0)
        if "," in raw or " " in raw:
            parts = [p for p in raw.replace(",", " ").split() if p]
        else:
            parts = list(raw)
        try:
            return cls.from_colors(int(p) for p in parts)
        except ValueError as exc:
            raise InvalidInputError(f"cannot parse color set {text!r}") from exc

    @property
    def members(self) -> tuple[int, ...]:
        return _bits(self.mask)

    def __iter__(self) -> Iterator[int]:
        return iter(self.members)

    def __len__(self) -> int:
        return self.mask.bit_count()

    def __contains__(self, color: object) -> bool:
        return isinstance(color, int) and color >= 1 and bool(self.mask >> (color - 1) & 1)

    def __lt__(self, other: "ColorSet") -> bool:
        if not isinstance(other, ColorSet):
            return NotImplemented
        return self.members < other.members

    def __or__(self, other: "ColorSet") -> "ColorSet":
        return ColorSet(self.mask | other.mask)

    def __and__(self, other: "ColorSet") -> "ColorSet":
        return ColorSet(self.mask & other.mask)

    def __sub__(self, other: "ColorSet") -> "ColorSet":
        return ColorSet(self.mask & ~other.mask)

    def with_color(self, color: int) -> "ColorSet":
        return ColorSet(self.mask | (1 << (color - 1)))

    def without(self, color: int) -> "ColorSet":
        return ColorSet(self.mask & ~(1 << (color - 1)))

    def issubset(self, other: "ColorSet") -> bool:
        return self.mask & ~other.mask == 0

    @property
    def max_color(self) -> int:
        return self.mask.bit_length()

    def label(self) -> str:
        """Short notation: ``1234`` when every color is a digit, else ``1,10``."""
        members = self.members
        if not members:
            return "{}"
        if members[-1] <= 9:
            return "".join(str(c) for c in members)
        return ",".join(str(c) for c in members)

    def __repr__(self) -> str:
        return f"ColorSet({self.label()})"


@dataclass(frozen=True, slots=True)
class Stick:
    packet: ColorSet
    members: tuple[ColorSet, ...]


def check_colors(n: int) -> None:
    if not isinstance(n, int) or n < 1 or n > MAX_COLORS:
        raise InvalidInputError(f"color count n={n!r} outside 1..{MAX_COLORS}")


def check_dimension(n: int, d: int) -> None:
    check_colors(n)
    if not isinstance(d, int) or d < 1 or d > n:
        raise InvalidInputError(f"dimension d={d!r} outside 1..n={n}")


def full_set(n: int) -> ColorSet:
    return ColorSet((1 << n) - 1)


def involute(x: ColorSet, n: int) -> ColorSet:
    """Apply ``i -> n+1-i`` elementwise."""
    check_colors(n)
    if x.max_color > n:
        raise InvalidInputError(f"{x.label()} is not a subset of [{n}]")
    mask = 0
    for c in x.members:
        mask |= 1 << (n - c)
    return ColorSet(mask)


def is_symmetric_set(x: ColorSet, n: int) -> bool:
    return involute(x, n) == x


def stick_members(g: ColorSet) -> Stick:
    """The ``(|G|-1)``-subsets of ``G`` in lexicographic order."""
    if len(g) < 2:
        raise InvalidInputError(f"a stick needs a packet of size >= 2, got {g.label()}")
    # dropping the largest color gives the lex-smallest member
    members = tuple(g.without(c) for c in reversed(g.members))
    return Stick(packet=g, members=members)


@lru_cache(maxsize=None)
def enumerate_packets(n: int, k: int) -> tuple[ColorSet, ...]:
    """All k-subsets of [n] in lexicographic order."""
    check_colors(n)
    if not isinstance(k, int) or k < 0 or k > n:
        raise InvalidInputError(f"packet size k={k!r} outside 0..n={n}")
    return tuple(ColorSet.from_colors(c) for c in combinations(range(1, n + 1), k))


def symmetric_label(color: int, n: int) -> int:
    """Symmetric display label: the involution becomes negation, the middle color 0."""
    check_colors(n)
    if color < 1 or color > n:
        raise InvalidInputError(f"color {color} outside 1..{n}")
    m, odd = divmod(n, 2)
    if odd:
        return color - (m + 1)
    return color - m - 1 if color <= m else color - m


def from_symmetric_label(label: int, n: int) -> int:
    check_colors(n)
    m, odd = divmod(n, 2)
    if odd:
        if abs(label) > m:
            raise InvalidInputError(f"symmetric label {label} outside -{m}..{m}")
        return label + m + 1
    if label == 0 or abs(label) > m:
        raise InvalidInputError(f"symmetric label {label} outside +-1..+-{m}")
    return label + m + 1 if label < 0 else label + m
