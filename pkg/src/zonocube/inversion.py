"""Inversion sets, Ziegler's bi-convexity condition and symmetry classes.

An inversion set of ``Z(n, d)`` is a family of ``(d+1)``-subsets of ``[n]``.
It encodes a cubillage iff its intersection with every stick ``Gr(G, d+1)``,
``|G| = d+2``, is an initial or a final interval of the stick.

The checks run on packet-index bitsets over a cached :class:`Trellis`; the
public types carry ``frozenset[ColorSet]`` members.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterable

from .colors import ColorSet, check_dimension, enumerate_packets, involute, stick_members
from .errors import InvalidInputError, NotBiConvexError


@dataclass(frozen=True, eq=False)
class Trellis:
    """Incidence structure: vertices ``Gr([n], d+1)``, sticks ``Gr([n], d+2)``."""

    n: int
    d: int
    packets: tuple[ColorSet, ...]
    sticks: tuple[ColorSet, ...]
    # packet indices of each stick, in the stick's lex order
    stick_vertices: tuple[tuple[int, ...], ...]
    # (stick id, position) pairs for each packet
    incidence: tuple[tuple[tuple[int, int], ...], ...]
    # packet index of the involute of each packet
    mirror: tuple[int, ...]
    index: dict[ColorSet, int] = field(repr=False)
    allowed: frozenset[int] = field(repr=False)

    def encode(self, members: Iterable[ColorSet]) -> int:
        bits = 0
        for f in members:
            try:
                bits |= 1 << self.index[f]
            except KeyError:
                raise InvalidInputError(
                    f"{f.label()} is not a ({self.d + 1})-subset of [{self.n}]"
                ) from None
        return bits

    def decode(self, bits: int) -> frozenset[ColorSet]:
        out = []
        packets = self.packets
        while bits:
            low = bits & -bits
            out.append(packets[low.bit_length() - 1])
            bits ^= low
        return frozenset(out)

    def mirror_bits(self, bits: int) -> int:
        out = 0
        mirror = self.mirror
        while bits:
            low = bits & -bits
            out |= 1 << mirror[low.bit_length() - 1]
            bits ^= low
        return out

    @property
    def full_bits(self) -> int:
        return (1 << len(self.packets)) - 1

    def pattern(self, bits: int, stick: int) -> int:
        p = 0
        for pos, v in enumerate(self.stick_vertices[stick]):
            if bits >> v & 1:
                p |= 1 << pos
        return p

    def first_violation(self, bits: int) -> int | None:
        allowed = self.allowed
        for s in range(len(self.sticks)):
            if self.pattern(bits, s) not in allowed:
                return s
        return None

    def local_violation(self, bits: int, vertex: int) -> int | None:
        """First violated stick among those through ``vertex``."""
        allowed = self.allowed
        for s, _ in self.incidence[vertex]:
            if self.pattern(bits, s) not in allowed:
                return s
        return None


def _allowed_patterns(length: int) -> frozenset[int]:
    full = (1 << length) - 1
    initial = {(1 << j) - 1 for j in range(length + 1)}
    final = {full ^ ((1 << j) - 1) for j in range(length + 1)}
    return frozenset(initial | final)


@lru_cache(maxsize=None)
def trellis(n: int, d: int) -> Trellis:
    check_dimension(n, d)
    packets = enumerate_packets(n, d + 1) if d + 1 <= n else ()
    sticks = enumerate_packets(n, d + 2) if d + 2 <= n else ()
    index = {f: i for i, f in enumerate(packets)}
    stick_vertices = tuple(
        tuple(index[m] for m in stick_members(g).members) for g in sticks
    )
    incidence: list[list[tuple[int, int]]] = [[] for _ in packets]
    for s, verts in enumerate(stick_vertices):
        for pos, v in enumerate(verts):
            incidence[v].append((s, pos))
    mirror = tuple(index[involute(f, n)] for f in packets)
    return Trellis(
        n=n,
        d=d,
        packets=packets,
        sticks=sticks,
        stick_vertices=stick_vertices,
        incidence=tuple(tuple(x) for x in incidence),
        mirror=mirror,
        index=index,
        allowed=_allowed_patterns(d + 2),
    )


@dataclass(frozen=True)
class InversionSet:
    """A raw, possibly invalid, family of ``(d+1)``-subsets of ``[n]``."""

    n: int
    d: int
    members: frozenset[ColorSet]

    def __post_init__(self) -> None:
        check_dimension(self.n, self.d)
        if not isinstance(self.members, frozenset):
            object.__setattr__(self, "members", frozenset(self.members))
        for f in self.members:
            if len(f) != self.d + 1 or f.max_color > self.n:
                raise InvalidInputError(
                    f"{f.label()} is not a ({self.d + 1})-subset of [{self.n}]"
                )

    @property
    def rank(self) -> int:
        return len(self.members)

    def __contains__(self, packet: object) -> bool:
        return packet in self.members

    def sorted_members(self) -> tuple[ColorSet, ...]:
        return tuple(sorted(self.members))

    def canonical_key(self) -> tuple:
        """Sort key: rank, then lex order of the sorted member list."""
        return (self.rank, tuple(f.members for f in self.sorted_members()))

    def bits(self) -> int:
        return trellis(self.n, self.d).encode(self.members)

    def with_added(self, *packets: ColorSet) -> "InversionSet":
        return InversionSet(self.n, self.d, self.members | frozenset(packets))

    def with_removed(self, *packets: ColorSet) -> "InversionSet":
        return InversionSet(self.n, self.d, self.members - frozenset(packets))

    def __repr__(self) -> str:
        body = ",".join(f.label() for f in self.sorted_members())
        return f"{type(self).__name__}(n={self.n}, d={self.d}, {{{body}}})"


@dataclass(frozen=True, repr=False)
class Cubillage(InversionSet):
    """An inversion set that satisfies Ziegler's condition."""

    def __post_init__(self) -> None:
        super().__post_init__()
        found = validate(InversionSet(self.n, self.d, self.members))
        if isinstance(found, Violation):
            raise NotBiConvexError(
                f"inversion set violates Ziegler's condition on stick {found.stick.label()}",
                stick=found.stick,
            )


def _trusted(n: int, d: int, members: frozenset[ColorSet]) -> Cubillage:
    """Build a Cubillage whose validity the caller has already established."""
    q = object.__new__(Cubillage)
    object.__setattr__(q, "n", n)
    object.__setattr__(q, "d", d)
    object.__setattr__(q, "members", members)
    return q


def from_bits(n: int, d: int, bits: int) -> Cubillage:
    """Trusted constructor from a packet bitset that is known to be valid."""
    return _trusted(n, d, trellis(n, d).decode(bits))


@dataclass(frozen=True)
class Violation:
    stick: ColorSet
    present: tuple[ColorSet, ...]


def validate(u: InversionSet) -> Cubillage | Violation:
    """Return the cubillage, or the lexicographically first violated stick."""
    t = trellis(u.n, u.d)
    bits = t.encode(u.members)
    s = t.first_violation(bits)
    if s is None:
        return _trusted(u.n, u.d, frozenset(u.members))
    g = t.sticks[s]
    present = tuple(m for m in stick_members(g).members if m in u.members)
    return Violation(stick=g, present=present)


def require_valid(u: InversionSet) -> Cubillage:
    found = validate(u)
    if isinstance(found, Violation):
        raise NotBiConvexError(
            f"inversion set violates Ziegler's condition on stick {found.stick.label()}",
            stick=found.stick,
        )
    return found


def make_cubillage(n: int, d: int, packets: Iterable[ColorSet | str]) -> Cubillage:
    """Convenience constructor accepting ``ColorSet`` or short notation like ``"234"``."""
    members = frozenset(p if isinstance(p, ColorSet) else ColorSet.parse(p) for p in packets)
    return require_valid(InversionSet(n, d, members))


def is_addable(u: InversionSet, packet: ColorSet) -> bool:
    """Whether ``u + {packet}`` passes every stick through ``packet``."""
    t = trellis(u.n, u.d)
    if packet in u.members:
        return False
    v = t.index.get(packet)
    if v is None:
        raise InvalidInputError(f"{packet.label()} is not a ({u.d + 1})-subset of [{u.n}]")
    bits = t.encode(u.members) | (1 << v)
    return t.local_violation(bits, v) is None


def is_removable(u: InversionSet, packet: ColorSet) -> bool:
    """Whether ``u - {packet}`` passes every stick through ``packet``."""
    t = trellis(u.n, u.d)
    if packet not in u.members:
        return False
    v = t.index[packet]
    bits = t.encode(u.members) & ~(1 << v)
    return t.local_violation(bits, v) is None


def standard(n: int, d: int) -> Cubillage:
    check_dimension(n, d)
    return _trusted(n, d, frozenset())


def antistandard(n: int, d: int) -> Cubillage:
    return _trusted(n, d, frozenset(trellis(n, d).packets))


def complement(q: Cubillage) -> Cubillage:
    t = trellis(q.n, q.d)
    bits = t.full_bits & ~t.encode(q.members)
    assert t.first_violation(bits) is None, "complement of a bi-convex set must be bi-convex"
    return from_bits(q.n, q.d, bits)


def involuted(q: Cubillage) -> Cubillage:
    """The cubillage ``Q°`` with ``Inv(Q°) = Inv(Q)°``."""
    t = trellis(q.n, q.d)
    bits = t.mirror_bits(t.encode(q.members))
    assert t.first_violation(bits) is None, "involute of a bi-convex set must be bi-convex"
    return from_bits(q.n, q.d, bits)


@dataclass(frozen=True)
class SymmetryClass:
    symmetric: bool
    skew_symmetric: bool


def symmetry_class(q: InversionSet) -> SymmetryClass:
    t = trellis(q.n, q.d)
    bits = t.encode(q.members)
    mirrored = t.mirror_bits(bits)
    return SymmetryClass(
        symmetric=mirrored == bits,
        skew_symmetric=mirrored == t.full_bits & ~bits,
    )


def rank(q: InversionSet) -> int:
    return q.rank
