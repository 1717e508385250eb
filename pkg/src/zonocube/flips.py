"""Type-A capsid flips and the symmetric simple, double and barrel flips.

A raising type-A flip adds one packet ``F`` to the inversion set. On a
symmetric cubillage the symmetric flips are:

* simple: one packet with ``F° = F``;
* double: the pair ``{F, F°}`` of capsids with no common cube, which for
  packets means ``|F ∩ F°| <= d-1``;
* barrel: the whole stick of a symmetric ``(d+2)``-subset ``G``.

Lowering flips remove the same packets. Detection results come back in
canonical order: kind, then lex order of the packets.
"""
from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Iterable

from .colors import ColorSet, involute, stick_members
from .errors import FlipNotApplicableError, InvalidInputError, PreconditionError
from .geometry import barrel_fragment_exists
from .inversion import Cubillage, Trellis, from_bits, symmetry_class, trellis


class FlipKind(str, Enum):
    TYPE_A = "typeA"
    SIMPLE = "simple"
    DOUBLE = "double"
    BARREL = "barrel"

    def delta(self, d: int) -> int:
        """Rank change of a raising flip of this kind in dimension ``d``."""
        if self is FlipKind.DOUBLE:
            return 2
        if self is FlipKind.BARREL:
            return d + 2
        return 1

    @property
    def order(self) -> int:
        return _KIND_ORDER[self]


_KIND_ORDER = {FlipKind.TYPE_A: 0, FlipKind.SIMPLE: 1, FlipKind.DOUBLE: 2, FlipKind.BARREL: 3}


class Direction(str, Enum):
    RAISE = "raise"
    LOWER = "lower"


@dataclass(frozen=True)
class SymFlip:
    """Flip descriptor: its kind and the packets it adds or removes.

    ``TYPE_A`` descriptors carry one arbitrary packet and are what the type-A
    digraphs use; the three symmetric kinds obey the shapes in the module
    docstring. ``barrel`` holds ``G`` for barrel flips.
    """

    kind: FlipKind
    packets: tuple[ColorSet, ...]
    barrel: ColorSet | None = None

    @classmethod
    def type_a(cls, packet: ColorSet) -> "SymFlip":
        return cls(FlipKind.TYPE_A, (packet,))

    @classmethod
    def simple(cls, packet: ColorSet) -> "SymFlip":
        return cls(FlipKind.SIMPLE, (packet,))

    @classmethod
    def double(cls, packet: ColorSet, n: int) -> "SymFlip":
        pair = sorted((packet, involute(packet, n)))
        return cls(FlipKind.DOUBLE, tuple(pair))

    @classmethod
    def barrel_of(cls, g: ColorSet) -> "SymFlip":
        return cls(FlipKind.BARREL, stick_members(g).members, barrel=g)

    def sort_key(self) -> tuple:
        return (self.kind.order, tuple(p.members for p in self.packets))

    def label(self) -> str:
        if self.kind is FlipKind.BARREL and self.barrel is not None:
            return f"barrel({self.barrel.label()})"
        return f"{self.kind.value}{{{','.join(p.label() for p in self.packets)}}}"


def _check_symmetric(q: Cubillage) -> None:
    if not symmetry_class(q).symmetric:
        raise PreconditionError(f"symmetric flips need a symmetric cubillage, got {q!r}")


def _stick_ok(t: Trellis, bits: int, vertices: Iterable[int]) -> int | None:
    """First violated stick through any of ``vertices``, or None."""
    seen: set[int] = set()
    allowed = t.allowed
    for v in vertices:
        for s, _ in t.incidence[v]:
            if s in seen:
                continue
            seen.add(s)
            if t.pattern(bits, s) not in allowed:
                return s
    return None


def raising_flips_A(q: Cubillage) -> list[ColorSet]:
    """Packets ``F`` outside ``Inv(Q)`` with ``Inv(Q) + {F}`` bi-convex."""
    t = trellis(q.n, q.d)
    bits = t.encode(q.members)
    out = []
    for v in range(len(t.packets)):
        if bits >> v & 1:
            continue
        if t.local_violation(bits | 1 << v, v) is None:
            out.append(t.packets[v])
    return out


def lowering_flips_A(q: Cubillage) -> list[ColorSet]:
    t = trellis(q.n, q.d)
    bits = t.encode(q.members)
    out = []
    for v in range(len(t.packets)):
        if not bits >> v & 1:
            continue
        if t.local_violation(bits & ~(1 << v), v) is None:
            out.append(t.packets[v])
    return out


def _symmetric_flips(q: Cubillage, direction: Direction, use_fragment_check: bool) -> list[SymFlip]:
    _check_symmetric(q)
    t = trellis(q.n, q.d)
    n, d = q.n, q.d
    bits = t.encode(q.members)
    raising = direction is Direction.RAISE

    def present(v: int) -> bool:
        return bool(bits >> v & 1)

    def toggled(b: int, v: int) -> int:
        return b | 1 << v if raising else b & ~(1 << v)

    simple: list[SymFlip] = []
    double: list[SymFlip] = []
    for v, f in enumerate(t.packets):
        if present(v) == raising:
            continue
        w = t.mirror[v]
        if w == v:
            if t.local_violation(toggled(bits, v), v) is None:
                simple.append(SymFlip.simple(f))
            continue
        if w < v or len(f & t.packets[w]) > d - 1:
            continue
        step = toggled(bits, v)
        if t.local_violation(step, v) is not None:
            continue
        if t.local_violation(toggled(step, w), w) is None:
            double.append(SymFlip(FlipKind.DOUBLE, (f, t.packets[w])))

    barrel: list[SymFlip] = []
    for s, g in enumerate(t.sticks):
        if involute(g, n) != g:
            continue
        verts = t.stick_vertices[s]
        mask = 0
        for v in verts:
            mask |= 1 << v
        if raising and bits & mask:
            continue
        if not raising and bits & mask != mask:
            continue
        after = bits | mask if raising else bits & ~mask
        if _stick_ok(t, after, verts) is not None:
            continue
        if use_fragment_check and not barrel_fragment_exists(q, g):
            continue
        barrel.append(SymFlip.barrel_of(g))
    return simple + double + barrel


def symmetric_raising_flips(q: Cubillage, use_fragment_check: bool = True) -> list[SymFlip]:
    return _symmetric_flips(q, Direction.RAISE, use_fragment_check)


def symmetric_lowering_flips(q: Cubillage, use_fragment_check: bool = True) -> list[SymFlip]:
    return _symmetric_flips(q, Direction.LOWER, use_fragment_check)


def _as_flip(f: SymFlip | ColorSet) -> SymFlip:
    if isinstance(f, ColorSet):
        return SymFlip.type_a(f)
    return f


def _check_shape(q: Cubillage, flip: SymFlip) -> None:
    n, d = q.n, q.d
    packets = flip.packets
    for p in packets:
        if len(p) != d + 1 or p.max_color > n:
            raise InvalidInputError(f"{p.label()} is not a ({d + 1})-subset of [{n}]")
    if flip.kind is FlipKind.TYPE_A:
        if len(packets) != 1:
            raise FlipNotApplicableError("a type-A flip moves exactly one packet", reason="shape")
        return
    if not symmetry_class(q).symmetric:
        raise FlipNotApplicableError(
            f"{flip.label()} needs a symmetric cubillage", reason="asymmetric"
        )
    if flip.kind is FlipKind.SIMPLE:
        if len(packets) != 1 or involute(packets[0], n) != packets[0]:
            raise FlipNotApplicableError(
                f"{flip.label()}: a simple flip needs one self-symmetric packet", reason="shape"
            )
    elif flip.kind is FlipKind.DOUBLE:
        if len(packets) != 2 or involute(packets[0], n) != packets[1] or packets[0] == packets[1]:
            raise FlipNotApplicableError(
                f"{flip.label()}: a double flip needs a pair {{F, F°}} with F != F°",
                reason="shape",
            )
        if len(packets[0] & packets[1]) > d - 1:
            raise FlipNotApplicableError(
                f"{flip.label()}: the capsids share a cube", reason="shape"
            )
    else:
        g = flip.barrel
        if g is None or involute(g, n) != g or packets != stick_members(g).members:
            raise FlipNotApplicableError(
                f"{flip.label()}: a barrel flip needs the full stick of a symmetric packet",
                reason="shape",
            )


def apply_flip(
    q: Cubillage,
    flip: SymFlip | ColorSet,
    direction: Direction | str = Direction.RAISE,
    *,
    use_fragment_check: bool = True,
) -> Cubillage:
    """Apply a flip, rejecting it with a reason when it is not applicable."""
    flip = _as_flip(flip)
    direction = Direction(direction)
    _check_shape(q, flip)
    t = trellis(q.n, q.d)
    bits = t.encode(q.members)
    raising = direction is Direction.RAISE
    verts = [t.index[p] for p in flip.packets]
    for v in verts:
        if bool(bits >> v & 1) == raising:
            state = "already" if raising else "not"
            raise FlipNotApplicableError(
                f"{flip.label()}: {t.packets[v].label()} is {state} an inversion",
                reason="state",
            )

    def moved(b: int, vs: Iterable[int]) -> int:
        for v in vs:
            b = b | 1 << v if raising else b & ~(1 << v)
        return b

    if flip.kind is FlipKind.DOUBLE:
        step = moved(bits, verts[:1])
        s = _stick_ok(t, step, verts[:1])
        if s is not None:
            raise FlipNotApplicableError(
                f"{flip.label()}: intermediate step violates stick {t.sticks[s].label()}",
                reason="validity",
            )
    after = moved(bits, verts)
    s = _stick_ok(t, after, verts)
    if s is not None:
        raise FlipNotApplicableError(
            f"{flip.label()}: result violates stick {t.sticks[s].label()}", reason="validity"
        )
    if flip.kind is FlipKind.BARREL and use_fragment_check:
        assert flip.barrel is not None
        if not barrel_fragment_exists(q, flip.barrel):
            raise FlipNotApplicableError(
                f"{flip.label()}: the cubes of the barrel do not form a fragment",
                reason="fragment",
            )
    return from_bits(q.n, q.d, after)


def double_decomposition(
    q: Cubillage, flip: SymFlip, direction: Direction | str = Direction.RAISE
) -> tuple[ColorSet, ColorSet] | None:
    """An order of the two type-A flips realizing a double flip, if any."""
    direction = Direction(direction)
    first, second = flip.packets
    for a, b in ((first, second), (second, first)):
        try:
            mid = apply_flip(q, a, direction)
            apply_flip(mid, b, direction)
        except FlipNotApplicableError:
            continue
        return (a, b)
    return None


def barrel_decomposition(
    q: Cubillage, g: ColorSet, direction: Direction | str = Direction.RAISE
) -> list[ColorSet] | None:
    """An order of the ``d+2`` type-A flips realizing the barrel flip at ``G``."""
    direction = Direction(direction)
    remaining = list(stick_members(g).members)

    def search(current: Cubillage, left: list[ColorSet]) -> list[ColorSet] | None:
        if not left:
            return []
        for i, p in enumerate(left):
            try:
                nxt = apply_flip(current, p, direction)
            except FlipNotApplicableError:
                continue
            rest = search(nxt, left[:i] + left[i + 1 :])
            if rest is not None:
                return [p, *rest]
        return None

    return search(q, remaining)


@dataclass(frozen=True)
class BarrelCriteria:
    """Both barrel applicability criteria at one symmetric stick."""

    barrel: ColorSet
    direction: Direction
    validity: bool
    fragment: bool


def barrel_criteria(q: Cubillage) -> list[BarrelCriteria]:
    """Evaluate validity-only and fragment criteria at every symmetric stick.

    Only sticks whose filling is uniform (empty for raising, full for
    lowering) are listed.
    """
    _check_symmetric(q)
    t = trellis(q.n, q.d)
    bits = t.encode(q.members)
    out = []
    for s, g in enumerate(t.sticks):
        if involute(g, q.n) != g:
            continue
        verts = t.stick_vertices[s]
        mask = 0
        for v in verts:
            mask |= 1 << v
        if bits & mask == 0:
            direction, after = Direction.RAISE, bits | mask
        elif bits & mask == mask:
            direction, after = Direction.LOWER, bits & ~mask
        else:
            continue
        out.append(
            BarrelCriteria(
                barrel=g,
                direction=direction,
                validity=_stick_ok(t, after, verts) is None,
                fragment=barrel_fragment_exists(q, g),
            )
        )
    return out
