"""Exhaustive enumeration of cubillages by symmetry class.

Enumeration backtracks over packets in lexicographic order and prunes a
branch as soon as some stick can no longer be completed to an initial or a
final interval. The symmetric class decides an involution orbit ``{F, F°}``
at once; the skew class decides an orbit with opposite states for its two
packets.

:func:`bfs_closure` is the independent cross-check: the closure of a start
cubillage under the raising and lowering flips of a generator.
"""
from __future__ import annotations

from collections import deque
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from enum import Enum
import logging
from typing import Iterable, Protocol

from .colors import check_dimension
from .config import load_settings
from .errors import BudgetExceededError, InvalidInputError
from .flips import (
    Direction,
    SymFlip,
    apply_flip,
    lowering_flips_A,
    raising_flips_A,
    symmetric_lowering_flips,
    symmetric_raising_flips,
)
from .inversion import Cubillage, Trellis, from_bits, trellis

logger = logging.getLogger(__name__)


class CubillageClass(str, Enum):
    ALL = "all"
    SYMMETRIC = "symmetric"
    SKEW = "skew"


def canonical_sort(items: Iterable[Cubillage]) -> list[Cubillage]:
    """Deduplicate and order by rank, then lex order of the member list."""
    unique = {q.members: q for q in items}
    return sorted(unique.values(), key=lambda q: q.canonical_key())


# --- backtracking -----------------------------------------------------------

@dataclass(frozen=True)
class _Unit:
    """Packets decided together, with the state each gets on the 'in' branch."""

    on: tuple[int, ...]
    off: tuple[int, ...] = ()


def _units(t: Trellis, cls: CubillageClass) -> list[_Unit] | None:
    """Decision units in lex order of their first packet; None if the class is empty."""
    if cls is CubillageClass.ALL:
        return [_Unit(on=(v,)) for v in range(len(t.packets))]
    out = []
    for v, w in enumerate(t.mirror):
        if w < v:
            continue
        if cls is CubillageClass.SYMMETRIC:
            out.append(_Unit(on=(v,) if v == w else (v, w)))
        elif v == w:
            # a self-symmetric packet cannot be mapped to its complement
            return None
        else:
            out.append(_Unit(on=(v,), off=(w,)))
    return out


class _Search:
    def __init__(self, t: Trellis, units: list[_Unit], budget: int):
        self.t = t
        self.units = units
        self.budget = budget
        self.state = [-1] * len(t.packets)
        self.found: list[int] = []

    def feasible(self, vertices: Iterable[int]) -> bool:
        """Every stick through ``vertices`` still completes to an interval."""
        t, state = self.t, self.state
        for v in vertices:
            for s, _ in t.incidence[v]:
                lo1 = lo0 = len(t.stick_vertices[s])
                hi1 = hi0 = -1
                for pos, u in enumerate(t.stick_vertices[s]):
                    x = state[u]
                    if x == 1:
                        lo1 = min(lo1, pos)
                        hi1 = pos
                    elif x == 0:
                        lo0 = min(lo0, pos)
                        hi0 = pos
                if not (hi1 < lo0 or hi0 < lo1):
                    return False
        return True

    def assign(self, unit: _Unit, inside: bool) -> None:
        for v in unit.on:
            self.state[v] = 1 if inside else 0
        for v in unit.off:
            self.state[v] = 0 if inside else 1

    def clear(self, unit: _Unit) -> None:
        for v in (*unit.on, *unit.off):
            self.state[v] = -1

    def record(self) -> None:
        bits = 0
        for v, x in enumerate(self.state):
            if x == 1:
                bits |= 1 << v
        self.found.append(bits)
        if len(self.found) > self.budget:
            raise BudgetExceededError(
                f"enumeration of ({self.t.n},{self.t.d}) exceeded the budget of {self.budget}"
            )

    def run(self, start: int = 0) -> None:
        """Complete units ``start..`` in every feasible way.

        Depth-first with an explicit stack; ``tried[k]`` counts the branches
        taken at unit ``k`` (0 = none, 1 = out, 2 = in).
        """
        last = len(self.units)
        tried = [0] * last
        depth = start
        while depth >= start:
            if depth == last:
                self.record()
                depth -= 1
                continue
            unit = self.units[depth]
            if tried[depth]:
                self.clear(unit)
            if tried[depth] == 2:
                tried[depth] = 0
                depth -= 1
                continue
            inside = tried[depth] == 1
            tried[depth] += 1
            self.assign(unit, inside)
            if self.feasible((*unit.on, *unit.off)):
                depth += 1


def _prefixes(search: _Search, depth: int) -> list[tuple[bool, ...]]:
    """Feasible decisions for the first ``depth`` units."""
    out: list[tuple[bool, ...]] = []

    def walk(level: int, acc: tuple[bool, ...]) -> None:
        if level == depth:
            out.append(acc)
            return
        unit = search.units[level]
        for inside in (False, True):
            search.assign(unit, inside)
            if search.feasible((*unit.on, *unit.off)):
                walk(level + 1, (*acc, inside))
            search.clear(unit)

    walk(0, ())
    return out


def _run_prefix(t: Trellis, units: list[_Unit], prefix: tuple[bool, ...], budget: int) -> list[int]:
    search = _Search(t, units, budget)
    for unit, inside in zip(units, prefix):
        search.assign(unit, inside)
    search.run(len(prefix))
    return search.found


def enumerate_cubillages(
    n: int,
    d: int,
    cls: CubillageClass | str = CubillageClass.ALL,
    *,
    budget: int | None = None,
    workers: int | None = None,
) -> list[Cubillage]:
    """All cubillages of ``Z(n, d)`` in the class, in canonical order."""
    check_dimension(n, d)
    try:
        cls = CubillageClass(cls)
    except ValueError:
        raise InvalidInputError(f"unknown class {cls!r}; use all, symmetric or skew") from None
    settings = load_settings()
    budget = settings.budget if budget is None else budget
    workers = settings.workers if workers is None else workers
    t = trellis(n, d)
    units = _units(t, cls)
    logger.info("Enumerating %s cubillages of Z(%d,%d) over %d packets", cls.value, n, d, len(t.packets))
    if units is None:
        return []

    if workers <= 1 or len(units) < 4:
        found = _run_prefix(t, units, (), budget)
    else:
        depth = min(len(units) - 1, max(2, (4 * workers).bit_length()))
        prefixes = _prefixes(_Search(t, units, budget), depth)
        with ThreadPoolExecutor(max_workers=workers) as pool:
            parts = list(pool.map(lambda p: _run_prefix(t, units, p, budget), prefixes))
        found = [bits for part in parts for bits in part]
        if len(found) > budget:
            raise BudgetExceededError(
                f"enumeration of ({n},{d}) exceeded the budget of {budget}"
            )
    result = canonical_sort(from_bits(n, d, bits) for bits in found)
    logger.info("Found %d %s cubillages of Z(%d,%d)", len(result), cls.value, n, d)
    return result


# --- flip generators and closure -------------------------------------------

class FlipGenerator(Protocol):
    """Raising and lowering neighbours of a cubillage under one family of flips."""

    def raising(self, q: Cubillage) -> list[tuple[SymFlip, Cubillage]]: ...

    def lowering(self, q: Cubillage) -> list[tuple[SymFlip, Cubillage]]: ...


class TypeAGenerator:
    def raising(self, q: Cubillage) -> list[tuple[SymFlip, Cubillage]]:
        return [(SymFlip.type_a(p), apply_flip(q, p)) for p in raising_flips_A(q)]

    def lowering(self, q: Cubillage) -> list[tuple[SymFlip, Cubillage]]:
        return [
            (SymFlip.type_a(p), apply_flip(q, p, Direction.LOWER)) for p in lowering_flips_A(q)
        ]


class SymmetricGenerator:
    def __init__(self, use_fragment_check: bool = True):
        self.use_fragment_check = use_fragment_check

    def raising(self, q: Cubillage) -> list[tuple[SymFlip, Cubillage]]:
        return [
            (f, apply_flip(q, f, use_fragment_check=self.use_fragment_check))
            for f in symmetric_raising_flips(q, self.use_fragment_check)
        ]

    def lowering(self, q: Cubillage) -> list[tuple[SymFlip, Cubillage]]:
        return [
            (f, apply_flip(q, f, Direction.LOWER, use_fragment_check=self.use_fragment_check))
            for f in symmetric_lowering_flips(q, self.use_fragment_check)
        ]


def generator_for(cls: CubillageClass | str, use_fragment_check: bool | None = None) -> FlipGenerator:
    cls = CubillageClass(cls)
    if cls is CubillageClass.ALL:
        return TypeAGenerator()
    if cls is CubillageClass.SYMMETRIC:
        if use_fragment_check is None:
            use_fragment_check = load_settings().fragment_check
        return SymmetricGenerator(use_fragment_check)
    raise InvalidInputError("skew cubillages carry no flip structure of their own")


def bfs_closure(
    start: Cubillage, generator: FlipGenerator, *, budget: int | None = None
) -> list[Cubillage]:
    """Closure of ``start`` under raising and lowering flips, canonically ordered."""
    budget = load_settings().budget if budget is None else budget
    seen = {start.members: start}
    queue = deque([start])
    while queue:
        q = queue.popleft()
        for _, nxt in (*generator.raising(q), *generator.lowering(q)):
            if nxt.members in seen:
                continue
            seen[nxt.members] = nxt
            if len(seen) > budget:
                logger.warning("Closure from %r stopped at the budget of %d", start, budget)
                raise BudgetExceededError(f"closure exceeded the budget of {budget}")
            queue.append(nxt)
    logger.info("Closure of %r has %d cubillages", start, len(seen))
    return canonical_sort(seen.values())
