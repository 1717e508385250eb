"""Structure maps between flip digraphs.

* ``red``: delete the middle color of a symmetric cubillage of ``Z(2m+1, d)``;
* ``cor``: cut a symmetric cubillage of ``Z(2m, d)``, ``d`` even, by the
  axial subspace (see :func:`zonocube.geometry.core`);
* :func:`chain_lift`: sweep a maximal chain of ``Z(n, d)`` into one
  cubillage of ``Z(n, d+1)``.

:func:`check_digraph_map` tests any node map for arrow consistency,
surjectivity, fullness and connected fibers. An arrow whose endpoints have
the same image is a loop, which is allowed.
"""
from __future__ import annotations

from collections import Counter, defaultdict
from dataclasses import dataclass, field
import logging
from typing import Callable

import networkx as nx

from .colors import ColorSet, enumerate_packets, stick_members
from .digraph import Chain, FlipDigraph
from .errors import (
    BarrelHoleError,
    InvalidInputError,
    LiftInconsistencyError,
    NotBiConvexError,
    PreconditionError,
)
from .flips import FlipKind
from .geometry import core
from .inversion import Cubillage, InversionSet, require_valid, symmetry_class

logger = logging.getLogger(__name__)


def _drop_middle(x: ColorSet, m: int) -> ColorSet:
    low = x.mask & ((1 << m) - 1)
    return ColorSet(low | (x.mask >> (m + 1)) << m)


def reduce_middle(q: Cubillage) -> Cubillage:
    """``red(Q)``: members avoiding the middle color, relabeled into ``[2m]``."""
    n, d = q.n, q.d
    if n % 2 == 0:
        raise PreconditionError(f"red needs an odd number of colors, got n={n}")
    if d > n - 1:
        raise PreconditionError(f"red needs d <= n-1, got n={n}, d={d}")
    if not symmetry_class(q).symmetric:
        raise PreconditionError("red needs a symmetric cubillage")
    m = n // 2
    mid = m + 1
    members = frozenset(_drop_middle(f, m) for f in q.members if mid not in f)
    out = require_valid(InversionSet(n - 1, d, members))
    assert symmetry_class(out).symmetric, "red must preserve symmetry"
    return out


@dataclass(frozen=True, eq=False)
class DigraphMap:
    name: str
    source: FlipDigraph
    target: FlipDigraph
    mapping: tuple[int, ...]

    def __post_init__(self) -> None:
        if len(self.mapping) != len(self.source.nodes):
            raise InvalidInputError("a digraph map must be total on the source nodes")
        bad = [v for v in self.mapping if not 0 <= v < len(self.target.nodes)]
        if bad:
            raise InvalidInputError(f"map lands outside the target at ids {bad[:5]}")


def map_nodes(
    name: str,
    source: FlipDigraph,
    target: FlipDigraph,
    fn: Callable[[Cubillage], Cubillage],
) -> DigraphMap:
    return DigraphMap(name, source, target, tuple(target.node_id(fn(q)) for q in source.nodes))


def red_map(source: FlipDigraph, target: FlipDigraph) -> DigraphMap:
    """``red: SQ(2m+1, d) -> SQ(2m, d)``."""
    return map_nodes("red", source, target, reduce_middle)


def core_map(source: FlipDigraph, target: FlipDigraph) -> DigraphMap:
    """``cor: SQ(2m, d) -> Q(m, d/2)``."""
    return map_nodes("cor", source, target, core)


@dataclass(frozen=True)
class Fiber:
    target: int
    members: tuple[int, ...]
    connected: bool


@dataclass
class MorphismReport:
    name: str
    arrow_consistent: bool
    surjective: bool
    full: bool
    fibers_connected: bool
    fibers: list[Fiber] = field(default_factory=list)
    # "<source kind>-><target kind>" or "<source kind>->loop"
    transitions: dict[str, int] = field(default_factory=dict)
    witnesses: list[dict] = field(default_factory=list)

    def to_dict(self) -> dict:
        return {
            "map": self.name,
            "arrow_consistent": self.arrow_consistent,
            "surjective": self.surjective,
            "full": self.full,
            "fibers_connected": self.fibers_connected,
            "fiber_sizes": sorted(len(f.members) for f in self.fibers),
            "transitions": dict(sorted(self.transitions.items())),
            "witnesses": self.witnesses,
        }


def _fibers(mp: DigraphMap) -> list[Fiber]:
    groups: dict[int, list[int]] = defaultdict(list)
    for v, image in enumerate(mp.mapping):
        groups[image].append(v)
    out = []
    for image in sorted(groups):
        members = groups[image]
        g = nx.Graph()
        g.add_nodes_from(members)
        for v in members:
            for e in mp.source.out_edges(v):
                if mp.mapping[e.dst] == image:
                    g.add_edge(v, e.dst)
        out.append(Fiber(image, tuple(members), nx.is_connected(g)))
    return out


def red_fibers(mp: DigraphMap) -> list[Fiber]:
    """Fibers of a map with connectivity through map-invisible flips."""
    return _fibers(mp)


def check_digraph_map(mp: DigraphMap) -> MorphismReport:
    transitions: Counter[str] = Counter()
    witnesses: list[dict] = []
    covered: set[tuple[int, int]] = set()
    for e in mp.source.edges:
        a, b = mp.mapping[e.src], mp.mapping[e.dst]
        if a == b:
            transitions[f"{e.kind.value}->loop"] += 1
            continue
        image = mp.target.edge_between(a, b)
        if image is None:
            witnesses.append({"edge": [e.src, e.dst], "kind": e.kind.value, "image": [a, b]})
            continue
        covered.add((a, b))
        transitions[f"{e.kind.value}->{image.kind.value}"] += 1

    surjective = set(mp.mapping) == set(range(len(mp.target.nodes)))
    missing = [(e.src, e.dst) for e in mp.target.edges if (e.src, e.dst) not in covered]
    for src, dst in missing[:10]:
        witnesses.append({"uncovered_target_edge": [src, dst]})
    fibers = _fibers(mp)
    report = MorphismReport(
        name=mp.name,
        arrow_consistent=not any("edge" in w for w in witnesses),
        surjective=surjective,
        full=surjective and not missing,
        fibers_connected=all(f.connected for f in fibers),
        fibers=fibers,
        transitions=dict(transitions),
        witnesses=witnesses,
    )
    logger.info("Map %s: %s", mp.name, report.to_dict())
    return report


def identity_map(g: FlipDigraph) -> DigraphMap:
    return DigraphMap("id", g, g, tuple(range(len(g.nodes))))


def chain_lift(g: FlipDigraph, chain: Chain) -> Cubillage:
    """Sweep a standard-to-antistandard chain into a cubillage of ``Z(n, d+1)``.

    Each packet gets the step at which the chain adds it. A ``(d+2)``-subset
    ``G`` is inverted in the lift iff its stick is added in reverse lex
    order.
    """
    n, d = g.n, g.d
    for e in chain.edges:
        if e.kind is FlipKind.BARREL:
            raise BarrelHoleError(
                f"chain crosses the barrel flip {e.flip.label()} at step {e.src}->{e.dst}"
            )
    if g.cls == "symmetric" and (n % 2 or d % 2 == 0):
        raise PreconditionError(f"symmetric chain lifting needs n even and d odd, got ({n},{d})")
    if d + 1 > n:
        raise PreconditionError(f"cannot lift into Z({n},{d + 1})")
    first, last = g.nodes[chain.nodes[0]], g.nodes[chain.nodes[-1]]
    packets = enumerate_packets(n, d + 1)
    if first.members or len(last.members) != len(packets):
        raise PreconditionError("a lifted chain must run from standard to antistandard")

    step: dict[ColorSet, int] = {}
    for i, e in enumerate(chain.edges):
        for p in e.flip.packets:
            step[p] = i

    members = []
    for G in enumerate_packets(n, d + 2) if d + 2 <= n else ():
        seq = [step[p] for p in stick_members(G).members]
        if all(a < b for a, b in zip(seq, seq[1:])):
            continue
        if all(a > b for a, b in zip(seq, seq[1:])):
            members.append(G)
            continue
        raise LiftInconsistencyError(f"stick {G.label()} is swept out of order: steps {seq}")
    try:
        lifted = require_valid(InversionSet(n, d + 1, frozenset(members)))
    except NotBiConvexError as exc:
        raise LiftInconsistencyError(f"lift is not a cubillage: {exc.message}") from exc
    if g.cls == "symmetric":
        assert symmetry_class(lifted).skew_symmetric, "symmetric chains lift to skew cubillages"
    return lifted
