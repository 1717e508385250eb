"""Flip digraphs over enumerated cubillages.

Node ids are positions in canonical (rank, lex) order; every export refers to
them. Edges go from ``src`` to ``dst`` along a raising flip.
"""
from __future__ import annotations

from collections import Counter
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from functools import cached_property
import logging
from typing import Iterator, Sequence

import networkx as nx

from .config import load_settings
from .enumeration import CubillageClass, FlipGenerator, canonical_sort, enumerate_cubillages, generator_for
from .errors import ConstructionError, InvalidInputError
from .flips import FlipKind, SymFlip
from .inversion import Cubillage

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Edge:
    src: int
    dst: int
    kind: FlipKind
    flip: SymFlip

    def sort_key(self) -> tuple:
        return (self.src, self.dst, self.kind.order)


@dataclass(frozen=True)
class Chain:
    """A source-to-sink path: ``nodes[i] -> nodes[i+1]`` along ``edges[i]``."""

    nodes: tuple[int, ...]
    edges: tuple[Edge, ...]

    def __len__(self) -> int:
        return len(self.edges)


@dataclass(frozen=True)
class ChainSet:
    chains: list[Chain]
    truncated: bool

    def __iter__(self) -> Iterator[Chain]:
        return iter(self.chains)

    def __len__(self) -> int:
        return len(self.chains)


@dataclass(eq=False)
class FlipDigraph:
    n: int
    d: int
    cls: str
    nodes: tuple[Cubillage, ...]
    edges: tuple[Edge, ...]
    index: dict[frozenset, int] = field(init=False, repr=False)

    def __post_init__(self) -> None:
        self.index = {q.members: i for i, q in enumerate(self.nodes)}
        if len(self.index) != len(self.nodes):
            raise ConstructionError("digraph node list contains duplicates")

    def node_id(self, q: Cubillage) -> int:
        try:
            return self.index[q.members]
        except KeyError:
            raise InvalidInputError(f"{q!r} is not a node of this digraph") from None

    @cached_property
    def graph(self) -> nx.DiGraph:
        g = nx.DiGraph()
        g.add_nodes_from(range(len(self.nodes)))
        for e in self.edges:
            g.add_edge(e.src, e.dst, kind=e.kind)
        return g

    def kind_counts(self) -> Counter[FlipKind]:
        return Counter(e.kind for e in self.edges)

    def out_edges(self, node: int) -> list[Edge]:
        return self._out[node]

    @cached_property
    def _out(self) -> dict[int, list[Edge]]:
        out: dict[int, list[Edge]] = {i: [] for i in range(len(self.nodes))}
        for e in self.edges:
            out[e.src].append(e)
        return out

    def edge_between(self, src: int, dst: int) -> Edge | None:
        for e in self._out[src]:
            if e.dst == dst:
                return e
        return None


def build_digraph(
    nodes: Sequence[Cubillage],
    generator: FlipGenerator,
    *,
    cls: str = "all",
    workers: int | None = None,
) -> FlipDigraph:
    """Edges are all raising flips between listed nodes.

    Raises ConstructionError if some flip leaves the node set.
    """
    ordered = canonical_sort(nodes)
    if not ordered:
        raise InvalidInputError("cannot build a digraph on an empty node set")
    n, d = ordered[0].n, ordered[0].d
    workers = load_settings().workers if workers is None else workers
    index = {q.members: i for i, q in enumerate(ordered)}

    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            neighbours = list(pool.map(generator.raising, ordered))
    else:
        neighbours = [generator.raising(q) for q in ordered]

    edges = []
    for src, (q, found) in enumerate(zip(ordered, neighbours)):
        for flip, nxt in found:
            dst = index.get(nxt.members)
            if dst is None:
                raise ConstructionError(
                    f"{flip.label()} leads from {q!r} outside the node set"
                )
            if nxt.rank - q.rank != flip.kind.delta(d):
                raise ConstructionError(f"{flip.label()} changes rank by {nxt.rank - q.rank}")
            edges.append(Edge(src, dst, flip.kind, flip))
    edges.sort(key=Edge.sort_key)
    logger.info("Digraph on %d nodes has %d edges", len(ordered), len(edges))
    return FlipDigraph(n=n, d=d, cls=cls, nodes=tuple(ordered), edges=tuple(edges))


def class_digraph(
    n: int,
    d: int,
    cls: CubillageClass | str = CubillageClass.SYMMETRIC,
    *,
    budget: int | None = None,
    workers: int | None = None,
    use_fragment_check: bool | None = None,
) -> FlipDigraph:
    """Enumerate a class and build its flip digraph (``Q(n,d)`` or ``SQ(n,d)``)."""
    cls = CubillageClass(cls)
    nodes = enumerate_cubillages(n, d, cls, budget=budget, workers=workers)
    return build_digraph(
        nodes, generator_for(cls, use_fragment_check), cls=cls.value, workers=workers
    )


def sources(g: FlipDigraph) -> list[int]:
    return [v for v in sorted(g.graph.nodes) if g.graph.in_degree(v) == 0]


def sinks(g: FlipDigraph) -> list[int]:
    return [v for v in sorted(g.graph.nodes) if g.graph.out_degree(v) == 0]


def reachable(g: FlipDigraph, u: int, v: int) -> bool:
    """The Bruhat order: ``u <= v`` iff a directed path leads from u to v."""
    return nx.has_path(g.graph, u, v)


def is_acyclic(g: FlipDigraph) -> bool:
    return nx.is_directed_acyclic_graph(g.graph)


def is_weakly_connected(g: FlipDigraph) -> bool:
    return len(g.nodes) > 0 and nx.is_weakly_connected(g.graph)


def maximal_chains(g: FlipDigraph, limit: int | None = None) -> ChainSet:
    """All source-to-sink paths, depth-first in node-id order, up to ``limit``."""
    limit = load_settings().chain_limit if limit is None else limit
    sink_set = set(sinks(g))
    chains: list[Chain] = []
    for s in sources(g):
        stack: list[tuple[int, int]] = [(s, 0)]
        path_nodes = [s]
        path_edges: list[Edge] = []
        while stack:
            node, i = stack.pop()
            out = g.out_edges(node)
            if node in sink_set and i == 0:
                if len(chains) >= limit:
                    logger.warning("Maximal chains truncated at %d", limit)
                    return ChainSet(chains, truncated=True)
                chains.append(Chain(tuple(path_nodes), tuple(path_edges)))
            if i < len(out):
                stack.append((node, i + 1))
                e = out[i]
                path_nodes.append(e.dst)
                path_edges.append(e)
                stack.append((e.dst, 0))
            else:
                path_nodes.pop()
                if path_edges:
                    path_edges.pop()
    return ChainSet(chains, truncated=False)
