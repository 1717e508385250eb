"""Canonical JSON documents for cubillages and flip digraphs.

Equal objects always serialize to identical bytes: keys in a fixed order,
compact separators, members lex-sorted. Parsing reports JSON syntax errors
with line and column and schema errors with a JSON path.
"""
from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
import json
import os
from pathlib import Path
from typing import Any, Iterable

from .colors import ColorSet, from_symmetric_label, symmetric_label
from .digraph import Edge, FlipDigraph
from .errors import DocumentError, InvalidInputError
from .flips import FlipKind, SymFlip
from .inversion import Cubillage, InversionSet, require_valid

_SEPARATORS = (",", ":")


class LabelMode(str, Enum):
    NATURAL = "natural"
    SYMMETRIC = "symmetric"


def _dumps(obj: Any) -> str:
    return json.dumps(obj, separators=_SEPARATORS, ensure_ascii=False)


def _member_arrays(q: InversionSet, mode: LabelMode) -> list[list[int]]:
    if mode is LabelMode.NATURAL:
        return [list(f.members) for f in q.sorted_members()]
    return [[symmetric_label(c, q.n) for c in f.members] for f in q.sorted_members()]


def cubillage_object(q: InversionSet, label_mode: LabelMode | str = LabelMode.NATURAL) -> dict:
    mode = LabelMode(label_mode)
    obj: dict[str, Any] = {"n": q.n, "d": q.d}
    if mode is LabelMode.SYMMETRIC:
        obj["label_mode"] = mode.value
    obj["inversions"] = _member_arrays(q, mode)
    return obj


def emit_cubillage(q: InversionSet, label_mode: LabelMode | str = LabelMode.NATURAL) -> str:
    """``{"n":5,"d":2,"inversions":[[2,3,4]]}``"""
    return _dumps(cubillage_object(q, label_mode))


def flip_object(f: SymFlip, n: int, label_mode: LabelMode | str = LabelMode.NATURAL) -> dict:
    """``{"kind", "packets", "barrel"?}`` with colors in the given label mode."""
    mode = LabelMode(label_mode)

    def labels(x: ColorSet) -> list[int]:
        if mode is LabelMode.NATURAL:
            return list(x.members)
        return [symmetric_label(c, n) for c in x.members]

    obj: dict[str, Any] = {"kind": f.kind.value, "packets": [labels(p) for p in f.packets]}
    if f.barrel is not None:
        obj["barrel"] = labels(f.barrel)
    return obj


def emit_lines(items: Iterable[InversionSet], label_mode: LabelMode | str = LabelMode.NATURAL) -> str:
    """One canonical document per line."""
    return "".join(emit_cubillage(q, label_mode) + "\n" for q in items)


def _loads(text: str, source: str) -> Any:
    try:
        return json.loads(text)
    except json.JSONDecodeError as e:
        raise DocumentError(f"{source}:{e.lineno}:{e.colno}: {e.msg}") from None


def _int(value: Any, path: str) -> int:
    if not isinstance(value, int) or isinstance(value, bool):
        raise DocumentError(f"{path}: expected an integer, got {value!r}")
    return value


def _list(value: Any, path: str) -> list:
    if not isinstance(value, list):
        raise DocumentError(f"{path}: expected an array, got {type(value).__name__}")
    return value


def _object(value: Any, path: str, required: set[str], optional: set[str] = frozenset()) -> dict:
    if not isinstance(value, dict):
        raise DocumentError(f"{path}: expected an object, got {type(value).__name__}")
    missing = sorted(required - value.keys())
    if missing:
        raise DocumentError(f"{path}: missing key {missing[0]!r}")
    extra = sorted(value.keys() - required - optional)
    if extra:
        raise DocumentError(f"{path}.{extra[0]}: unknown key")
    return value


def _inversions(raw: Any, n: int, d: int, mode: LabelMode, path: str) -> InversionSet:
    members = []
    for i, packet in enumerate(_list(raw, path)):
        colors = []
        for j, c in enumerate(_list(packet, f"{path}[{i}]")):
            where = f"{path}[{i}][{j}]"
            c = _int(c, where)
            try:
                colors.append(c if mode is LabelMode.NATURAL else from_symmetric_label(c, n))
            except InvalidInputError as exc:
                raise DocumentError(f"{where}: {exc.message}") from None
        where = f"{path}[{i}]"
        if any(c < 1 or c > n for c in colors):
            raise DocumentError(f"{where}: colors must lie in 1..{n}")
        try:
            members.append(ColorSet.from_colors(colors))
        except InvalidInputError as exc:
            raise DocumentError(f"{where}: {exc.message}") from None
    try:
        return InversionSet(n, d, frozenset(members))
    except InvalidInputError as exc:
        raise DocumentError(f"{path}: {exc.message}") from None


@dataclass(frozen=True)
class CubillageDocument:
    """A parsed cubillage document together with the label mode it was written in."""

    cubillage: InversionSet
    label_mode: LabelMode = LabelMode.NATURAL

    def emit(self) -> str:
        return emit_cubillage(self.cubillage, self.label_mode)

    def emit_like(self, q: InversionSet) -> str:
        """Emit another cubillage in this document's label mode."""
        return emit_cubillage(q, self.label_mode)


def parse_document(text: str, source: str = "<input>", *, validate: bool = True) -> CubillageDocument:
    """Parse a cubillage document, keeping its label mode.

    With ``validate`` the inversion set must be bi-convex (NotBiConvexError
    names the violated stick).
    """
    obj = _object(_loads(text, source), "$", {"n", "d", "inversions"}, {"label_mode"})
    n, d = _int(obj["n"], "$.n"), _int(obj["d"], "$.d")
    try:
        mode = LabelMode(obj.get("label_mode", LabelMode.NATURAL.value))
    except ValueError:
        raise DocumentError(f"$.label_mode: unknown mode {obj['label_mode']!r}") from None
    if not 1 <= d <= n:
        raise DocumentError(f"$.d: dimension {d} outside 1..n={n}")
    q = _inversions(obj["inversions"], n, d, mode, "$.inversions")
    return CubillageDocument(require_valid(q) if validate else q, mode)


def parse_inversion_set(text: str, source: str = "<input>") -> InversionSet:
    """Parse a document without checking bi-convexity."""
    return parse_document(text, source, validate=False).cubillage


def parse_cubillage(text: str, source: str = "<input>") -> Cubillage:
    """Parse and validate; NotBiConvexError names the violated stick."""
    return parse_document(text, source).cubillage


def parse_lines(text: str, source: str = "<input>") -> list[Cubillage]:
    out = []
    for lineno, line in enumerate(text.splitlines(), start=1):
        if line.strip():
            out.append(parse_cubillage(line, f"{source}:{lineno}"))
    return out


def digraph_object(g: FlipDigraph) -> dict:
    return {
        "n": g.n,
        "d": g.d,
        "class": g.cls,
        "nodes": [
            {"id": i, "rank": q.rank, "inversions": _member_arrays(q, LabelMode.NATURAL)}
            for i, q in enumerate(g.nodes)
        ],
        "edges": [{"src": e.src, "dst": e.dst, "kind": e.kind.value} for e in g.edges],
    }


def emit_digraph(g: FlipDigraph) -> str:
    return _dumps(digraph_object(g))


def _flip_between(src: Cubillage, dst: Cubillage, kind: FlipKind, path: str) -> SymFlip:
    packets = tuple(sorted(dst.members - src.members))
    if src.members - dst.members or not packets:
        raise DocumentError(f"{path}: edge does not add inversions")
    if kind is FlipKind.BARREL:
        g = ColorSet(0)
        for p in packets:
            g = g | p
        return SymFlip(kind, packets, barrel=g)
    return SymFlip(kind, packets)


def parse_digraph(text: str, source: str = "<input>") -> FlipDigraph:
    obj = _object(_loads(text, source), "$", {"n", "d", "class", "nodes", "edges"})
    n, d = _int(obj["n"], "$.n"), _int(obj["d"], "$.d")
    cls = obj["class"]
    if cls not in ("all", "symmetric", "skew"):
        raise DocumentError(f"$.class: unknown class {cls!r}")
    nodes = []
    for i, raw in enumerate(_list(obj["nodes"], "$.nodes")):
        path = f"$.nodes[{i}]"
        node = _object(raw, path, {"id", "rank", "inversions"})
        if _int(node["id"], f"{path}.id") != i:
            raise DocumentError(f"{path}.id: ids must follow the canonical order")
        q = require_valid(_inversions(node["inversions"], n, d, LabelMode.NATURAL, f"{path}.inversions"))
        if _int(node["rank"], f"{path}.rank") != q.rank:
            raise DocumentError(f"{path}.rank: rank {node['rank']} does not match")
        nodes.append(q)
    if [q.canonical_key() for q in nodes] != sorted(q.canonical_key() for q in nodes):
        raise DocumentError("$.nodes: nodes are not in canonical order")
    edges = []
    for i, raw in enumerate(_list(obj["edges"], "$.edges")):
        path = f"$.edges[{i}]"
        e = _object(raw, path, {"src", "dst", "kind"})
        src, dst = _int(e["src"], f"{path}.src"), _int(e["dst"], f"{path}.dst")
        if not (0 <= src < len(nodes) and 0 <= dst < len(nodes)):
            raise DocumentError(f"{path}: node id out of range")
        try:
            kind = FlipKind(e["kind"])
        except ValueError:
            raise DocumentError(f"{path}.kind: unknown edge kind {e['kind']!r}") from None
        edges.append(Edge(src, dst, kind, _flip_between(nodes[src], nodes[dst], kind, path)))
    return FlipDigraph(n=n, d=d, cls=cls, nodes=tuple(nodes), edges=tuple(edges))


def read_document(path: Path) -> str:
    try:
        return path.read_text(encoding="utf-8")
    except OSError as exc:
        raise DocumentError(f"{path}: {exc.strerror}") from None


def write_document(path: Path, text: str) -> None:
    """Write through a temporary file so readers never see a partial document."""
    path.parent.mkdir(parents=True, exist_ok=True)
    tmp = path.with_suffix(path.suffix + ".tmp")
    with open(tmp, "w", encoding="utf-8") as f:
        f.write(text)
        f.flush()
        os.fsync(f.fileno())
    os.replace(tmp, path)
