"""Named verification suites.

Each check returns a :class:`CheckReport`. Claims that are proved for the
given parameters are assertive (``pass`` or ``fail``); open conjectures only
produce ``report-only`` findings.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from functools import wraps
import logging
import time
from typing import Callable

from .colors import full_set, involute
from .digraph import FlipDigraph, class_digraph, is_weakly_connected, maximal_chains, sinks, sources
from .enumeration import CubillageClass, enumerate_cubillages
from .errors import BarrelHoleError, InvalidInputError, LiftInconsistencyError
from .flips import FlipKind, barrel_criteria
from .geometry import (
    centered_point,
    core,
    frame_default,
    mirror_spectrum,
    reflect,
    spectrum,
    verify_tiling,
)
from .inversion import (
    Cubillage,
    antistandard,
    complement,
    involuted,
    make_cubillage,
    standard,
    symmetry_class,
)
from .morphisms import chain_lift, check_digraph_map, core_map, red_map

logger = logging.getLogger(__name__)

# bullets in the published drawing of SQ(6,3); the enumeration is ground truth
SQ63_FIGURE_NODE_COUNT = 20

KNOWN_COUNTS: dict[tuple[int, int, str], int] = {
    (4, 2, "all"): 8,
    (5, 2, "all"): 62,
    (6, 2, "all"): 908,
    (4, 1, "symmetric"): 8,
    (6, 1, "symmetric"): 48,
    (4, 2, "symmetric"): 2,
    (5, 2, "symmetric"): 10,
    (5, 1, "skew"): 0,
    (5, 2, "skew"): 0,
    (5, 3, "skew"): 0,
    (7, 2, "skew"): 0,
}


class Verdict(str, Enum):
    PASS = "pass"
    FAIL = "fail"
    REPORT_ONLY = "report-only"


@dataclass
class CheckReport:
    check_id: str
    parameters: dict
    verdict: Verdict
    witnesses: list[dict] = field(default_factory=list)
    findings: dict = field(default_factory=dict)
    runtime: float = 0.0

    @property
    def failed(self) -> bool:
        return self.verdict is Verdict.FAIL

    def to_dict(self) -> dict:
        return {
            "check": self.check_id,
            "parameters": self.parameters,
            "verdict": self.verdict.value,
            "witnesses": self.witnesses,
            "findings": self.findings,
            "runtime": round(self.runtime, 3),
        }


def conjecture1_proved(n: int, d: int) -> bool:
    """Parameters where uniqueness of source and sink is a theorem."""
    return (n % 2 == 0 and d % 2 == 1) or n == d + 3 or d == 2


def _labels(q: Cubillage) -> list[str]:
    return [f.label() for f in q.sorted_members()]


def _timed(fn: Callable[..., CheckReport]) -> Callable[..., CheckReport]:
    @wraps(fn)
    def wrapper(*args, **kwargs) -> CheckReport:
        t0 = time.perf_counter()
        report = fn(*args, **kwargs)
        report.runtime = time.perf_counter() - t0
        logger.info("%s %s -> %s", report.check_id, report.parameters, report.verdict.value)
        return report

    return wrapper


def _verdict(assertive: bool, ok: bool) -> Verdict:
    if not assertive:
        return Verdict.REPORT_ONLY
    return Verdict.PASS if ok else Verdict.FAIL


@_timed
def check_counts(**kw) -> CheckReport:
    """Enumeration sizes against the known table."""
    witnesses = []
    found = {}
    for (n, d, cls), want in KNOWN_COUNTS.items():
        got = len(enumerate_cubillages(n, d, cls, **kw))
        found[f"{cls}({n},{d})"] = got
        if got != want:
            witnesses.append({"n": n, "d": d, "class": cls, "expected": want, "found": got})
    return CheckReport("counts", {}, _verdict(True, not witnesses), witnesses, found)


@_timed
def check_conjecture1(n: int, d: int, **kw) -> CheckReport:
    """Unique source (standard) and unique sink (antistandard) of ``SQ(n, d)``."""
    g = class_digraph(n, d, CubillageClass.SYMMETRIC, **kw)
    src, snk = sources(g), sinks(g)
    std, anti = g.node_id(standard(n, d)), g.node_id(antistandard(n, d))
    counts = g.kind_counts()
    findings = {
        "nodes": len(g.nodes),
        "edges": {k.value: counts.get(k, 0) for k in FlipKind if k is not FlipKind.TYPE_A},
        "sources": [_labels(g.nodes[v]) for v in src],
        "sinks": [_labels(g.nodes[v]) for v in snk],
        "weakly_connected": is_weakly_connected(g),
    }
    witnesses = []
    if src != [std]:
        witnesses.append({"sources": src, "standard": std})
    if snk != [anti]:
        witnesses.append({"sinks": snk, "antistandard": anti})
    if n % 2 == 0 and d % 2 == 1 and counts.get(FlipKind.BARREL):
        witnesses.append({"barrel_edges": counts[FlipKind.BARREL]})
    verdict = _verdict(conjecture1_proved(n, d), not witnesses)
    return CheckReport("conjecture1", {"n": n, "d": d}, verdict, witnesses, findings)


# --- published fixtures ------------------------------------------------------

def _chain_fixture(n: int, d: int, steps: list[list[str]]) -> dict[str, Cubillage]:
    """Named cubillages built by adding packet groups in order, plus complements."""
    names = "OABCDEFG"
    acc: list[str] = []
    out = {"O": standard(n, d)}
    for name, group in zip(names[1:], steps):
        acc = acc + group
        out[name] = make_cubillage(n, d, acc)
    for name in list(out):
        out[name + "~"] = complement(out[name])
    return out


def fixture_sq41() -> dict[str, Cubillage]:
    return _chain_fixture(4, 1, [["23"], ["13", "24"], ["14"]])


def fixture_sq51() -> dict[str, Cubillage]:
    return _chain_fixture(5, 1, [["23", "24", "34"], ["14", "25"], ["13", "15", "35"]])


def fixture_sq52() -> dict[str, Cubillage]:
    return _chain_fixture(
        5, 2, [["234"], ["134", "235"], ["135"], ["124", "125", "145", "245"]]
    )


# (src, dst, kind) with "~" marking complements; "O~" is antistandard
SQ41_EDGES = {
    ("O", "A", "simple"), ("A", "B", "double"), ("B", "C", "simple"), ("C", "O~", "double"),
    ("O", "C~", "double"), ("C~", "B~", "simple"), ("B~", "A~", "double"), ("A~", "O~", "simple"),
}
SQ51_EDGES = {
    ("O", "A", "barrel"), ("A", "B", "double"), ("B", "C", "barrel"), ("C", "O~", "double"),
    ("O", "C~", "double"), ("C~", "B~", "barrel"), ("B~", "A~", "double"), ("A~", "O~", "barrel"),
}
SQ52_EDGES = {
    ("O", "A", "simple"), ("A", "B", "double"), ("B", "C", "simple"), ("C", "D", "barrel"),
    ("D", "O~", "double"), ("O", "D~", "double"), ("D~", "C~", "barrel"),
    ("C~", "B~", "simple"), ("B~", "A~", "double"), ("A~", "O~", "simple"),
}


def _named_edges(g: FlipDigraph, named: dict[str, Cubillage]) -> set[tuple[str, str, str]] | None:
    by_members = {q.members: name for name, q in named.items()}
    if set(by_members) != {q.members for q in g.nodes}:
        return None
    return {
        (by_members[g.nodes[e.src].members], by_members[g.nodes[e.dst].members], e.kind.value)
        for e in g.edges
    }


@_timed
def check_example_fixtures(**kw) -> CheckReport:
    """The printed digraphs of SQ(4,1), SQ(5,1), SQ(4,2) and SQ(5,2)."""
    witnesses = []
    findings = {}
    for label, n, d, named, edges in (
        ("SQ(4,1)", 4, 1, fixture_sq41(), SQ41_EDGES),
        ("SQ(5,1)", 5, 1, fixture_sq51(), SQ51_EDGES),
        ("SQ(5,2)", 5, 2, fixture_sq52(), SQ52_EDGES),
    ):
        g = class_digraph(n, d, CubillageClass.SYMMETRIC, **kw)
        got = _named_edges(g, named)
        findings[label] = {"nodes": len(g.nodes), "edges": len(g.edges)}
        if got is None:
            witnesses.append({"digraph": label, "nodes": [_labels(q) for q in g.nodes]})
        elif got != edges:
            witnesses.append(
                {"digraph": label, "missing": sorted(edges - got), "unexpected": sorted(got - edges)}
            )

    g42 = class_digraph(4, 2, CubillageClass.SYMMETRIC, **kw)
    findings["SQ(4,2)"] = {"nodes": len(g42.nodes), "edges": len(g42.edges)}
    if [e.kind for e in g42.edges] != [FlipKind.BARREL] or len(g42.nodes) != 2:
        witnesses.append({"digraph": "SQ(4,2)", "edges": [e.kind.value for e in g42.edges]})

    sq63 = len(enumerate_cubillages(6, 3, CubillageClass.SYMMETRIC, **kw))
    findings["SQ(6,3)"] = {
        "nodes": sq63,
        "figure_nodes": SQ63_FIGURE_NODE_COUNT,
        "agrees": sq63 == SQ63_FIGURE_NODE_COUNT,
    }
    return CheckReport("fixtures", {}, _verdict(True, not witnesses), witnesses, findings)


@_timed
def check_barrel_criteria_divergence(n: int, d: int, **kw) -> CheckReport:
    """Symmetric sticks where validity-only and fragment barrel tests disagree."""
    cases = []
    for q in enumerate_cubillages(n, d, CubillageClass.SYMMETRIC, **kw):
        for c in barrel_criteria(q):
            if c.validity != c.fragment:
                cases.append(
                    {
                        "inversions": _labels(q),
                        "barrel": c.barrel.label(),
                        "direction": c.direction.value,
                        "validity": c.validity,
                        "fragment": c.fragment,
                    }
                )
    return CheckReport(
        "barrel-divergence", {"n": n, "d": d}, Verdict.REPORT_ONLY, [], {"divergent": cases}
    )


@_timed
def check_morphism_conjectures(m: int, d: int, **kw) -> CheckReport:
    """red on ``SQ(2m+1, d)`` and, for even ``d``, cor on ``SQ(2m, d)``."""
    witnesses: list[dict] = []
    findings: dict = {}
    conjectural_ok = True

    odd = class_digraph(2 * m + 1, d, CubillageClass.SYMMETRIC, **kw)
    even = class_digraph(2 * m, d, CubillageClass.SYMMETRIC, **kw)
    red = check_digraph_map(red_map(odd, even))
    findings["red"] = red.to_dict()
    if not (red.arrow_consistent and red.surjective and red.fibers_connected):
        witnesses.append({"map": "red", **red.to_dict()})
    # flips that red may not see, by parity of d
    for key, count in red.transitions.items():
        kind, image = key.split("->")
        if d % 2 == 0 and kind == "simple" and image != "loop":
            witnesses.append({"map": "red", "visible_simple_flips": count})
        if d % 2 == 1 and kind == "barrel" and image != "simple":
            witnesses.append({"map": "red", "barrel_to": image, "count": count})
    if d == 2 and not red.full:
        witnesses.append({"map": "red", "full": False})
    conjectural_ok &= red.full

    if d % 2 == 0:
        target = class_digraph(m, d // 2, CubillageClass.ALL, **kw)
        cor = check_digraph_map(core_map(even, target))
        findings["cor"] = cor.to_dict()
        if core(standard(2 * m, d)) != standard(m, d // 2):
            witnesses.append({"map": "cor", "standard_image": _labels(core(standard(2 * m, d)))})
        cor_ok = cor.arrow_consistent and cor.surjective and cor.full and cor.fibers_connected
        for key in cor.transitions:
            kind, image = key.split("->")
            if kind == "double" and image != "loop":
                cor_ok = False
            if kind == "barrel" and image != FlipKind.TYPE_A.value:
                cor_ok = False
        if d == 2 and not cor_ok:
            witnesses.append({"map": "cor", **cor.to_dict()})
        conjectural_ok &= cor_ok

    findings["conjectures_hold"] = conjectural_ok
    if witnesses:
        verdict = Verdict.FAIL
    else:
        verdict = Verdict.PASS if d == 2 else Verdict.REPORT_ONLY
    return CheckReport("morphisms", {"m": m, "d": d}, verdict, witnesses, findings)


@_timed
def check_oracle(n: int, d: int, **kw) -> CheckReport:
    """Tiling oracle over every cubillage of ``Z(n, d)``."""
    frame = frame_default(n, d)
    witnesses = []
    nodes = enumerate_cubillages(n, d, CubillageClass.ALL, **kw)
    for q in nodes:
        report = verify_tiling(q, frame)
        if not report.passed:
            witnesses.append(
                {
                    "inversions": _labels(q),
                    "clauses": sorted(report.failed_clauses),
                    "first": report.failures[0].message,
                }
            )
            if len(witnesses) >= 10:
                break
    return CheckReport(
        "oracle", {"n": n, "d": d}, _verdict(True, not witnesses), witnesses, {"checked": len(nodes)}
    )


def _lift_all(g: FlipDigraph, limit: int | None) -> tuple[set[frozenset], list[dict], bool]:
    chains = maximal_chains(g, limit)
    lifts: set[frozenset] = set()
    problems: list[dict] = []
    for i, chain in enumerate(chains):
        try:
            q = chain_lift(g, chain)
        except (BarrelHoleError, LiftInconsistencyError) as exc:
            problems.append({"chain": i, "error": exc.tool_message()})
            continue
        if g.cls == "symmetric" and not symmetry_class(q).skew_symmetric:
            problems.append({"chain": i, "lift": _labels(q), "error": "not skew-symmetric"})
        lifts.add(q.members)
    return lifts, problems, chains.truncated


@_timed
def check_lifts(n: int, d: int, *, limit: int | None = None, **kw) -> CheckReport:
    """Every maximal chain of ``SQ(n, d)`` lifts to a skew cubillage of ``Z(n, d+1)``."""
    if n % 2 or d % 2 == 0:
        raise InvalidInputError(f"chain lifting is checked for n even and d odd, got ({n},{d})")
    witnesses: list[dict] = []
    g = class_digraph(n, d, CubillageClass.SYMMETRIC, **kw)
    lifts, problems, truncated = _lift_all(g, limit)
    witnesses.extend(problems[:10])
    skew = {q.members for q in enumerate_cubillages(n, d + 1, CubillageClass.SKEW, **kw)}
    covers = lifts == skew
    findings = {
        "distinct_lifts": len(lifts),
        "skew_class": len(skew),
        "covers_skew_class": covers,
        "truncated": truncated,
    }
    if (n, d) == (4, 1) and not covers:
        witnesses.append({"lifts": len(lifts), "skew": len(skew)})

    if n <= 4:
        ga = class_digraph(n, d, CubillageClass.ALL, **kw)
        type_a, problems_a, truncated_a = _lift_all(ga, limit)
        every = {q.members for q in enumerate_cubillages(n, d + 1, CubillageClass.ALL, **kw)}
        findings["type_a_lifts"] = len(type_a)
        findings["type_a_class"] = len(every)
        witnesses.extend(problems_a[:10])
        if not truncated_a and type_a != every:
            witnesses.append({"type_a_lifts": len(type_a), "expected": len(every)})
    return CheckReport("lifts", {"n": n, "d": d}, _verdict(True, not witnesses), witnesses, findings)


@_timed
def check_skew_count(n: int, d: int, **kw) -> CheckReport:
    """``|symmetric| = |skew|`` for ``n`` and ``d`` even."""
    sym = len(enumerate_cubillages(n, d, CubillageClass.SYMMETRIC, **kw))
    skew = len(enumerate_cubillages(n, d, CubillageClass.SKEW, **kw))
    ok = sym == skew
    witnesses = [] if ok else [{"symmetric": sym, "skew": skew}]
    verdict = _verdict(n % 2 == 0 and d % 2 == 0, ok)
    return CheckReport(
        "skew-count", {"n": n, "d": d}, verdict, witnesses, {"symmetric": sym, "skew": skew}
    )


@_timed
def check_mirror_spectrum(n: int, d: int, **kw) -> CheckReport:
    """The involuted cubillage is the mirror image under ``A``."""
    frame = frame_default(n, d)
    witnesses = []
    nodes = enumerate_cubillages(n, d, CubillageClass.ALL, **kw)
    for q in nodes:
        if spectrum(involuted(q)) != mirror_spectrum(spectrum(q)):
            witnesses.append({"inversions": _labels(q)})
    # the combinatorial image agrees with A acting on centered coordinates
    full = full_set(n)
    for x in spectrum(standard(n, d)).vertices:
        y = involute(x, n) if d % 2 == 0 else full - involute(x, n)
        if reflect(frame, centered_point(frame, x)) != centered_point(frame, y):
            witnesses.append({"vertex": x.label(), "image": y.label()})
    return CheckReport(
        "mirror-spectrum", {"n": n, "d": d}, _verdict(True, not witnesses), witnesses[:10], {"checked": len(nodes)}
    )


# --- suite registry ----------------------------------------------------------

ProgressCallback = Callable[[int, int, "CheckReport"], None]

SUITES: dict[str, tuple[Callable[..., CheckReport], list[tuple[int, ...]]]] = {
    "counts": (check_counts, [()]),
    "fixtures": (check_example_fixtures, [()]),
    "conjecture1": (
        check_conjecture1,
        [(6, 3), (6, 5), (8, 3), (5, 2), (7, 4), (6, 2), (7, 2)],
    ),
    "barrel-divergence": (check_barrel_criteria_divergence, [(4, 2), (5, 2), (6, 2)]),
    "morphisms": (check_morphism_conjectures, [(2, 1), (2, 2), (3, 2)]),
    "oracle": (check_oracle, [(4, 1), (5, 1), (4, 2), (5, 2), (6, 2), (6, 3), (7, 2)]),
    "lifts": (check_lifts, [(4, 1), (6, 3)]),
    "skew-count": (check_skew_count, [(4, 2), (6, 2)]),
    "mirror-spectrum": (check_mirror_spectrum, [(4, 1), (5, 2), (6, 3)]),
}


def run_check(
    name: str,
    params: tuple[int, ...] | None = None,
    progress_callback: ProgressCallback | None = None,
    **kw,
) -> list[CheckReport]:
    """Run one named check at ``params`` or at its default parameter list.

    Args:
        progress_callback: Optional callable(current, total, report) invoked
            after each report.
    """
    if name == "all":
        return run_suite(list(SUITES), progress_callback, **kw)
    try:
        fn, defaults = SUITES[name]
    except KeyError:
        raise InvalidInputError(
            f"unknown check {name!r}; choose from {', '.join([*SUITES, 'all'])}"
        ) from None
    grid = [params] if params is not None else defaults
    reports = []
    for p in grid:
        reports.append(fn(*p, **kw))
        if progress_callback:
            progress_callback(len(reports), len(grid), reports[-1])
    return reports


def run_suite(
    names: list[str], progress_callback: ProgressCallback | None = None, **kw
) -> list[CheckReport]:
    total = sum(len(SUITES[name][1]) for name in names)
    reports: list[CheckReport] = []

    def step(_current: int, _total: int, report: CheckReport) -> None:
        reports.append(report)
        if progress_callback:
            progress_callback(len(reports), total, report)

    for name in names:
        run_check(name, progress_callback=step, **kw)
    return reports

