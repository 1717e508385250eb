"""Exact geometric realization of cubillages.

A cubillage of ``Z(n, d)`` places one cube per type ``D ∈ Gr([n], d)``; the
cube of type ``D`` is ``X_D + Z(D)`` where the base vertex ``X_D`` is read off
the inversion set by the parity rule in :func:`cube_base`. The tiling oracle
(:func:`verify_placement`) checks a placement against a concrete Veronese
frame with exact rationals, so the parity rule is never trusted blindly.

Determinants and normals come from sympy; the oracle loops run on the
resulting exact fractions. Nothing here touches floating point.
"""
from __future__ import annotations

from collections import Counter
from fractions import Fraction
from dataclasses import dataclass, field
from functools import lru_cache
from itertools import combinations
from math import comb
from typing import Iterable

from sympy import Integer, Matrix, Rational

from .colors import ColorSet, check_dimension, enumerate_packets, full_set, involute
from .errors import ConstructionError, InvalidInputError, NotBiConvexError, PreconditionError
from .inversion import Cubillage, InversionSet, require_valid, symmetry_class


@dataclass(frozen=True)
class Frame:
    """Guiding vectors ``ξ_i = (1, t_i, ..., t_i^(d-1))`` on the Veronese curve."""

    n: int
    d: int
    t: tuple[Rational, ...]

    def __post_init__(self) -> None:
        check_dimension(self.n, self.d)
        if len(self.t) != self.n:
            raise InvalidInputError(f"frame needs {self.n} parameters, got {len(self.t)}")
        if any(a >= b for a, b in zip(self.t, self.t[1:])):
            raise InvalidInputError("frame parameters must be strictly increasing")

    @property
    def vectors(self) -> tuple[tuple[Rational, ...], ...]:
        return tuple(tuple(ti**k for k in range(self.d)) for ti in self.t)

    def xi(self, color: int) -> tuple[Rational, ...]:
        return self.vectors[color - 1]

    def is_symmetric(self) -> bool:
        return all(self.t[i] == -self.t[self.n - 1 - i] for i in range(self.n))

    def minor(self, colors: Iterable[int]) -> Rational:
        cols = [self.xi(c) for c in colors]
        return Matrix(cols).T.det()

    def is_cyclic(self) -> bool:
        """All maximal minors on increasing column sets are positive."""
        return all(
            self.minor(c) > 0 for c in combinations(range(1, self.n + 1), self.d)
        )


def frame_default(n: int, d: int) -> Frame:
    """Symmetric integer frame ``t = (-m, ..., -1, [0,] 1, ..., m)``."""
    check_dimension(n, d)
    m, odd = divmod(n, 2)
    t = [Integer(-k) for k in range(m, 0, -1)]
    if odd:
        t.append(Integer(0))
    t.extend(Integer(k) for k in range(1, m + 1))
    return Frame(n=n, d=d, t=tuple(t))


def _above(d_mask: int, a: int) -> int:
    """Number of colors of ``D`` greater than ``a``."""
    return (d_mask >> a).bit_count()


def cube_base(q: InversionSet, cube_type: ColorSet) -> ColorSet:
    """Base vertex ``X_D`` of the cube of type ``D``."""
    n, d = q.n, q.d
    if len(cube_type) != d or cube_type.max_color > n:
        raise InvalidInputError(f"{cube_type.label()} is not a {d}-subset of [{n}]")
    members = q.members
    mask = 0
    for a in range(1, n + 1):
        bit = 1 << (a - 1)
        if cube_type.mask & bit:
            continue
        odd = _above(cube_type.mask, a) % 2 == 1
        if odd != (ColorSet(cube_type.mask | bit) in members):
            mask |= bit
    return ColorSet(mask)


@dataclass(frozen=True, eq=False)
class Placement:
    """Base vertex of every cube type."""

    n: int
    d: int
    bases: dict[ColorSet, ColorSet] = field(default_factory=dict)

    def vertices(self) -> frozenset[ColorSet]:
        out: set[int] = set()
        for cube_type, base in self.bases.items():
            sub = cube_type.mask
            while True:
                out.add(base.mask | sub)
                if sub == 0:
                    break
                sub = (sub - 1) & cube_type.mask
        return frozenset(ColorSet(v) for v in out)

    def swapped(self, first: ColorSet, second: ColorSet) -> "Placement":
        """Copy with the bases of two cube types exchanged."""
        bases = dict(self.bases)
        bases[first], bases[second] = bases[second], bases[first]
        return Placement(self.n, self.d, bases)


def placement(q: InversionSet) -> Placement:
    return Placement(q.n, q.d, {D: cube_base(q, D) for D in enumerate_packets(q.n, q.d)})


@dataclass(frozen=True)
class Spectrum:
    n: int
    d: int
    vertices: frozenset[ColorSet]

    def __len__(self) -> int:
        return len(self.vertices)

    def __contains__(self, x: object) -> bool:
        return x in self.vertices


def expected_vertex_count(n: int, d: int) -> int:
    return sum(comb(n, k) for k in range(d + 1))


def spectrum(q: InversionSet) -> Spectrum:
    return Spectrum(q.n, q.d, placement(q).vertices())


def mirror_spectrum(s: Spectrum) -> Spectrum:
    """Image of a spectrum under the diagonal reflection ``A``.

    In centered coordinates ``A`` sends the vertex of ``X`` to the vertex of
    ``X°`` when ``d`` is even and of ``[n] - X°`` when ``d`` is odd.
    """
    full = full_set(s.n)
    out = set()
    for x in s.vertices:
        y = involute(x, s.n)
        out.add(y if s.d % 2 == 0 else full - y)
    return Spectrum(s.n, s.d, frozenset(out))


def centered_point(frame: Frame, x: ColorSet) -> tuple[Rational, ...]:
    """Vertex of ``X`` in the zonotope centered at the origin."""
    point = [Rational(0)] * frame.d
    for i in range(1, frame.n + 1):
        sign = Rational(1, 2) if i in x else Rational(-1, 2)
        for k, v in enumerate(frame.xi(i)):
            point[k] += sign * v
    return tuple(point)


def reflect(frame: Frame, point: tuple[Rational, ...]) -> tuple[Rational, ...]:
    """The map ``A``: ``e_k -> (-1)^(d+k-1) e_k``."""
    d = frame.d
    return tuple(v if (d + k) % 2 == 1 else -v for k, v in enumerate(point, start=1))


def vertex_point(frame: Frame, x: ColorSet) -> tuple[Rational, ...]:
    """Vertex of ``X`` in the zonotope spanned from the origin."""
    point = [Rational(0)] * frame.d
    for i in x:
        for k, v in enumerate(frame.xi(i)):
            point[k] += v
    return tuple(point)


def permutation(q: InversionSet) -> tuple[int, ...]:
    """The color word of a 1-dimensional cubillage."""
    if q.d != 1:
        raise PreconditionError(f"permutation view needs d=1, got d={q.d}")
    word = [0] * q.n
    for D, base in placement(q).bases.items():
        word[len(base)] = D.members[0]
    return tuple(word)


@dataclass(frozen=True, eq=False)
class _FrameGeometry:
    volumes: dict[ColorSet, Fraction]
    # per facet direction T: (dot with each color, lower support, upper support)
    facets: dict[ColorSet, tuple[dict[int, Fraction], Fraction, Fraction]]


def _exact(v: Rational) -> Fraction:
    v = Rational(v)
    return Fraction(int(v.p), int(v.q))


@lru_cache(maxsize=64)
def _geometry(frame: Frame) -> _FrameGeometry:
    n, d = frame.n, frame.d
    volumes = {D: _exact(frame.minor(D.members)) for D in enumerate_packets(n, d)}
    facets = {}
    for T in enumerate_packets(n, d - 1):
        cols = [frame.xi(c) for c in T.members]
        normal = []
        for k in range(d):
            unit = [Integer(1) if j == k else Integer(0) for j in range(d)]
            normal.append(Matrix([*cols, unit]).T.det())
        dots = {
            i: _exact(sum(u * v for u, v in zip(normal, frame.xi(i))))
            for i in range(1, n + 1)
        }
        low = sum(min(Fraction(0), v) for v in dots.values())
        high = sum(max(Fraction(0), v) for v in dots.values())
        facets[T] = (dots, low, high)
    return _FrameGeometry(volumes=volumes, facets=facets)


@dataclass(frozen=True)
class ClauseFailure:
    clause: str
    message: str
    witness: dict


@dataclass
class TilingReport:
    n: int
    d: int
    failures: list[ClauseFailure] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.failures

    @property
    def failed_clauses(self) -> set[str]:
        return {f.clause for f in self.failures}


def recover_inversions(p: Placement) -> tuple[frozenset[ColorSet], list[ColorSet]]:
    """Inverse parity rule: the inversion set a placement encodes.

    Every packet ``F`` is read once per removed color ``a ∈ F``; the second
    element of the result lists packets whose readings disagree.
    """
    members = []
    inconsistent = []
    for f in enumerate_packets(p.n, p.d + 1) if p.d + 1 <= p.n else ():
        votes = set()
        for a in f.members:
            D = f.without(a)
            base = p.bases.get(D)
            if base is None:
                continue
            odd = _above(D.mask, a) % 2 == 1
            votes.add((a in base) != odd)
        if len(votes) > 1:
            inconsistent.append(f)
        elif votes == {True}:
            members.append(f)
    return frozenset(members), inconsistent


def verify_placement(
    p: Placement, frame: Frame, expected: InversionSet | None = None
) -> TilingReport:
    """Check that a placement tiles the zonotope of ``frame``."""
    if (p.n, p.d) != (frame.n, frame.d):
        raise InvalidInputError("placement and frame disagree on (n, d)")
    n, d = p.n, p.d
    geo = _geometry(frame)
    report = TilingReport(n, d)

    # (a) volumes
    placed = sum((geo.volumes[D] for D in p.bases), Fraction(0))
    total = sum(geo.volumes.values(), Fraction(0))
    if placed != total or len(p.bases) != comb(n, d):
        report.failures.append(
            ClauseFailure("a", "cube volumes do not add up to the zonotope volume",
                          {"placed": str(placed), "total": str(total), "cubes": len(p.bases)})
        )

    # (b) facets
    counts: Counter[tuple[int, int]] = Counter()
    for D, base in p.bases.items():
        for a in D.members:
            T = D.without(a)
            counts[(T.mask, base.mask)] += 1
            counts[(T.mask, base.mask | 1 << (a - 1))] += 1
    for (t_mask, b_mask), mult in sorted(counts.items()):
        T, B = ColorSet(t_mask), ColorSet(b_mask)
        if mult > 2:
            report.failures.append(
                ClauseFailure("b", "facet shared by more than two cubes",
                              {"direction": T.members, "base": B.members, "multiplicity": mult})
            )
            continue
        if mult == 1:
            dots, low, high = geo.facets[T]
            level = sum((dots[i] for i in B.members), Fraction(0))
            if level != low and level != high:
                report.failures.append(
                    ClauseFailure("b", "unshared facet lies inside the zonotope",
                                  {"direction": T.members, "base": B.members})
                )

    # (c) vertex count
    count = len(p.vertices())
    want = expected_vertex_count(n, d)
    if count != want:
        report.failures.append(
            ClauseFailure("c", "wrong number of vertices", {"vertices": count, "expected": want})
        )

    # (d) round trip
    members, inconsistent = recover_inversions(p)
    if inconsistent:
        report.failures.append(
            ClauseFailure("d", "inverse parity rule disagrees between removed colors",
                          {"packets": [f.members for f in sorted(inconsistent)]})
        )
    elif expected is not None and members != expected.members:
        diff = sorted(members ^ expected.members)
        report.failures.append(
            ClauseFailure("d", "recovered inversion set differs",
                          {"packets": [f.members for f in diff]})
        )
    return report


def verify_tiling(q: Cubillage, frame: Frame | None = None) -> TilingReport:
    frame = frame or frame_default(q.n, q.d)
    return verify_placement(placement(q), frame, expected=q)


def barrel_fragment_exists(q: InversionSet, g: ColorSet) -> bool:
    """Whether the cubes with types in ``Gr(G, d)`` fill one translate of ``Z(G, d)``."""
    n, d = q.n, q.d
    if len(g) != d + 2 or g.max_color > n:
        raise InvalidInputError(f"{g.label()} is not a ({d + 2})-subset of [{n}]")
    if involute(g, n) != g:
        raise PreconditionError(f"barrel packet {g.label()} is not symmetric")
    outside = None
    for D in combinations(g.members, d):
        y = cube_base(q, ColorSet.from_colors(D)) - g
        if outside is None:
            outside = y
        elif y != outside:
            return False
    return True


def positive_half(x: ColorSet, n: int) -> ColorSet:
    """Colors ``m+1..2m`` of ``X``, relabeled ``1..m``."""
    return ColorSet(x.mask >> (n // 2))


def core(q: Cubillage) -> Cubillage:
    """Intersection of a symmetric cubillage with the axial subspace.

    Needs ``n = 2m`` and ``d`` even; the result lives in ``Z(m, d/2)``.
    """
    n, d = q.n, q.d
    if n % 2 or d % 2:
        raise PreconditionError(f"core needs n and d even, got n={n}, d={d}")
    if not symmetry_class(q).symmetric:
        raise PreconditionError("core needs a symmetric cubillage")
    m, h = n // 2, d // 2
    bases: dict[ColorSet, ColorSet] = {}
    for R in enumerate_packets(n, d):
        if involute(R, n) != R:
            continue
        X = cube_base(q, R)
        sym = []
        sub = R.mask
        while True:
            v = ColorSet(X.mask | sub)
            if involute(v, n) == v:
                sym.append(positive_half(v, n))
            if sub == 0:
                break
            sub = (sub - 1) & R.mask
        core_type = positive_half(R, n)
        base = min(sym, key=len)
        cell = {ColorSet(base.mask | s) for s in _submasks(core_type.mask)}
        if set(sym) != cell or len(core_type) != h:
            raise ConstructionError(
                f"symmetric vertices of cube {R.label()} do not form a {h}-cube"
            )
        bases[core_type] = base
    members, inconsistent = recover_inversions(Placement(m, h, bases))
    if inconsistent:
        raise ConstructionError(
            "core placement is inconsistent at "
            + ", ".join(f.label() for f in sorted(inconsistent))
        )
    try:
        return require_valid(InversionSet(m, h, members))
    except NotBiConvexError as exc:
        raise ConstructionError(f"core inversion set is not bi-convex: {exc.message}") from exc


def _submasks(mask: int) -> list[int]:
    out = []
    sub = mask
    while True:
        out.append(sub)
        if sub == 0:
            return out
        sub = (sub - 1) & mask
