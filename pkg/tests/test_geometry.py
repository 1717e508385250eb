import pytest
from hypothesis import given, settings, strategies as st
from sympy import Integer, Rational

from zonocube.checks import fixture_sq52
from zonocube.colors import ColorSet, full_set, involute
from zonocube.enumeration import enumerate_cubillages
from zonocube.errors import InvalidInputError, PreconditionError
from zonocube.geometry import (
    Frame,
    barrel_fragment_exists,
    centered_point,
    core,
    cube_base,
    expected_vertex_count,
    frame_default,
    mirror_spectrum,
    permutation,
    placement,
    recover_inversions,
    reflect,
    spectrum,
    verify_placement,
    verify_tiling,
)
from zonocube.inversion import antistandard, involuted, make_cubillage, standard

Q52 = enumerate_cubillages(5, 2)


def cs(text: str) -> ColorSet:
    return ColorSet.parse(text)


def test_default_frames():
    assert frame_default(4, 2).t == (Integer(-2), Integer(-1), Integer(1), Integer(2))
    assert frame_default(5, 2).t == tuple(Integer(k) for k in (-2, -1, 0, 1, 2))
    for n, d in [(4, 2), (5, 2), (6, 3), (7, 4)]:
        frame = frame_default(n, d)
        assert frame.is_cyclic()
        assert frame.is_symmetric()
    assert frame_default(4, 2).xi(1) == (1, -2)


def test_frame_rejects_unordered_parameters():
    with pytest.raises(InvalidInputError):
        Frame(3, 2, (Integer(0), Integer(0), Integer(1)))
    with pytest.raises(InvalidInputError):
        Frame(3, 2, (Integer(0), Integer(1)))


def test_cube_base_examples():
    for i in range(1, 6):
        assert cube_base(standard(5, 1), ColorSet.of(i)) == ColorSet.from_colors(range(1, i))
    assert cube_base(antistandard(5, 1), cs("3")) == cs("45")
    assert cube_base(standard(5, 2), cs("24")) == cs("3")
    with pytest.raises(InvalidInputError):
        cube_base(standard(5, 2), cs("2"))


def test_spectra():
    assert spectrum(standard(2, 1)).vertices == {cs(""), cs("1"), cs("12")}
    assert spectrum(antistandard(2, 1)).vertices == {cs(""), cs("2"), cs("12")}
    s = spectrum(standard(5, 2))
    assert len(s) == 16 == expected_vertex_count(5, 2)
    assert cs("") in s and full_set(5) in s


def test_permutation_view():
    assert permutation(standard(4, 1)) == (1, 2, 3, 4)
    assert permutation(antistandard(4, 1)) == (4, 3, 2, 1)
    assert permutation(make_cubillage(4, 1, ["23"])) == (1, 3, 2, 4)
    with pytest.raises(PreconditionError):
        permutation(standard(4, 2))


def test_tiling_oracle_accepts_standard():
    report = verify_tiling(standard(5, 2), frame_default(5, 2))
    assert report.passed
    assert report.failures == []


def test_tiling_oracle_rejects_swapped_bases():
    p = placement(standard(5, 2)).swapped(cs("12"), cs("14"))
    report = verify_placement(p, frame_default(5, 2), expected=standard(5, 2))
    assert not report.passed
    assert "b" in report.failed_clauses
    assert all(f.witness for f in report.failures)


def test_tiling_oracle_rejects_missing_cube():
    p = placement(standard(4, 2))
    del p.bases[cs("23")]
    report = verify_placement(p, frame_default(4, 2))
    assert "a" in report.failed_clauses


@pytest.mark.parametrize("q", Q52, ids=lambda q: str(q.rank) + ":" + ",".join(f.label() for f in q.sorted_members()))
def test_tiling_oracle_on_every_cubillage_of_52(q):
    assert verify_tiling(q).passed


@pytest.mark.parametrize("n,d", [(4, 1), (5, 1), (4, 2)])
def test_round_trip_is_identity(n, d):
    for q in enumerate_cubillages(n, d):
        members, inconsistent = recover_inversions(placement(q))
        assert inconsistent == []
        assert members == q.members


@pytest.mark.slow
@pytest.mark.parametrize("n,d", [(6, 2), (6, 3), (7, 2)])
def test_tiling_oracle_gate(n, d):
    frame = frame_default(n, d)
    for q in enumerate_cubillages(n, d):
        assert verify_tiling(q, frame).passed


def test_barrel_fragments():
    sq = fixture_sq52()
    assert barrel_fragment_exists(sq["C"], cs("1245"))
    assert not barrel_fragment_exists(standard(5, 2), cs("1245"))
    assert barrel_fragment_exists(standard(4, 2), cs("1234"))
    with pytest.raises(PreconditionError):
        barrel_fragment_exists(standard(5, 2), cs("1234"))


def test_core_of_extremes():
    assert core(standard(4, 2)) == standard(2, 1)
    assert core(antistandard(4, 2)) == antistandard(2, 1)
    assert core(standard(6, 2)) == standard(3, 1)
    assert core(antistandard(6, 2)) == antistandard(3, 1)


def test_core_preconditions():
    with pytest.raises(PreconditionError):
        core(standard(5, 2))
    with pytest.raises(PreconditionError):
        core(standard(4, 1))
    with pytest.raises(PreconditionError):
        core(make_cubillage(4, 2, ["123"]))


@settings(max_examples=40, deadline=None)
@given(st.sampled_from(Q52 + enumerate_cubillages(4, 1) + enumerate_cubillages(4, 2)))
def test_involuted_spectrum_is_the_mirror_image(q):
    assert spectrum(involuted(q)) == mirror_spectrum(spectrum(q))


@pytest.mark.parametrize("n,d", [(4, 1), (4, 2), (5, 2), (5, 3)])
def test_reflection_acts_on_centered_vertices(n, d):
    frame = frame_default(n, d)
    for x in spectrum(standard(n, d)).vertices:
        y = involute(x, n) if d % 2 == 0 else full_set(n) - involute(x, n)
        assert reflect(frame, centered_point(frame, x)) == centered_point(frame, y)


def test_centered_point_of_full_set():
    frame = frame_default(4, 2)
    assert centered_point(frame, full_set(4)) == (Rational(2), Rational(0))
