import pytest
from hypothesis import given, settings, strategies as st

from zonocube.checks import fixture_sq41, fixture_sq52
from zonocube.colors import ColorSet, stick_members
from zonocube.enumeration import enumerate_cubillages
from zonocube.errors import FlipNotApplicableError, PreconditionError
from zonocube.flips import (
    BarrelCriteria,
    Direction,
    FlipKind,
    SymFlip,
    apply_flip,
    barrel_criteria,
    barrel_decomposition,
    double_decomposition,
    lowering_flips_A,
    raising_flips_A,
    symmetric_lowering_flips,
    symmetric_raising_flips,
)
from zonocube.inversion import antistandard, make_cubillage, standard

Q52 = enumerate_cubillages(5, 2)
SQ52 = fixture_sq52()


def cs(text: str) -> ColorSet:
    return ColorSet.parse(text)


def test_kind_deltas():
    assert FlipKind.SIMPLE.delta(2) == 1
    assert FlipKind.DOUBLE.delta(2) == 2
    assert FlipKind.BARREL.delta(2) == 4
    assert FlipKind.BARREL.delta(1) == 3


def test_type_a_flips_at_the_extremes():
    assert raising_flips_A(antistandard(5, 2)) == []
    assert lowering_flips_A(standard(5, 2)) == []
    assert cs("234") in raising_flips_A(standard(5, 2))
    assert cs("135") not in raising_flips_A(standard(5, 2))


def test_symmetric_raising_flips_of_standard_52():
    flips = symmetric_raising_flips(standard(5, 2))
    assert flips == [
        SymFlip.simple(cs("234")),
        SymFlip(FlipKind.DOUBLE, (cs("123"), cs("345"))),
    ]
    assert [f.label() for f in flips] == ["simple{234}", "double{123,345}"]


def test_barrel_flip_from_c_to_d():
    c, d = SQ52["C"], SQ52["D"]
    flips = symmetric_raising_flips(c)
    assert flips == [SymFlip.barrel_of(cs("1245"))]
    assert apply_flip(c, flips[0]) == d
    assert symmetric_lowering_flips(d)[-1] == SymFlip.barrel_of(cs("1245"))


def test_barrel_not_applicable_at_standard():
    with pytest.raises(FlipNotApplicableError) as exc:
        apply_flip(standard(5, 2), SymFlip.barrel_of(cs("1245")))
    assert exc.value.reason == "validity"


def test_flip_rejections_carry_a_reason():
    q = standard(5, 2)
    with pytest.raises(FlipNotApplicableError) as exc:
        apply_flip(q, SymFlip.simple(cs("234")), Direction.LOWER)
    assert exc.value.reason == "state"
    with pytest.raises(FlipNotApplicableError) as exc:
        apply_flip(q, SymFlip.simple(cs("123")))
    assert exc.value.reason == "shape"
    with pytest.raises(FlipNotApplicableError) as exc:
        apply_flip(q, SymFlip.simple(cs("135")))
    assert exc.value.reason == "validity"
    asym = make_cubillage(5, 2, ["123"])
    with pytest.raises(FlipNotApplicableError) as exc:
        apply_flip(asym, SymFlip.simple(cs("234")))
    assert exc.value.reason == "asymmetric"


def test_symmetric_detection_needs_symmetry():
    with pytest.raises(PreconditionError):
        symmetric_raising_flips(make_cubillage(5, 2, ["123"]))


def test_sq41_flips_from_standard():
    flips = symmetric_raising_flips(standard(4, 1))
    assert flips == [
        SymFlip.simple(cs("23")),
        SymFlip(FlipKind.DOUBLE, (cs("12"), cs("34"))),
    ]
    assert apply_flip(standard(4, 1), flips[1]) == fixture_sq41()["C~"]


def test_decompositions():
    q = standard(5, 2)
    double = SymFlip(FlipKind.DOUBLE, (cs("123"), cs("345")))
    assert double_decomposition(q, double) == (cs("123"), cs("345"))

    order = barrel_decomposition(SQ52["C"], cs("1245"))
    assert order is not None
    assert sorted(order) == list(stick_members(cs("1245")).members)
    assert barrel_decomposition(q, cs("1245")) is None


def test_barrel_criteria_at_c():
    found = barrel_criteria(SQ52["C"])
    assert BarrelCriteria(cs("1245"), Direction.RAISE, True, True) in found


@settings(max_examples=50, deadline=None)
@given(st.sampled_from(Q52))
def test_raise_then_lower_is_identity(q):
    for p in raising_flips_A(q):
        up = apply_flip(q, p)
        assert up.rank == q.rank + 1
        assert p in lowering_flips_A(up)
        assert apply_flip(up, p, Direction.LOWER) == q


@pytest.mark.parametrize("name", sorted(SQ52))
def test_symmetric_flips_keep_symmetry(name):
    q = SQ52[name]
    for f in symmetric_raising_flips(q):
        up = apply_flip(q, f)
        assert up.rank == q.rank + f.kind.delta(2)
        assert up in set(enumerate_cubillages(5, 2, "symmetric"))
        assert f in symmetric_lowering_flips(up)
