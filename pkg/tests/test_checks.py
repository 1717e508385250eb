import pytest

from zonocube.checks import (
    SQ52_EDGES,
    SUITES,
    Verdict,
    check_barrel_criteria_divergence,
    check_conjecture1,
    check_counts,
    check_example_fixtures,
    check_mirror_spectrum,
    check_lifts,
    check_morphism_conjectures,
    check_oracle,
    check_skew_count,
    conjecture1_proved,
    fixture_sq52,
    run_check,
)
from zonocube.errors import InvalidInputError
from zonocube.inversion import symmetry_class


def test_fixtures_are_symmetric():
    named = fixture_sq52()
    assert len(named) == 10
    assert all(symmetry_class(q).symmetric for q in named.values())
    assert {x for edge in SQ52_EDGES for x in edge[:2]} == set(named)


def test_conjecture1_on_sq52():
    report = check_conjecture1(5, 2)
    assert report.verdict is Verdict.PASS
    assert report.findings["nodes"] == 10
    assert report.findings["edges"] == {"simple": 4, "double": 4, "barrel": 2}
    assert report.findings["sources"] == [[]]
    assert report.findings["weakly_connected"]


def test_conjecture1_parameters():
    assert conjecture1_proved(6, 3)
    assert conjecture1_proved(7, 4)
    assert conjecture1_proved(9, 2)
    assert not conjecture1_proved(9, 4)
    assert check_conjecture1(4, 1).verdict is Verdict.PASS


def test_report_serializes():
    obj = check_skew_count(4, 2).to_dict()
    assert list(obj) == ["check", "parameters", "verdict", "witnesses", "findings", "runtime"]
    assert obj["verdict"] == "pass"
    assert obj["findings"] == {"symmetric": 2, "skew": 2}


def test_skew_count_is_report_only_for_odd_parameters():
    report = check_skew_count(5, 2)
    assert report.verdict is Verdict.REPORT_ONLY
    assert report.findings["skew"] == 0


def test_morphisms_at_m2_d2():
    report = check_morphism_conjectures(2, 2)
    assert report.verdict is Verdict.PASS, report.witnesses
    assert report.findings["conjectures_hold"]
    assert report.findings["red"]["fiber_sizes"] == [5, 5]
    assert report.findings["cor"]["transitions"] == {"barrel->typeA": 1}


def test_red_sends_barrels_to_simple_flips_for_odd_d():
    report = check_morphism_conjectures(2, 1)
    assert report.witnesses == []
    assert report.verdict is Verdict.REPORT_ONLY
    assert report.findings["red"]["transitions"] == {"barrel->simple": 4, "double->double": 4}
    assert "cor" not in report.findings


@pytest.mark.slow
def test_morphisms_at_m3_d2():
    report = check_morphism_conjectures(3, 2)
    assert report.verdict is Verdict.PASS, report.witnesses
    assert report.findings["cor"]["full"]
    assert report.findings["red"]["full"]


def test_lifts_of_sq41():
    report = check_lifts(4, 1)
    assert report.verdict is Verdict.PASS, report.witnesses
    assert report.findings["distinct_lifts"] == 2
    assert report.findings["covers_skew_class"]
    assert report.findings["type_a_lifts"] == 8
    with pytest.raises(InvalidInputError):
        check_lifts(5, 2)


@pytest.mark.parametrize("n,d", [(4, 1), (4, 2), (5, 2)])
def test_oracle_and_mirror(n, d):
    assert check_oracle(n, d).verdict is Verdict.PASS
    assert check_mirror_spectrum(n, d).verdict is Verdict.PASS


def test_barrel_divergence_is_report_only():
    report = check_barrel_criteria_divergence(4, 2)
    assert report.verdict is Verdict.REPORT_ONLY
    assert isinstance(report.findings["divergent"], list)


def test_run_check_dispatch():
    seen = []
    reports = run_check("skew-count", (4, 2), progress_callback=lambda i, n, r: seen.append((i, n)))
    assert [r.check_id for r in reports] == ["skew-count"]
    assert seen == [(1, 1)]
    with pytest.raises(InvalidInputError):
        run_check("nonsense")
    assert set(SUITES) >= {"counts", "fixtures", "conjecture1", "lifts", "oracle"}
    assert (2, 1) in SUITES["morphisms"][1]


@pytest.mark.slow
def test_published_fixtures():
    report = check_example_fixtures()
    assert report.verdict is Verdict.PASS, report.witnesses
    assert report.findings["SQ(4,2)"] == {"nodes": 2, "edges": 1}


@pytest.mark.slow
def test_known_counts():
    assert check_counts().verdict is Verdict.PASS


@pytest.mark.slow
@pytest.mark.parametrize("n,d", [(6, 3), (6, 2), (7, 2)])
def test_conjecture1_gate(n, d):
    assert check_conjecture1(n, d).verdict is Verdict.PASS
