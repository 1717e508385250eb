import json
from pathlib import Path

import pytest

from zonocube.cli import check_main, main
from zonocube.documents import emit_cubillage, parse_lines
from zonocube.checks import fixture_sq52
from zonocube.inversion import antistandard, make_cubillage, standard


def _run(capsys: pytest.CaptureFixture[str], *argv: str) -> tuple[int, str, str]:
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


@pytest.fixture()
def doc_c(tmp_path: Path) -> Path:
    path = tmp_path / "c.json"
    path.write_text(emit_cubillage(fixture_sq52()["C"]), encoding="utf-8")
    return path


def test_enumerate_json_lines(capsys: pytest.CaptureFixture[str]) -> None:
    code, out, _ = _run(capsys, "enumerate", "--n", "4", "--d", "2", "--class", "symmetric")
    assert code == 0
    assert parse_lines(out) == [standard(4, 2), antistandard(4, 2)]


def test_enumerate_csv_to_file(tmp_path: Path, capsys: pytest.CaptureFixture[str]) -> None:
    target = tmp_path / "counts.csv"
    code, out, _ = _run(capsys, "enumerate", "--n", "5", "--d", "2", "--format", "csv", "--output", str(target))
    assert code == 0 and out == ""
    assert target.read_text(encoding="utf-8") == "n,d,class,count\n5,2,all,62\n"


def test_enumerate_budget_exit_code(capsys: pytest.CaptureFixture[str]) -> None:
    code, _, err = _run(capsys, "enumerate", "--n", "5", "--d", "2", "--budget", "3")
    assert code == 3
    assert err.startswith("BudgetExceeded:")


def test_bad_dimension_exit_code(capsys: pytest.CaptureFixture[str]) -> None:
    code, _, err = _run(capsys, "enumerate", "--n", "3", "--d", "5")
    assert code == 2
    assert err.startswith("InvalidInput:")


def test_digraph_formats(capsys: pytest.CaptureFixture[str]) -> None:
    code, out, _ = _run(capsys, "digraph", "--n", "5", "--d", "2")
    assert code == 0
    obj = json.loads(out)
    assert obj["class"] == "symmetric" and len(obj["nodes"]) == 10

    code, out, _ = _run(capsys, "digraph", "--n", "4", "--d", "2", "--format", "dot")
    assert code == 0
    assert "penwidth=3" in out


def test_flips_of_a_document(doc_c: Path, capsys: pytest.CaptureFixture[str]) -> None:
    code, out, _ = _run(capsys, "flips", "--input", str(doc_c))
    assert code == 0
    assert json.loads(out) == [
        {"kind": "barrel", "packets": [[1, 2, 4], [1, 2, 5], [1, 4, 5], [2, 4, 5]], "barrel": [1, 2, 4, 5]}
    ]

    code, out, _ = _run(capsys, "flips", "--input", str(doc_c), "--type-a")
    assert code == 0
    assert all(f["kind"] == "typeA" for f in json.loads(out))


def test_flips_rejects_invalid_document(tmp_path: Path, capsys: pytest.CaptureFixture[str]) -> None:
    path = tmp_path / "bad.json"
    path.write_text('{"n":4,"d":1,"inversions":[[1,3]]}', encoding="utf-8")
    code, _, err = _run(capsys, "flips", "--input", str(path))
    assert code == 2
    assert err.startswith("NotBiConvex:")


def test_map_red(doc_c: Path, capsys: pytest.CaptureFixture[str]) -> None:
    code, out, _ = _run(capsys, "map", "--input", str(doc_c), "--map", "red")
    assert code == 0
    assert out.strip() == emit_cubillage(standard(4, 2))

    code, _, err = _run(capsys, "map", "--input", str(doc_c), "--map", "cor")
    assert code == 2
    assert err.startswith("Precondition:")


def test_lift_sq41(capsys: pytest.CaptureFixture[str]) -> None:
    code, out, _ = _run(capsys, "lift", "--n", "4", "--d", "1")
    assert code == 0
    assert parse_lines(out) == [make_cubillage(4, 2, ["123", "124"]), make_cubillage(4, 2, ["134", "234"])]

    code, _, err = _run(capsys, "lift", "--n", "4", "--d", "1", "--chain-index", "9")
    assert code == 2
    assert "chain index" in err


def test_lift_through_a_barrel(capsys: pytest.CaptureFixture[str]) -> None:
    code, _, err = _run(capsys, "lift", "--n", "5", "--d", "1")
    assert code == 2
    assert err.startswith("BarrelHole:")


def test_export_svg_and_trellis(tmp_path: Path, capsys: pytest.CaptureFixture[str]) -> None:
    path = tmp_path / "std.json"
    path.write_text(emit_cubillage(standard(4, 2)), encoding="utf-8")
    code, out, _ = _run(capsys, "export", "--input", str(path), "--format", "svg")
    assert code == 0
    assert out.count("<polygon") == 6

    code, out, _ = _run(capsys, "export", "--trellis", "--n", "4", "--d", "1")
    assert code == 0
    assert json.loads(out)["n"] == 4

    code, _, _ = _run(capsys, "export")
    assert code == 2


def test_export_dot_from_digraph_document(tmp_path: Path, capsys: pytest.CaptureFixture[str]) -> None:
    code, out, _ = _run(capsys, "digraph", "--n", "4", "--d", "1")
    path = tmp_path / "sq41.json"
    path.write_text(out, encoding="utf-8")
    code, out, _ = _run(capsys, "export", "--input", str(path))
    assert code == 0
    assert out.startswith('digraph "SQ_4_1"')


def test_check_pass_and_summary(capsys: pytest.CaptureFixture[str]) -> None:
    code, out, err = _run(capsys, "check", "skew-count", "--n", "4", "--d", "2")
    assert code == 0
    assert json.loads(out)["verdict"] == "pass"
    assert err.startswith("[  1/1] skew-count(4,2) pass")
    assert "1 checks, 0 failed" in err


def test_check_entry_point(capsys: pytest.CaptureFixture[str]) -> None:
    code = check_main(["mirror-spectrum", "--n", "4", "--d", "1"])
    out, _ = capsys.readouterr()
    assert code == 0
    assert json.loads(out)["check"] == "mirror-spectrum"


def test_check_needs_both_parameters(capsys: pytest.CaptureFixture[str]) -> None:
    code, _, err = _run(capsys, "check", "oracle", "--n", "4")
    assert code == 2
    assert "needs both" in err


def test_invalid_settings_exit(monkeypatch: pytest.MonkeyPatch, capsys: pytest.CaptureFixture[str]) -> None:
    monkeypatch.setenv("ZONOCUBE_WORKERS", "0")
    code, _, err = _run(capsys, "enumerate", "--n", "3", "--d", "1")
    assert code == 2
    assert "Invalid settings" in err


def test_budget_exit_code_on_a_deep_search(capsys: pytest.CaptureFixture[str]) -> None:
    code, _, err = _run(capsys, "enumerate", "--n", "13", "--d", "6", "--budget", "5")
    assert code == 3
    assert err.startswith("BudgetExceeded:")


def test_symmetric_documents_stay_symmetric(
    tmp_path: Path, capsys: pytest.CaptureFixture[str]
) -> None:
    path = tmp_path / "c_sym.json"
    path.write_text(emit_cubillage(fixture_sq52()["C"], "symmetric"), encoding="utf-8")

    code, out, _ = _run(capsys, "map", "--input", str(path), "--map", "red")
    assert code == 0
    assert out.strip() == '{"n":4,"d":2,"label_mode":"symmetric","inversions":[]}'

    code, out, _ = _run(capsys, "flips", "--input", str(path))
    assert code == 0
    assert json.loads(out) == [
        {
            "kind": "barrel",
            "packets": [[-2, -1, 1], [-2, -1, 2], [-2, 1, 2], [-1, 1, 2]],
            "barrel": [-2, -1, 1, 2],
        }
    ]
