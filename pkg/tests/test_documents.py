import json

import pytest

from zonocube.checks import fixture_sq52
from zonocube.colors import ColorSet
from zonocube.digraph import class_digraph
from zonocube.documents import (
    LabelMode,
    cubillage_object,
    emit_cubillage,
    emit_digraph,
    emit_lines,
    flip_object,
    parse_cubillage,
    parse_digraph,
    parse_document,
    parse_inversion_set,
    parse_lines,
    read_document,
    write_document,
)
from zonocube.enumeration import enumerate_cubillages
from zonocube.errors import DocumentError, NotBiConvexError
from zonocube.flips import SymFlip
from zonocube.inversion import InversionSet, make_cubillage, standard


def test_emit_is_canonical():
    q = make_cubillage(5, 2, ["235", "134", "234"])
    assert emit_cubillage(q) == '{"n":5,"d":2,"inversions":[[1,3,4],[2,3,4],[2,3,5]]}'
    assert emit_cubillage(standard(4, 2)) == '{"n":4,"d":2,"inversions":[]}'


def test_symmetric_labels():
    a = fixture_sq52()["A"]
    text = emit_cubillage(a, LabelMode.SYMMETRIC)
    assert text == '{"n":5,"d":2,"label_mode":"symmetric","inversions":[[-1,0,1]]}'
    assert parse_cubillage(text) == a
    assert cubillage_object(a, "natural") == {"n": 5, "d": 2, "inversions": [[2, 3, 4]]}


def test_documents_keep_their_label_mode():
    a = fixture_sq52()["A"]
    text = emit_cubillage(a, LabelMode.SYMMETRIC)
    doc = parse_document(text)
    assert doc.label_mode is LabelMode.SYMMETRIC
    assert doc.cubillage == a
    assert doc.emit() == text
    assert doc.emit_like(standard(5, 2)) == '{"n":5,"d":2,"label_mode":"symmetric","inversions":[]}'

    natural = emit_cubillage(a)
    assert parse_document(natural).label_mode is LabelMode.NATURAL
    assert parse_document(natural).emit() == natural


def test_flip_object_labels():
    flip = SymFlip.barrel_of(ColorSet.parse("1245"))
    assert flip_object(flip, 5) == {
        "kind": "barrel",
        "packets": [[1, 2, 4], [1, 2, 5], [1, 4, 5], [2, 4, 5]],
        "barrel": [1, 2, 4, 5],
    }
    assert flip_object(flip, 5, "symmetric") == {
        "kind": "barrel",
        "packets": [[-2, -1, 1], [-2, -1, 2], [-2, 1, 2], [-1, 1, 2]],
        "barrel": [-2, -1, 1, 2],
    }


def test_lines_round_trip():
    items = enumerate_cubillages(4, 2)
    text = emit_lines(items)
    assert text.count("\n") == len(items)
    assert parse_lines(text + "\n") == items


def test_parse_reports_the_violated_stick():
    with pytest.raises(NotBiConvexError) as exc:
        parse_cubillage('{"n":4,"d":1,"inversions":[[1,3]]}')
    assert exc.value.stick.label() == "123"
    u = parse_inversion_set('{"n":4,"d":1,"inversions":[[1,3]]}')
    assert isinstance(u, InversionSet)


def test_syntax_errors_carry_a_position():
    with pytest.raises(DocumentError) as exc:
        parse_cubillage('{"n":4,\n"d":}', source="q.json")
    assert exc.value.message.startswith("q.json:2:")
    assert exc.value.code == "MalformedDocument"


@pytest.mark.parametrize(
    "text,path",
    [
        ('{"n":4,"d":1}', "$: missing key 'inversions'"),
        ('{"n":4,"d":1,"inversions":[],"extra":1}', "$.extra"),
        ('{"n":4,"d":1,"inversions":[[1,"2"]]}', "$.inversions[0][1]"),
        ('{"n":4,"d":1,"inversions":[[1,5]]}', "$.inversions[0]"),
        ('{"n":4,"d":1,"inversions":[[1,2,3]]}', "$.inversions"),
        ('{"n":4,"d":true,"inversions":[]}', "$.d"),
        ('{"n":4,"d":6,"inversions":[]}', "$.d"),
        ('{"n":4,"d":1,"label_mode":"greek","inversions":[]}', "$.label_mode"),
        ('{"n":4,"d":1,"label_mode":"symmetric","inversions":[[0,1]]}', "$.inversions[0][0]"),
        ("[]", "$"),
    ],
)
def test_schema_errors_carry_a_path(text, path):
    with pytest.raises(DocumentError) as exc:
        parse_cubillage(text)
    assert exc.value.message.startswith(path)


def test_digraph_document():
    g = class_digraph(5, 2, "symmetric")
    text = emit_digraph(g)
    obj = json.loads(text)
    assert list(obj) == ["n", "d", "class", "nodes", "edges"]
    assert obj["nodes"][0] == {"id": 0, "rank": 0, "inversions": []}
    assert {"src", "dst", "kind"} == set(obj["edges"][0])

    back = parse_digraph(text)
    assert back.nodes == g.nodes
    assert back.edges == g.edges
    assert emit_digraph(back) == text


def test_digraph_document_rejects_bad_ids():
    obj = json.loads(emit_digraph(class_digraph(4, 2, "symmetric")))
    obj["nodes"][1]["id"] = 7
    with pytest.raises(DocumentError) as exc:
        parse_digraph(json.dumps(obj))
    assert exc.value.message.startswith("$.nodes[1].id")

    obj = json.loads(emit_digraph(class_digraph(4, 2, "symmetric")))
    obj["edges"][0]["kind"] = "triple"
    with pytest.raises(DocumentError):
        parse_digraph(json.dumps(obj))


def test_write_and_read(tmp_path):
    target = tmp_path / "out" / "q.json"
    write_document(target, emit_cubillage(standard(5, 2)))
    assert read_document(target) == '{"n":5,"d":2,"inversions":[]}'
    assert not (tmp_path / "out" / "q.json.tmp").exists()
    with pytest.raises(DocumentError):
        read_document(tmp_path / "missing.json")
