import json
import re

import pytest

from spsforge.canonical import canonical_key
from spsforge.congruence import ji_congruence_order
from spsforge.errors import NotALattice, ParseError, ValidationError
from spsforge.io import (dumps, export_dot, from_document, load, load_order, save,
                         to_document)
from spsforge.order import P_D8, FiniteLattice
from spsforge.planar import PlanarDiagram, grid

from conftest import l1


def test_round_trip_preserves_keys(tmp_path, catalogue):
    for name, L in catalogue.items():
        path = tmp_path / f"{name}.json"
        save(L, path)
        back = load(path)
        assert isinstance(back, FiniteLattice)
        assert canonical_key(back) == canonical_key(L), name


def test_diagram_round_trip(tmp_path):
    D = l1()
    save(D, tmp_path / "l1.json")
    E = load(tmp_path / "l1.json")
    assert isinstance(E, PlanarDiagram)
    assert E.faces == D.faces and len(E.faces) == 3
    assert E.upper_order == D.upper_order and E.lower_order == D.lower_order
    assert E.metadata == D.metadata
    assert to_document(E) == to_document(D)


def test_grid_document_shape():
    doc = to_document(grid(1, 1))
    assert doc["schema"] == "spsforge/lattice@1"
    assert doc["elements"] == ["0", "a", "b", "1"]
    assert doc["upper_order"]["0"] == ["a", "b"]
    assert list(doc) == ["schema", "elements", "covers", "upper_order",
                         "lower_order", "metadata"]
    assert dumps(doc) == dumps(to_document(grid(1, 1)))


def test_missing_cover_reports_pair():
    doc = {"covers": [["0", "a"], ["0", "b"], ["a", "1"]]}
    with pytest.raises(ValidationError) as info:
        from_document(doc)
    cause = info.value.cause
    assert isinstance(cause, NotALattice)
    assert set(cause.pair) == {"b", "1"}


@pytest.mark.parametrize("doc, field", [
    ({"elements": ["0"]}, "covers"),
    ({"covers": [["0"]]}, "covers[0]"),
    ({"covers": [], "elements": [1]}, "elements[0]"),
    ({"covers": [], "upper_order": {}}, "lower_order"),
    ({"schema": "other@9", "covers": []}, "schema"),
])
def test_parse_errors_name_the_field(doc, field):
    with pytest.raises(ParseError) as info:
        from_document(doc)
    assert info.value.field == field


def test_bad_json_names_the_line(tmp_path):
    path = tmp_path / "bad.json"
    path.write_text('{\n  "covers": [\n  oops\n]}\n')
    with pytest.raises(ParseError) as info:
        load(path)
    assert "line 3" in str(info.value)


def test_target_order_file(tmp_path):
    path = tmp_path / "p.json"
    save(P_D8, path)
    P = load_order(path)
    assert sorted(P.covers) == sorted(P_D8.covers)
    assert "upper_order" not in json.loads(path.read_text())


def test_dot_for_square():
    text = export_dot(grid(1, 1))
    assert text.count("->") == 4
    nodes = re.findall(r'^  "([^"]+)";$', text, flags=re.M)
    assert nodes == ["0", "a", "b", "1"]
    ranks = re.findall(r"rank=same; ([^}]*)}", text)
    assert [r.split() for r in ranks] == [['"0"'], ['"a"', '"b"'], ['"1"']]
    assert "rankdir=BT" in text


def test_dot_with_colouring():
    D = l1()
    _, coloring = ji_congruence_order(D)
    text = export_dot(D, coloring)
    edges = [line for line in text.splitlines() if "->" in line]
    assert len(edges) == 9
    labels = {re.search(r'label="([^"]+)"', e).group(1) for e in edges}
    assert labels == {"α", "β", "γ"}
    assert text == export_dot(D, coloring)
