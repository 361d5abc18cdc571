"""JSON documents for lattices and reports, and DOT export.

A lattice document looks like::

    {
      "schema": "spsforge/lattice@1",
      "elements": ["0", "a", "b", "1"],
      "covers": [["0", "a"], ["0", "b"], ["a", "1"], ["b", "1"]],
      "upper_order": {"0": ["a", "b"], ...},      # optional
      "lower_order": {"1": ["a", "b"], ...},      # optional
      "metadata": {"base": "grid:1x1", "forks": []}
    }

Without rotation orders the document describes a plain lattice (or, for
search targets, a plain order).
"""
from __future__ import annotations

import json
from pathlib import Path

from .errors import LatticeError, ParseError, ValidationError
from .order import FiniteLattice, FiniteOrder, build_lattice
from .planar import PlanarDiagram, build_diagram

LATTICE_SCHEMA = "spsforge/lattice@1"


def to_document(X, metadata=None) -> dict:
    """Document for a PlanarDiagram, FiniteLattice or FiniteOrder."""
    if isinstance(X, PlanarDiagram):
        doc = {
            "schema": LATTICE_SCHEMA,
            "elements": list(X.elements),
            "covers": [list(c) for c in X.covers],
            "upper_order": {x: list(X.upper_order[x]) for x in X.elements},
            "lower_order": {x: list(X.lower_order[x]) for x in X.elements},
            "metadata": _jsonable(X.metadata),
        }
    else:
        order = X.order if isinstance(X, FiniteLattice) else X
        doc = {
            "schema": LATTICE_SCHEMA,
            "elements": list(order.elements),
            "covers": [list(c) for c in order.covers],
            "metadata": {},
        }
    if metadata:
        doc["metadata"].update(_jsonable(metadata))
    return doc


def _jsonable(obj):
    return json.loads(json.dumps(obj))


def _field(doc, name, kind, required=True):
    if name not in doc:
        if required:
            raise ParseError("missing field", name)
        return None
    value = doc[name]
    if not isinstance(value, kind):
        raise ParseError(f"expected {kind.__name__}, got {type(value).__name__}", name)
    return value


def _parse(doc):
    if not isinstance(doc, dict):
        raise ParseError("document must be a JSON object")
    schema = doc.get("schema", LATTICE_SCHEMA)
    if schema != LATTICE_SCHEMA:
        raise ParseError(f"unsupported schema {schema!r}", "schema")
    elements = _field(doc, "elements", list, required=False)
    covers = _field(doc, "covers", list)
    for k, pair in enumerate(covers):
        if not (isinstance(pair, list) and len(pair) == 2
                and all(isinstance(x, str) for x in pair)):
            raise ParseError("expected a [lower, upper] pair of strings", f"covers[{k}]")
    if elements is not None:
        for k, x in enumerate(elements):
            if not isinstance(x, str):
                raise ParseError("element ids must be strings", f"elements[{k}]")
    up = _field(doc, "upper_order", dict, required=False)
    down = _field(doc, "lower_order", dict, required=False)
    if (up is None) != (down is None):
        raise ParseError("upper_order and lower_order must be given together",
                         "upper_order" if up is None else "lower_order")
    metadata = _field(doc, "metadata", dict, required=False) or {}
    return elements, [tuple(p) for p in covers], up, down, metadata


def from_document(doc, source=None):
    """PlanarDiagram when rotation orders are present, FiniteLattice otherwise."""
    elements, covers, up, down, metadata = _parse(doc)
    try:
        if up is None:
            return build_lattice(covers, elements)
        return build_diagram(covers, up, down, elements=elements, metadata=metadata)
    except LatticeError as exc:
        raise ValidationError(exc, source) from exc


def order_from_document(doc, source=None) -> FiniteOrder:
    elements, covers, _, _, _ = _parse(doc)
    try:
        return FiniteOrder(covers, elements)
    except LatticeError as exc:
        raise ValidationError(exc, source) from exc


def dumps(doc) -> str:
    return json.dumps(doc, indent=2, ensure_ascii=False) + "\n"


def _read(path):
    path = Path(path)
    try:
        return json.loads(path.read_text(encoding="utf-8"))
    except json.JSONDecodeError as exc:
        raise ParseError(f"line {exc.lineno} column {exc.colno}: {exc.msg}", str(path)) from exc


def load(path):
    return from_document(_read(path), source=str(path))


def load_order(path) -> FiniteOrder:
    return order_from_document(_read(path), source=str(path))


def save(X, path, metadata=None):
    Path(path).write_text(dumps(to_document(X, metadata)), encoding="utf-8")


# -- DOT ---------------------------------------------------------------

PALETTE = ("#d62728", "#1f77b4", "#2ca02c", "#9467bd", "#ff7f0e",
           "#8c564b", "#e377c2", "#17becf", "#bcbd22", "#7f7f7f")


def _quote(s):
    return '"' + str(s).replace("\\", "\\\\").replace('"', '\\"') + '"'


def export_dot(D, coloring=None, name="L") -> str:
    """Hasse diagram in DOT, ranked by height, bottom at the bottom.

    With a colouring, each edge is labelled with its join-irreducible
    congruence and drawn in a colour fixed by that label's first appearance.
    """
    L = D.lattice if isinstance(D, PlanarDiagram) else D
    h = L.height
    if isinstance(D, PlanarDiagram):
        ordered = sorted(L.elements, key=lambda x: (h[L.idx(x)], D.position[x]))
        edges = list(D.cover_order)
    else:
        ordered = sorted(L.elements, key=lambda x: (h[L.idx(x)], L.idx(x)))
        edges = [tuple(c) for c in L.covers]
    lines = [f"digraph {_quote(name)} {{", "  rankdir=BT;",
             "  node [shape=circle, width=0.3, fontsize=10];",
             "  edge [arrowhead=none];"]
    for x in ordered:
        lines.append(f"  {_quote(x)};")
    levels = {}
    for x in ordered:
        levels.setdefault(h[L.idx(x)], []).append(x)
    for level in sorted(levels):
        members = " ".join(_quote(x) for x in levels[level])
        lines.append(f"  {{ rank=same; {members} }}")
    hues = {}
    for a, b in edges:
        attrs = ""
        if coloring is not None:
            c = coloring[(a, b)]
            hue = hues.setdefault(c, PALETTE[len(hues) % len(PALETTE)])
            attrs = f" [label={_quote(c)}, color={_quote(hue)}, fontcolor={_quote(hue)}]"
        lines.append(f"  {_quote(a)} -> {_quote(b)}{attrs};")
    lines.append("}")
    return "\n".join(lines) + "\n"
