"""JSON documents describing a monoid and named sets, subsets, functions and topologies.

    {
      "monoid": {"catalog": "lukasiewicz", "n": 3},
      "sets": {"X": {"elements": ["a", "b"], "E": [["1", "1/2"], ["1/2", "1"]]}},
      "subsets": {"A": {"set": "X", "values": ["1", "0"]}},
      "functions": {"F": {"from": "X", "to": "X", "matrix": [["1", "1/2"], ["1/2", "1"]]}},
      "topologies": {"T": {"set": "X", "subbase": [["1", "1/2"]]}}
    }

The monoid is a catalog entry (``{"catalog": name, "n": k}``, ``{"name": "L3xL3"}``,
``{"product": [spec, spec]}``) or explicit tables
(``{"labels": [...], "leq": [[bool]], "tnorm": [[label]]}``). Lattice values are
carrier labels; bare JSON numbers are read as their decimal text, so ``1`` means
the label ``"1"``. ``E`` may be omitted for a crisp equality.
"""
import json
from dataclasses import dataclass, field

import numpy as np

from .errors import (DocumentSyntaxError, FuzzTopError, LawFailure, UnknownCatalogName,
                     UnknownReference, ValidationFailure)
from .fuzzfn import FuzzyFunction
from .glmonoid import build_lattice, make_monoid, make_standard_monoid, monoid_from_name
from .ltop import LTopology, LTopSpace, generate_topology, make_topology
from .lvset import LSubset, crisp_equality, make_lvset

SECTIONS = ("monoid", "sets", "subsets", "functions", "topologies")


def _labels(x):
    if isinstance(x, list):
        return [_labels(v) for v in x]
    if isinstance(x, bool):
        raise DocumentSyntaxError(f"boolean {x!r} where a carrier label was expected")
    return str(x)


def build_monoid(spec):
    if not isinstance(spec, dict):
        raise DocumentSyntaxError("monoid must be an object")
    if "name" in spec:
        return monoid_from_name(spec["name"])
    if "catalog" in spec:
        return make_standard_monoid(spec["catalog"], int(spec.get("n", 2)))
    if "product" in spec:
        parts = spec["product"]
        if not isinstance(parts, list) or len(parts) != 2:
            raise UnknownCatalogName("product needs exactly two factor specs")
        return make_standard_monoid("product", factors=[build_monoid(p) for p in parts])
    if "tnorm" in spec:
        labels = [str(v) for v in spec["labels"]]
        lat = build_lattice(np.array(spec["leq"], dtype=bool), labels)
        tn = np.array([[lat.index(str(v)) for v in row] for row in spec["tnorm"]])
        return make_monoid(lat, tn, name=spec.get("display", "custom"))
    raise DocumentSyntaxError("monoid needs 'catalog', 'name', 'product' or explicit tables")


def _ref(table, kind, name):
    if name not in table:
        raise UnknownReference(f"undefined {kind} {name!r}", (name,))
    return table[name]


def _wrap(exc, what):
    if isinstance(exc, LawFailure) and not isinstance(exc, ValidationFailure):
        err = ValidationFailure(f"{what}: {exc}", exc.witness)
        err.cause = exc
        return err
    return exc


@dataclass(eq=False)
class Document:
    """Parsed document: the normalised JSON tree plus the constructed objects."""
    tree: dict
    monoid: object = None
    sets: dict = field(default_factory=dict)
    subsets: dict = field(default_factory=dict)
    functions: dict = field(default_factory=dict)
    topologies: dict = field(default_factory=dict)
    strict: bool = True

    def __eq__(self, other):
        return isinstance(other, Document) and self.tree == other.tree

    def lookup(self, name):
        """Find a named object in any section (sets, subsets, functions, topologies)."""
        for sec in ("sets", "subsets", "functions", "topologies"):
            table = getattr(self, sec)
            if name in table:
                return sec, table[name]
        raise UnknownReference(f"undefined name {name!r}", (name,))


def _normalise(tree):
    if not isinstance(tree, dict):
        raise DocumentSyntaxError("document must be a JSON object", 1, 1)
    extra = set(tree) - set(SECTIONS)
    if extra:
        raise DocumentSyntaxError(f"unknown top-level keys {sorted(extra)}")
    if "monoid" not in tree:
        raise DocumentSyntaxError("document needs a 'monoid'")
    out = {"monoid": tree["monoid"]}
    for sec in SECTIONS[1:]:
        body = tree.get(sec, {})
        if not isinstance(body, dict):
            raise DocumentSyntaxError(f"'{sec}' must be an object keyed by name")
        out[sec] = {}
        for name, item in body.items():
            if not isinstance(item, dict):
                raise DocumentSyntaxError(f"{sec}.{name} must be an object")
            item = dict(item)
            for key in ("E", "values", "matrix", "opens", "subbase"):
                if key in item:
                    item[key] = _labels(item[key])
            if "elements" in item:
                item["elements"] = [str(e) for e in item["elements"]]
            out[sec][name] = item
    return out


def build_document(tree, strict=True):
    """Construct every object; in strict mode any axiom failure raises ValidationFailure.

    With ``strict=False`` objects are built without validation so the
    ``validate`` command can report each failure.
    """
    tree = _normalise(tree)
    doc = Document(tree, strict=strict)
    m = doc.monoid = build_monoid(tree["monoid"])
    for name, s in tree["sets"].items():
        if "elements" not in s and "E" not in s:
            raise DocumentSyntaxError(f"set {name!r} needs 'elements' or 'E'")
        E = s.get("E")
        elements = s.get("elements")
        E = crisp_equality(m, len(elements)) if E is None else m.parse(E)
        try:
            doc.sets[name] = make_lvset(m, E, elements, validate=strict)
        except FuzzTopError as exc:
            raise _wrap(exc, f"set {name!r}") from exc
    for name, s in tree["subsets"].items():
        X = _ref(doc.sets, "set", s.get("set"))
        doc.subsets[name] = LSubset(X, m.parse(s.get("values", [])))
    for name, f in tree["functions"].items():
        X = _ref(doc.sets, "set", f.get("from"))
        Y = _ref(doc.sets, "set", f.get("to"))
        try:
            doc.functions[name] = FuzzyFunction(X, Y, m.parse(f.get("matrix", [])), check=strict)
        except FuzzTopError as exc:
            raise _wrap(exc, f"function {name!r}") from exc
    for name, t in tree["topologies"].items():
        X = _ref(doc.sets, "set", t.get("set"))
        try:
            if "opens" in t:
                rows = [m.parse(r) for r in t["opens"]]
                T = make_topology(X, rows) if strict else LTopology(X, rows)
            elif "subbase" in t:
                T = generate_topology(X, [m.parse(r) for r in t["subbase"]],
                                      repair=bool(t.get("repair", False)))
            else:
                raise DocumentSyntaxError(f"topology {name!r} needs 'opens' or 'subbase'")
        except FuzzTopError as exc:
            raise _wrap(exc, f"topology {name!r}") from exc
        doc.topologies[name] = LTopSpace(X, T)
    return doc


def parse_document(text, strict=True):
    try:
        tree = json.loads(text)
    except json.JSONDecodeError as exc:
        raise DocumentSyntaxError(exc.msg, exc.lineno, exc.colno) from None
    return build_document(tree, strict)


def emit_document(doc):
    """Canonical JSON text; ``parse_document(emit_document(d)) == d``."""
    return json.dumps(doc.tree, indent=2, sort_keys=True, ensure_ascii=False) + "\n"


def load_document(path, strict=True):
    with open(path, encoding="utf-8") as fh:
        return parse_document(fh.read(), strict)
