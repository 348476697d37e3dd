"""Algebra documents (JSON): schema check, construction and dumping."""

from __future__ import annotations

import json
from functools import lru_cache
from importlib import resources
from pathlib import Path

import jsonschema

from .algebra import ConeAlgebra, FiniteAlgebra, PerfectAlgebra, ProductAlgebra, from_json, to_json
from .constructors import make_chain, make_cone, make_kn, make_perfect, make_product
from .errors import DocumentError, TableError, UnsupportedError
from .terms import parse_identity_file


@lru_cache(maxsize=1)
def schema():
    text = resources.files("wemv").joinpath("schema/algebra.schema.json").read_text("utf-8")
    return json.loads(text)


def _pointer(path):
    return "".join(f"/{p}" for p in path)


def check_document(doc):
    """Raise DocumentError at the most relevant schema violation."""
    validator = jsonschema.Draft202012Validator(schema())
    err = jsonschema.exceptions.best_match(validator.iter_errors(doc))
    if err is not None:
        raise DocumentError(_pointer(err.absolute_path), err.message)


def _build(doc, locus):
    kind = doc["kind"]
    if kind == "chain_mv":
        return make_chain(doc["n"])
    if kind == "cone":
        return make_cone(doc["rank"], doc.get("order", "product"))
    if kind == "perfect":
        return make_perfect(doc["rank"], doc.get("order", "product"))
    if kind == "kn":
        return make_kn(doc["unit"])
    if kind == "product":
        return make_product([_build(f, f"{locus}/factors/{i}") for i, f in enumerate(doc["factors"])])
    size = doc["size"]
    for op in ("join", "meet", "oplus", "ominus"):
        table = doc.get(op)
        if table is None:
            continue
        if len(table) != size:
            raise DocumentError(f"{locus}/{op}", f"expected {size} rows, got {len(table)}")
        for i, row in enumerate(table):
            if len(row) != size:
                raise DocumentError(f"{locus}/{op}/{i}", f"expected {size} entries, got {len(row)}")
    labels = doc.get("labels")
    if labels is not None and len(labels) != size:
        raise DocumentError(f"{locus}/labels", f"expected {size} labels, got {len(labels)}")
    try:
        return FiniteAlgebra(doc["join"], doc["meet"], doc["oplus"], doc.get("ominus"),
                             labels=None if labels is None else [from_json(v) for v in labels],
                             name=doc.get("name", ""), doc=doc)
    except TableError as exc:
        raise DocumentError(locus + exc.locus, str(exc).split(": ", 1)[1]) from None


def from_document(doc):
    """Build the algebra described by ``doc`` (a parsed JSON value)."""
    check_document(doc)
    return _build(doc, "")


def load_algebra(path):
    path = Path(path)
    try:
        text = path.read_text("utf-8")
    except OSError as exc:
        raise DocumentError("", f"cannot read {path}: {exc.strerror}") from None
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise DocumentError("", f"invalid JSON at line {exc.lineno} column {exc.colno}: {exc.msg}") from None
    return from_document(doc)


def to_document(alg) -> dict:
    """Document that rebuilds ``alg`` (tables for finite algebras without a known origin)."""
    if isinstance(alg, FiniteAlgebra):
        if alg.chain_n is not None:
            return {"kind": "chain_mv", "n": alg.chain_n}
        if alg.factors is not None:
            return {"kind": "product", "factors": [to_document(f) for f in alg.factors]}
        doc = {"kind": "finite", "size": alg.size}
        for op in ("join", "meet", "oplus", "ominus"):
            doc[op] = alg.tables[op].tolist()
        if alg.labels != list(range(alg.size)):
            doc["labels"] = [to_json(v) for v in alg.labels]
        return doc
    if isinstance(alg, ConeAlgebra):
        return {"kind": "cone", "rank": alg.rank, "order": alg.order}
    if isinstance(alg, PerfectAlgebra):
        if alg.unit == 1:
            return {"kind": "perfect", "rank": alg.rank, "order": alg.order}
        if alg.rank == 1:
            return {"kind": "kn", "unit": alg.unit}
    if isinstance(alg, ProductAlgebra):
        return {"kind": "product", "factors": [to_document(f) for f in alg.factors]}
    raise UnsupportedError(f"no document form for {alg.describe()}")


def dump_algebra(alg, path=None):
    text = json.dumps(to_document(alg)) + "\n"
    if path is not None:
        Path(path).write_text(text, "utf-8")
    return text


def load_identities(path):
    """Identity file: one ``lhs = rhs`` per line, ``#`` comments."""
    try:
        text = Path(path).read_text("utf-8")
    except OSError as exc:
        raise DocumentError("", f"cannot read {path}: {exc.strerror}") from None
    return parse_identity_file(text)


def load_topology(path):
    """Topology file ``{"points": n, "opens": [[...], ...]}``; returns (n, opens)."""
    try:
        doc = json.loads(Path(path).read_text("utf-8"))
    except OSError as exc:
        raise DocumentError("", f"cannot read {path}: {exc.strerror}") from None
    except json.JSONDecodeError as exc:
        raise DocumentError("", f"invalid JSON: {exc.msg}") from None
    if not isinstance(doc, dict) or not isinstance(doc.get("points"), int):
        raise DocumentError("/points", "expected an integer number of points")
    opens = doc.get("opens")
    if not isinstance(opens, list) or not all(
            isinstance(o, list) and all(isinstance(p, int) for p in o) for o in opens):
        raise DocumentError("/opens", "expected a list of point lists")
    return doc["points"], opens
