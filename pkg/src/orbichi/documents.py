"""JSON documents for orbifolds and group actions.

An orbifold document has the fields ``dimension``, ``vertices``,
``maximal_cells``, ``labels`` (``[cell, order, kind]`` with an optional
fourth entry listing generator tokens), ``boundary_faces`` and
``metadata``.  An action document has ``base`` (an inline orbifold document
or a path relative to the action file) and ``generators`` (each a list of
cycles over vertex tokens).
"""

import json
from pathlib import Path

from .complex import SimplicialComplex, canonical_cell, sort_cells, vkey
from .errors import DuplicateVertexInCell, ParseError
from .orbifold import LocalGroupLabel, OrbifoldComplex, manifold

FIELDS = ("dimension", "vertices", "maximal_cells", "labels", "boundary_faces", "metadata")


def _vertex(v, where):
    if isinstance(v, bool) or not isinstance(v, (int, str)):
        raise ParseError(f"{where}: vertex tokens must be strings or integers, got {v!r}")
    return v


def _cell(raw, vertices, where):
    if not isinstance(raw, list) or not raw:
        raise ParseError(f"{where}: expected a non-empty vertex list, got {raw!r}")
    for v in raw:
        _vertex(v, where)
        if v not in vertices:
            raise ParseError(f"{where}: unknown vertex {v!r}")
    try:
        return canonical_cell(raw)
    except DuplicateVertexInCell as exc:
        raise ParseError(f"{where}: {exc}") from None


def orbifold_from_dict(doc):
    if not isinstance(doc, dict):
        raise ParseError("document must be a JSON object")
    missing = [f for f in FIELDS if f not in doc and f != "metadata"]
    if missing:
        raise ParseError(f"missing fields: {', '.join(missing)}")
    dim = doc["dimension"]
    if isinstance(dim, bool) or not isinstance(dim, int) or dim < 0:
        raise ParseError(f"dimension must be a non-negative integer, got {dim!r}")
    if not isinstance(doc["vertices"], list):
        raise ParseError("vertices must be a list")
    vertices = {_vertex(v, "vertices") for v in doc["vertices"]}
    if len(vertices) != len(doc["vertices"]):
        raise ParseError("vertices repeat a token")
    for key in ("maximal_cells", "labels", "boundary_faces"):
        if not isinstance(doc[key], list):
            raise ParseError(f"{key} must be a list")
    cells = set()
    for i, raw in enumerate(doc["maximal_cells"]):
        c = _cell(raw, vertices, f"maximal_cells[{i}]")
        if c not in cells:
            cells.update(SimplicialComplex.closure_of([c]).cells)
    K = SimplicialComplex(cells)
    if K.vertices != vertices:
        raise ParseError("some listed vertices lie in no cell")
    labels = {}
    for i, raw in enumerate(doc["labels"]):
        where = f"labels[{i}]"
        if not isinstance(raw, list) or len(raw) not in (3, 4):
            raise ParseError(f"{where}: expected [cell, order, kind] or [cell, order, kind, generators]")
        c = _cell(raw[0], vertices, where)
        order, kind = raw[1], raw[2]
        if isinstance(order, bool) or not isinstance(order, int) or not isinstance(kind, str):
            raise ParseError(f"{where}: order must be an integer and kind a string")
        gens = None
        if len(raw) == 4:
            if not isinstance(raw[3], list) or not all(isinstance(t, str) for t in raw[3]):
                raise ParseError(f"{where}: generators must be a list of strings")
            gens = frozenset(raw[3])
        try:
            lab = LocalGroupLabel(order, kind, gens)
        except ValueError as exc:
            raise ParseError(f"{where}: {exc}") from None
        if c in labels:
            raise ParseError(f"{where}: cell labelled twice")
        labels[c] = lab
    bf = [_cell(raw, vertices, f"boundary_faces[{i}]") for i, raw in enumerate(doc["boundary_faces"])]
    meta = doc.get("metadata", {})
    if not isinstance(meta, dict):
        raise ParseError("metadata must be an object")
    return OrbifoldComplex(K, labels, bf, dim=dim, name=meta.get("name")), meta


def orbifold_to_dict(O, metadata=None):
    K = O.complex
    labels = []
    for c in sort_cells(O.labels):
        lab = O.labels[c]
        row = [list(c), lab.order, lab.kind]
        if lab.generators:
            row.append(sorted(lab.generators))
        labels.append(row)
    meta = dict(metadata or {})
    if O.name and "name" not in meta:
        meta["name"] = O.name
    return {
        "dimension": O.dim,
        "vertices": sorted(K.vertices, key=vkey),
        "maximal_cells": [list(c) for c in sort_cells(K.maximal_cells)],
        "labels": labels,
        "boundary_faces": [list(c) for c in sort_cells(O.boundary_faces)],
        "metadata": {k: meta[k] for k in sorted(meta)},
    }


def dumps(doc):
    """Deterministic JSON: one list item per line, fields in a fixed order."""
    lines = ["{"]
    keys = list(doc)
    for i, key in enumerate(keys):
        value = doc[key]
        comma = "," if i < len(keys) - 1 else ""
        if isinstance(value, list) and value:
            lines.append(f"  {json.dumps(key)}: [")
            for j, item in enumerate(value):
                sep = "," if j < len(value) - 1 else ""
                lines.append(f"    {json.dumps(item, ensure_ascii=False)}{sep}")
            lines.append(f"  ]{comma}")
        else:
            lines.append(f"  {json.dumps(key)}: {json.dumps(value, ensure_ascii=False, sort_keys=True)}{comma}")
    lines.append("}")
    return "\n".join(lines) + "\n"


def _load_json(path):
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc.strerror}") from None
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"{path}: {exc}") from None


def read_orbifold(path):
    return orbifold_from_dict(_load_json(path))


def write_orbifold(O, path, metadata=None):
    Path(path).write_text(dumps(orbifold_to_dict(O, metadata)), encoding="utf-8")


def action_from_dict(doc, base_dir="."):
    """Return ``(base orbifold, metadata, generators)``; generators are cycle lists."""
    if not isinstance(doc, dict) or "base" not in doc or "generators" not in doc:
        raise ParseError("action document needs 'base' and 'generators'")
    base = doc["base"]
    if isinstance(base, str):
        base = _load_json(Path(base_dir) / base)
    O, meta = orbifold_from_dict(base)
    gens = doc["generators"]
    if not isinstance(gens, list):
        raise ParseError("generators must be a list")
    out = []
    for i, g in enumerate(gens):
        if not isinstance(g, list) or not all(isinstance(c, list) for c in g):
            raise ParseError(f"generators[{i}]: expected a list of cycles")
        for cyc in g:
            for v in cyc:
                _vertex(v, f"generators[{i}]")
        out.append(g)
    return O, meta, out


def read_action(path):
    return action_from_dict(_load_json(path), Path(path).parent)


def action_to_dict(A, base_metadata=None):
    """Inline action document for ``A`` (its base is written as a manifold)."""
    G = A.group
    base = orbifold_to_dict(manifold(A.complex), base_metadata)
    gens = [[list(c) for c in G.cycles(g)] for g in G.generators]
    return {"base": base, "generators": gens}


def dumps_action(doc):
    base = dumps(doc["base"]).rstrip("\n").replace("\n", "\n  ")
    gens = "".join(f"\n    {json.dumps(g)}," for g in doc["generators"]).rstrip(",")
    if gens:
        gens += "\n  "
    return "{\n  \"base\": " + base + ",\n  \"generators\": [" + gens + "]\n}\n"


__all__ = [
    "action_from_dict",
    "action_to_dict",
    "dumps",
    "dumps_action",
    "orbifold_from_dict",
    "orbifold_to_dict",
    "read_action",
    "read_orbifold",
    "write_orbifold",
]
