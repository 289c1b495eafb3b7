"""JSON instance documents and deterministic result serialization.

Complex numbers travel as ``[re, im]`` pairs.  IQP documents carry real
angles under ``"angle"`` (edges) and plain real ``"fields"``.
Floats are written with 17 significant digits.
"""

from __future__ import annotations

import json
import math
from pathlib import Path
from typing import Any, Literal

import numpy as np

from .errors import GraphError, HomqError, InstanceParseError
from .graph import build_graph
from .hom import RestrictedHomInstance, SymmetricMatrixAssignment
from .iqp import GraphXProgram
from .ising import IsingInstance

Kind = Literal["hom", "ising", "iqp"]
KINDS = ("hom", "ising", "iqp")


def _complex(x: Any, where: str) -> complex:
    if (
        not isinstance(x, (list, tuple))
        or len(x) != 2
        or not all(isinstance(c, (int, float)) and not isinstance(c, bool) for c in x)
    ):
        raise InstanceParseError(f"{where}: expected a [re, im] pair, got {x!r}")
    return complex(float(x[0]), float(x[1]))


def _real(x: Any, where: str) -> float:
    if not isinstance(x, (int, float)) or isinstance(x, bool):
        raise InstanceParseError(f"{where}: expected a real number, got {x!r}")
    return float(x)


def _int(x: Any, where: str) -> int:
    if not isinstance(x, int) or isinstance(x, bool):
        raise InstanceParseError(f"{where}: expected an integer, got {x!r}")
    return x


def _edges(doc: dict) -> list[dict]:
    edges = doc.get("edges", [])
    if not isinstance(edges, list) or not all(isinstance(e, dict) for e in edges):
        raise InstanceParseError("'edges' must be a list of objects")
    return edges


def _graph(doc: dict):
    n = _int(doc.get("vertices"), "'vertices'")
    pairs = [
        (_int(e.get("u"), f"edge {i} 'u'"), _int(e.get("v"), f"edge {i} 'v'"))
        for i, e in enumerate(_edges(doc))
    ]
    return build_graph(n, pairs)


def detect_kind(doc: dict) -> Kind:
    declared = doc.get("kind")
    if declared is not None:
        if declared not in KINDS:
            raise InstanceParseError(f"unknown kind {declared!r}")
        return declared
    edges = _edges(doc)
    if edges:
        if "matrix" in edges[0]:
            return "hom"
        if "angle" in edges[0]:
            return "iqp"
        return "ising"
    if "m" in doc or "pinned" in doc:
        return "hom"
    fields = doc.get("fields", [])
    if fields and all(isinstance(f, (int, float)) for f in fields):
        return "iqp"
    return "ising"


def parse_hom(doc: dict) -> RestrictedHomInstance:
    G = _graph(doc)
    edges = _edges(doc)
    m = _int(doc.get("m", 2), "'m'")
    if m < 1:
        raise InstanceParseError("'m' must be >= 1")
    mats = np.empty((len(edges), m, m), dtype=np.complex128)
    for i, e in enumerate(edges):
        rows = e.get("matrix")
        if not isinstance(rows, list) or len(rows) != m or any(
            not isinstance(r, list) or len(r) != m for r in rows
        ):
            raise InstanceParseError(f"edge {i}: 'matrix' must be {m}x{m}")
        for a in range(m):
            for b in range(m):
                mats[i, a, b] = _complex(rows[a][b], f"edge {i} matrix ({a + 1},{b + 1})")
    pinned = doc.get("pinned", [])
    if not isinstance(pinned, list):
        raise InstanceParseError("'pinned' must be a list")
    pinned = tuple(_int(s, "'pinned' entry") for s in pinned)
    k = _int(doc.get("pin_index", 1), "'pin_index'")
    try:
        return RestrictedHomInstance(G, SymmetricMatrixAssignment(m, mats), pinned, k)
    except (ValueError, GraphError) as exc:
        raise InstanceParseError(str(exc)) from exc


def _fields(doc: dict, n: int, convert, what: str) -> list:
    fields = doc.get("fields")
    if fields is None:
        return [0.0] * n
    if not isinstance(fields, list) or len(fields) != n:
        raise InstanceParseError(f"'fields' must list one {what} per vertex")
    return [convert(f, f"field {v}") for v, f in enumerate(fields)]


def parse_ising(doc: dict) -> IsingInstance:
    G = _graph(doc)
    weights = []
    for i, e in enumerate(_edges(doc)):
        if "weight" not in e:
            raise InstanceParseError(f"edge {i}: missing 'weight'")
        weights.append(_complex(e["weight"], f"edge {i} weight"))
    return IsingInstance(G, weights, _fields(doc, G.vertex_count, _complex, "[re, im] pair"))


def parse_iqp(doc: dict) -> GraphXProgram:
    G = _graph(doc)
    angles = []
    for i, e in enumerate(_edges(doc)):
        if "weight" in e:
            raise InstanceParseError(f"edge {i}: iqp edges take a real 'angle', not 'weight'")
        if "angle" not in e:
            raise InstanceParseError(f"edge {i}: missing 'angle'")
        angles.append(_real(e["angle"], f"edge {i} angle"))
    fields = _fields(doc, G.vertex_count, _real, "real angle")
    try:
        return GraphXProgram(G, angles, fields)
    except HomqError as exc:
        raise InstanceParseError(str(exc)) from exc


_PARSERS = {"hom": parse_hom, "ising": parse_ising, "iqp": parse_iqp}


def parse_instance(doc: Any, kind: Kind | None = None):
    """Return ``(kind, instance)`` for a decoded JSON document."""
    if not isinstance(doc, dict):
        raise InstanceParseError("instance document must be a JSON object")
    kind = kind or detect_kind(doc)
    try:
        return kind, _PARSERS[kind](doc)
    except GraphError as exc:
        raise InstanceParseError(str(exc)) from exc


def load_instance(path: str | Path, kind: Kind | None = None):
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise InstanceParseError(f"cannot read {path}: {exc.strerror}") from exc
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InstanceParseError(f"invalid JSON: {exc}") from exc
    return parse_instance(doc, kind)


def _pair(z: complex) -> list[float]:
    return [float(z.real), float(z.imag)]


def instance_to_doc(kind: Kind, inst) -> dict:
    G = inst.graph
    doc: dict[str, Any] = {"kind": kind, "vertices": G.vertex_count}
    edges = []
    if kind == "hom":
        doc["m"] = inst.m
        for e, u, v in G.edges:
            mat = inst.matrices.matrices[e]
            edges.append({"u": u, "v": v, "matrix": [[_pair(x) for x in row] for row in mat]})
        doc["pinned"] = list(inst.pinned)
        doc["pin_index"] = inst.pin_index
    elif kind == "ising":
        for e, u, v in G.edges:
            edges.append({"u": u, "v": v, "weight": _pair(inst.edge_weights[e])})
        doc["fields"] = [_pair(h) for h in inst.vertex_weights]
    else:
        for e, u, v in G.edges:
            edges.append({"u": u, "v": v, "angle": float(inst.edge_angles[e])})
        doc["fields"] = [float(h) for h in inst.vertex_angles]
    doc["edges"] = edges
    return doc


def _format_float(x: float) -> str:
    if not math.isfinite(x):
        return "null"
    text = format(x, ".17g")
    if not any(c in text for c in ".en"):
        text += ".0"
    return text


def dumps(obj: Any, indent: int = 2, _level: int = 0) -> str:
    """JSON text with sorted keys and 17-significant-digit floats."""
    pad = " " * (indent * (_level + 1))
    end = " " * (indent * _level)
    if isinstance(obj, bool) or obj is None:
        return json.dumps(obj)
    if isinstance(obj, (int, np.integer)):
        return str(int(obj))
    if isinstance(obj, (float, np.floating)):
        return _format_float(float(obj))
    if isinstance(obj, str):
        return json.dumps(obj)
    if isinstance(obj, dict):
        if not obj:
            return "{}"
        items = [f"{pad}{json.dumps(str(k))}: {dumps(obj[k], indent, _level + 1)}" for k in sorted(obj)]
        return "{\n" + ",\n".join(items) + "\n" + end + "}"
    if isinstance(obj, (list, tuple)):
        if not obj:
            return "[]"
        if all(isinstance(x, (int, float, np.number)) and not isinstance(x, bool) for x in obj):
            return "[" + ", ".join(dumps(x) for x in obj) + "]"
        items = [pad + dumps(x, indent, _level + 1) for x in obj]
        return "[\n" + ",\n".join(items) + "\n" + end + "]"
    raise TypeError(f"cannot serialize {type(obj).__name__}")
