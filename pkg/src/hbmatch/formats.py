"""JSON file formats for instances and solutions.

Instance document::

    {"format_version": 1, "n": 3,
     "edges": [{"u": 1, "v": 2, "c": 1}, ...],
     "vertex_b": [1, 2, 1],
     "sets": [{"members": [1, 2], "b": 2}],
     "root": {"b": 3}}

``sets`` lists the non-singleton sets; the root goes either there or in
``root``, and a missing root gets ``b = sum(vertex_b)``.  Solution documents
carry the instance digest, the algorithm, the size, per-edge ``x``, per-set
degree ``d`` and slack ``s`` and the run counters.  Every number is an
integer and unknown fields are rejected.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Any

from .core import HMatching, Instance
from .solver import SolveReport

FORMAT_VERSION = 1

_INSTANCE_KEYS = {"format_version", "n", "edges", "vertex_b", "sets", "root"}
_SOLUTION_KEYS = {"format_version", "digest", "algorithm", "size", "edges", "sets", "counters"}


class ParseError(ValueError):
    """Malformed document; ``field`` names the offending location."""

    def __init__(self, message: str, field: str | None = None, line: int | None = None):
        self.field = field
        self.line = line
        where = []
        if line is not None:
            where.append(f"line {line}")
        if field is not None:
            where.append(f"field {field}")
        super().__init__(f"{', '.join(where)}: {message}" if where else message)


def _load(text: str) -> dict[str, Any]:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(exc.msg, line=exc.lineno) from None
    if not isinstance(doc, dict):
        raise ParseError("top level must be an object")
    version = doc.get("format_version")
    if version is None:
        raise ParseError("missing", "format_version")
    if version != FORMAT_VERSION:
        raise ParseError(f"unsupported version {version!r}", "format_version")
    return doc


def _obj(value: Any, where: str, keys: set[str], required: set[str]) -> dict[str, Any]:
    if not isinstance(value, dict):
        raise ParseError("expected an object", where)
    extra = sorted(set(value) - keys)
    if extra:
        raise ParseError(f"unknown field {extra[0]!r}", where)
    for k in sorted(required - set(value)):
        raise ParseError("missing", f"{where}.{k}" if where else k)
    return value


def _int(value: Any, where: str) -> int:
    # bool is a subclass of int; reject it along with floats and strings
    if type(value) is not int:
        raise ParseError(f"expected an integer, got {value!r}", where)
    return value


def _int_list(value: Any, where: str) -> list[int]:
    if not isinstance(value, list):
        raise ParseError("expected a list", where)
    return [_int(v, f"{where}[{i}]") for i, v in enumerate(value)]


def parse_instance(text: str) -> Instance:
    """Parse an instance document.  Structural problems raise
    :class:`ParseError`; semantic ones (overlapping sets, bad bounds) raise
    the validation errors of :mod:`hbmatch.core`."""
    doc = _obj(_load(text), "", _INSTANCE_KEYS, {"n", "edges", "vertex_b"})
    n = _int(doc["n"], "n")
    if n < 1:
        raise ParseError("must be positive", "n")
    if not isinstance(doc["edges"], list):
        raise ParseError("expected a list", "edges")
    edges = []
    for i, rec in enumerate(doc["edges"]):
        where = f"edges[{i}]"
        rec = _obj(rec, where, {"u", "v", "c"}, {"u", "v", "c"})
        u, v, c = (_int(rec[k], f"{where}.{k}") for k in ("u", "v", "c"))
        for k, w in (("u", u), ("v", v)):
            if not 1 <= w <= n:
                raise ParseError(f"vertex {w} outside 1..{n}", f"{where}.{k}")
        edges.append((u, v, c))
    vertex_b = _int_list(doc["vertex_b"], "vertex_b")
    sets = []
    raw_sets = doc.get("sets", [])
    if not isinstance(raw_sets, list):
        raise ParseError("expected a list", "sets")
    for i, rec in enumerate(raw_sets):
        where = f"sets[{i}]"
        rec = _obj(rec, where, {"members", "b"}, {"members", "b"})
        members = _int_list(rec["members"], f"{where}.members")
        for w in members:
            if not 1 <= w <= n:
                raise ParseError(f"vertex {w} outside 1..{n}", f"{where}.members")
        sets.append((members, _int(rec["b"], f"{where}.b")))
    root_b = None
    if "root" in doc:
        root = _obj(doc["root"], "root", {"b"}, {"b"})
        root_b = _int(root["b"], "root.b")
    return Instance.build(n, edges, vertex_b, sets, root_b)


def instance_doc(inst: Instance) -> dict[str, Any]:
    fam = inst.family
    n = inst.n
    doc: dict[str, Any] = {
        "format_version": FORMAT_VERSION,
        "n": n,
        "edges": [{"u": u, "v": v, "c": c} for (u, v), c in zip(inst.edges, inst.c)],
        "vertex_b": list(inst.b[:n]),
        "sets": [
            {"members": sorted(fam.sets[k]), "b": inst.b[k]} for k in range(n, fam.m - 1)
        ],
    }
    if n > 1:
        doc["root"] = {"b": inst.b[fam.root]}
    return doc


def emit_instance(inst: Instance) -> str:
    return json.dumps(instance_doc(inst), indent=1) + "\n"


@dataclass(frozen=True)
class SolutionFile:
    digest: str
    algorithm: str
    size: int
    x: HMatching
    edges: tuple[tuple[int, int], ...]
    set_degrees: tuple[int, ...]
    set_slacks: tuple[int, ...]
    counters: dict[str, int]


def solution_doc(inst: Instance, report: SolveReport) -> dict[str, Any]:
    fam = inst.family
    return {
        "format_version": FORMAT_VERSION,
        "digest": report.digest,
        "algorithm": report.algorithm,
        "size": report.cardinality,
        "edges": [{"u": u, "v": v, "x": xe} for (u, v), xe in zip(inst.edges, report.x)],
        "sets": [
            {"members": sorted(fam.sets[k]), "d": d, "s": s}
            for k, (d, s) in enumerate(zip(report.set_degrees, report.set_slacks))
        ],
        "counters": dict(sorted(report.counters.items())),
    }


def emit_solution(inst: Instance, report: SolveReport) -> str:
    """Deterministic text: the elapsed time is left out on purpose."""
    return json.dumps(solution_doc(inst, report), indent=1) + "\n"


def parse_solution(text: str) -> SolutionFile:
    doc = _obj(_load(text), "", _SOLUTION_KEYS, _SOLUTION_KEYS)
    for key in ("digest", "algorithm"):
        if not isinstance(doc[key], str):
            raise ParseError("expected a string", key)
    if not isinstance(doc["edges"], list):
        raise ParseError("expected a list", "edges")
    edges, x = [], []
    for i, rec in enumerate(doc["edges"]):
        where = f"edges[{i}]"
        rec = _obj(rec, where, {"u", "v", "x"}, {"u", "v", "x"})
        edges.append((_int(rec["u"], f"{where}.u"), _int(rec["v"], f"{where}.v")))
        x.append(_int(rec["x"], f"{where}.x"))
    if not isinstance(doc["sets"], list):
        raise ParseError("expected a list", "sets")
    d, s = [], []
    for i, rec in enumerate(doc["sets"]):
        where = f"sets[{i}]"
        rec = _obj(rec, where, {"members", "d", "s"}, {"members", "d", "s"})
        _int_list(rec["members"], f"{where}.members")
        d.append(_int(rec["d"], f"{where}.d"))
        s.append(_int(rec["s"], f"{where}.s"))
    counters = doc["counters"]
    if not isinstance(counters, dict):
        raise ParseError("expected an object", "counters")
    size = _int(doc["size"], "size")
    if size != sum(x):
        raise ParseError(f"size {size} disagrees with the edge multiplicities", "size")
    return SolutionFile(
        digest=doc["digest"],
        algorithm=doc["algorithm"],
        size=size,
        x=tuple(x),
        edges=tuple(edges),
        set_degrees=tuple(d),
        set_slacks=tuple(s),
        counters={k: _int(v, f"counters.{k}") for k, v in counters.items()},
    )
