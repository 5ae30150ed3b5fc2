"""Graph JSON: ``{"n", "edges", "simple", "rotation"?, "genus"?, "schema_version"?}``.

``rotation`` lists, per vertex, the darts ``[edge_index, end]`` in cyclic
order.  ``genus`` lets a caller state the genus of a surface the rotation
cannot describe (for example a non-orientable one); it only feeds reporting
and the planarizer's layer width.  Unknown fields are rejected.
"""

from __future__ import annotations

import json
from pathlib import Path
from typing import Any, Mapping, Optional

from .graph import GraphError, Multigraph, new_multigraph
from .surface import RotationSystem, euler_genus, validate_rotation

GRAPH_SCHEMA_VERSION = 1
_FIELDS = {"n", "edges", "simple", "rotation", "genus", "schema_version"}


def _int(value: Any, what: str) -> int:
    if isinstance(value, bool) or not isinstance(value, int):
        raise GraphError(f"{what} must be an integer, got {value!r}")
    return value


def graph_from_json(data: Mapping[str, Any]) -> tuple[Multigraph, Optional[RotationSystem], Optional[int]]:
    """Parse and validate; returns ``(graph, rotation or None, genus or None)``."""
    if not isinstance(data, Mapping):
        raise GraphError("graph JSON must be an object")
    unknown = set(data) - _FIELDS
    if unknown:
        raise GraphError(f"unknown fields in graph JSON: {sorted(unknown)}")
    for key in ("n", "edges"):
        if key not in data:
            raise GraphError(f"graph JSON lacks {key!r}")
    if "schema_version" in data and data["schema_version"] != GRAPH_SCHEMA_VERSION:
        raise GraphError(f"unsupported graph schema version {data['schema_version']!r}")
    n = _int(data["n"], "n")
    simple = data.get("simple", True)
    if not isinstance(simple, bool):
        raise GraphError("'simple' must be a boolean")
    edges = []
    for pair in data["edges"]:
        if not isinstance(pair, (list, tuple)) or len(pair) != 2:
            raise GraphError(f"edge must be a pair, got {pair!r}")
        edges.append((_int(pair[0], "endpoint"), _int(pair[1], "endpoint")))
    g = new_multigraph(n, edges, simple)
    rot = None
    if data.get("rotation") is not None:
        raw = data["rotation"]
        try:
            rot = RotationSystem.from_lists([[(_int(d[0], "dart edge"), _int(d[1], "dart end")) for d in darts] for darts in raw])
        except (TypeError, IndexError):
            raise GraphError("rotation must be a list of dart lists [[edge, end], ...]") from None
        validate_rotation(g, rot)
    genus = None
    if data.get("genus") is not None:
        genus = _int(data["genus"], "genus")
        if genus < 0:
            raise GraphError("genus must be non-negative")
        if rot is not None and euler_genus(g, rot) != genus:
            raise GraphError(f"declared genus {genus} differs from the rotation's genus {euler_genus(g, rot)}")
    return g, rot, genus


def graph_to_json(g: Multigraph, rotation: Optional[RotationSystem] = None, genus: Optional[int] = None) -> dict[str, Any]:
    out: dict[str, Any] = {
        "schema_version": GRAPH_SCHEMA_VERSION,
        "n": g.n,
        "edges": [list(e) for e in g.edges],
        "simple": g.simple,
    }
    if rotation is not None:
        out["rotation"] = rotation.to_lists()
    if genus is not None:
        out["genus"] = genus
    return out


def load_graph(path: str | Path) -> tuple[Multigraph, Optional[RotationSystem], Optional[int]]:
    with open(path, encoding="utf-8") as fh:
        try:
            data = json.load(fh)
        except json.JSONDecodeError as exc:
            raise GraphError(f"{path}: invalid JSON ({exc})") from None
    return graph_from_json(data)


def dump_json(data: Any) -> str:
    """Canonical serialization used for every file this package writes."""
    return json.dumps(data, indent=2, sort_keys=True) + "\n"
