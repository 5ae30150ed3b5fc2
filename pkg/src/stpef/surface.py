"""Rotation systems on orientable surfaces: face tracing, Euler genus, duals.

A dart is ``(edge index, end)`` with ``end`` in ``{0, 1}``; it sits at vertex
``edges[e][end]`` and points along the edge towards the other end.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .graph import GraphError, Multigraph, components

Dart = tuple[int, int]


class EmbeddingError(GraphError):
    """Invalid rotation system for the given graph."""


@dataclass(frozen=True)
class RotationSystem:
    """Cyclic order of darts around every vertex."""

    order: tuple[tuple[Dart, ...], ...]

    @classmethod
    def from_lists(cls, order: Sequence[Sequence[Sequence[int]]]) -> "RotationSystem":
        return cls(tuple(tuple((int(d[0]), int(d[1])) for d in darts) for darts in order))

    def to_lists(self) -> list[list[list[int]]]:
        return [[[e, end] for e, end in darts] for darts in self.order]

    def successor_map(self) -> dict[Dart, Dart]:
        succ: dict[Dart, Dart] = {}
        for darts in self.order:
            for i, d in enumerate(darts):
                succ[d] = darts[(i + 1) % len(darts)]
        return succ


def validate_rotation(g: Multigraph, rot: RotationSystem) -> None:
    """Every dart of every edge appears exactly once, at the vertex of its end."""
    if len(rot.order) != g.n:
        raise EmbeddingError(f"rotation lists {len(rot.order)} vertices, graph has {g.n}")
    seen: set[Dart] = set()
    for v, darts in enumerate(rot.order):
        for e, end in darts:
            if not (0 <= e < g.m) or end not in (0, 1):
                raise EmbeddingError(f"dart ({e}, {end}) at vertex {v} does not exist")
            if g.edges[e][end] != v:
                raise EmbeddingError(f"dart ({e}, {end}) listed at {v}, belongs to {g.edges[e][end]}")
            if (e, end) in seen:
                raise EmbeddingError(f"dart ({e}, {end}) listed twice")
            seen.add((e, end))
    if len(seen) != 2 * g.m:
        missing = sorted({(e, s) for e in range(g.m) for s in (0, 1)} - seen)
        raise EmbeddingError(f"darts missing from rotation: {missing[:5]}")


def trace_faces(g: Multigraph, rot: RotationSystem) -> list[tuple[Dart, ...]]:
    """Face walks of the embedding.

    From dart ``d`` the walk crosses the edge and continues with the successor
    of the reversed dart at the far vertex.  Faces are listed in order of
    their smallest dart, each walk starting from that dart.
    """
    validate_rotation(g, rot)
    succ = rot.successor_map()
    visited: set[Dart] = set()
    faces: list[tuple[Dart, ...]] = []
    for e in range(g.m):
        for end in (0, 1):
            start = (e, end)
            if start in visited:
                continue
            walk = []
            d = start
            while d not in visited:
                visited.add(d)
                walk.append(d)
                d = succ[(d[0], 1 - d[1])]
            if d != start:
                raise EmbeddingError("face walk did not close; rotation is inconsistent")
            faces.append(tuple(walk))
    return faces


def _euler_genus_from_counts(n: int, m: int, f: int, parts: int) -> int:
    chi = n - m + f
    twice_g = 2 * parts - chi
    if twice_g < 0 or twice_g % 2:
        raise EmbeddingError(f"Euler characteristic {chi} impossible for {parts} component(s)")
    return twice_g // 2


def euler_genus(g: Multigraph, rot: RotationSystem) -> int:
    """Genus of the orientable surface carrying the embedding.

    For a connected graph ``V - E + F = 2 - 2g``.  Disconnected graphs are
    handled component-wise (isolated vertices count as one face each) and the
    genera are summed.
    """
    faces = trace_faces(g, rot)
    comps = components(g)
    isolated = sum(1 for c in comps if len(c) == 1 and not g.neighbors(c[0]))
    return _euler_genus_from_counts(g.n, g.m, len(faces) + isolated, len(comps))


@dataclass(frozen=True)
class EmbeddedGraph:
    graph: Multigraph
    rotation: RotationSystem
    faces: tuple[tuple[Dart, ...], ...]
    genus: int

    def face_of_dart(self) -> dict[Dart, int]:
        return {d: i for i, walk in enumerate(self.faces) for d in walk}

    def face_vertices(self, f: int) -> list[int]:
        return [self.graph.edges[e][end] for e, end in self.faces[f]]


def embed(g: Multigraph, rot: RotationSystem) -> EmbeddedGraph:
    faces = trace_faces(g, rot)
    if g.n and not g.is_connected():
        raise EmbeddingError("embedded graphs must be connected")
    genus = _euler_genus_from_counts(g.n, g.m, max(len(faces), 1 if g.n else 0), 1 if g.n else 0)
    return EmbeddedGraph(g, rot, tuple(faces), genus)


def dual_graph(emb: EmbeddedGraph) -> EmbeddedGraph:
    """Dual embedding: one vertex per face, dual edge ``e`` joins the faces on
    the two sides of primal edge ``e`` (a loop for bridges).

    Dual edge ``e`` has end 0 in the face containing dart ``(e, 0)``; the
    rotation at a dual vertex follows the face walk, so faces of the dual are
    the vertex rotations of the primal.
    """
    g = emb.graph
    if g.m == 0:
        raise EmbeddingError("dual of an edgeless graph is undefined here")
    where = emb.face_of_dart()
    dual_edges = tuple((where[(e, 0)], where[(e, 1)]) for e in range(g.m))
    dual = Multigraph(len(emb.faces), dual_edges, simple=False)
    rot = RotationSystem(tuple(tuple(walk) for walk in emb.faces))
    return embed(dual, rot)


def rotation_from_neighbor_order(g: Multigraph, orders: Sequence[Sequence[int]]) -> RotationSystem:
    """Build a rotation for a simple graph from cyclic neighbor orders."""
    lookup: dict[tuple[int, int], Dart] = {}
    for e, (u, v) in enumerate(g.edges):
        lookup[(u, v)] = (e, 0)
        lookup[(v, u)] = (e, 1)
    try:
        rot = RotationSystem(
            tuple(tuple(lookup[(v, w)] for w in orders[v]) for v in range(g.n))
        )
    except KeyError as exc:
        raise EmbeddingError(f"neighbor order names a non-edge {exc.args[0]}") from None
    validate_rotation(g, rot)
    return rot


def torus_grid_rotation(k: int) -> RotationSystem:
    """Row-order rotation of C_k x C_k (right, down, left, up at every vertex);
    every face is a unit square of the flat torus."""
    order = []
    for i in range(k):
        for j in range(k):
            v = i * k + j
            left = i * k + (j - 1) % k
            up = ((i - 1) % k) * k + j
            order.append(((2 * v, 0), (2 * v + 1, 0), (2 * left, 1), (2 * up + 1, 1)))
    return RotationSystem(tuple(order))


def planar_grid_rotation(g: Multigraph, k: int) -> RotationSystem:
    """Straight-line rotation for :func:`stpef.graph.planar_grid`."""
    orders = []
    for i in range(k):
        for j in range(k):
            nbrs = []
            for di, dj in ((0, 1), (1, 0), (0, -1), (-1, 0)):
                a, b = i + di, j + dj
                if 0 <= a < k and 0 <= b < k:
                    nbrs.append(a * k + b)
            orders.append(nbrs)
    return rotation_from_neighbor_order(g, orders)
