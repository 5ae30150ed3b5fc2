"""Planarity testing with embedding output, and planarizing-set heuristics.

The tester embeds each biconnected block by incremental path insertion into
faces (Demoucron, Malgrange and Pertuiset) and glues block rotations at cut
vertices.  Loops and parallel edges are ignored for the decision and slotted
back into the rotation afterwards.
"""

from __future__ import annotations

import math
import random
from collections import deque
from dataclasses import dataclass, field
from typing import Iterable, Optional

from .graph import GraphError, Multigraph, components
from .surface import Dart, RotationSystem, euler_genus


class NonPlanarError(GraphError):
    """A planar graph (or planar remainder G - X) was required."""


@dataclass(frozen=True)
class PlanarityResult:
    planar: bool
    embedding: Optional[RotationSystem] = None
    witness: Optional[str] = None

    def __bool__(self) -> bool:
        return self.planar


# ---------------------------------------------------------------------------
# biconnected blocks
# ---------------------------------------------------------------------------


def _blocks(n: int, edges: list[tuple[int, int]]) -> list[list[int]]:
    """Edge-index lists of the biconnected blocks of a simple graph."""
    adj: list[list[tuple[int, int]]] = [[] for _ in range(n)]
    for i, (u, v) in enumerate(edges):
        adj[u].append((v, i))
        adj[v].append((u, i))
    disc = [-1] * n
    low = [0] * n
    timer = 0
    blocks: list[list[int]] = []
    for root in range(n):
        if disc[root] != -1:
            continue
        disc[root] = low[root] = timer
        timer += 1
        edge_stack: list[int] = []
        # frames: (vertex, edge used to enter, neighbor iterator position)
        stack: list[list[int]] = [[root, -1, 0]]
        while stack:
            frame = stack[-1]
            v, via, pos = frame
            if pos < len(adj[v]):
                frame[2] += 1
                w, e = adj[v][pos]
                if e == via:
                    continue
                if disc[w] == -1:
                    edge_stack.append(e)
                    disc[w] = low[w] = timer
                    timer += 1
                    stack.append([w, e, 0])
                elif disc[w] < disc[v]:
                    edge_stack.append(e)
                    low[v] = min(low[v], disc[w])
                continue
            stack.pop()
            if not stack:
                break
            parent = stack[-1][0]
            low[parent] = min(low[parent], low[v])
            if low[v] >= disc[parent]:
                block = []
                while True:
                    e = edge_stack.pop()
                    block.append(e)
                    if e == via:
                        break
                blocks.append(sorted(block))
    blocks.sort()
    return blocks


# ---------------------------------------------------------------------------
# DMP embedding of a single biconnected block
# ---------------------------------------------------------------------------


def _find_cycle(nb: int, edges: list[tuple[int, int]], adj: list[list[tuple[int, int]]]) -> list[int]:
    """Edge indices of a cycle through edge 0 (exists in a 2-connected block)."""
    u, v = edges[0]
    prev: dict[int, tuple[int, int]] = {v: (-1, -1)}
    queue = deque([v])
    while queue:
        x = queue.popleft()
        if x == u:
            break
        for y, e in adj[x]:
            if e == 0 or y in prev:
                continue
            prev[y] = (x, e)
            queue.append(y)
    path = []
    x = u
    while x != v:
        x, e = prev[x]
        path.append(e)
    return [0] + path


def _trace_partial(rot: dict[int, list[Dart]], edges: list[tuple[int, int]]) -> list[list[Dart]]:
    succ: dict[Dart, Dart] = {}
    for darts in rot.values():
        for i, d in enumerate(darts):
            succ[d] = darts[(i + 1) % len(darts)]
    seen: set[Dart] = set()
    faces = []
    for start in sorted(succ):
        if start in seen:
            continue
        walk = []
        d = start
        while d not in seen:
            seen.add(d)
            walk.append(d)
            d = succ[(d[0], 1 - d[1])]
        faces.append(walk)
    return faces


def _embed_block(nb: int, edges: list[tuple[int, int]]) -> Optional[dict[int, list[Dart]]]:
    """Rotation (local darts) of a 2-connected simple block, or None if non-planar."""
    mb = len(edges)
    if nb >= 3 and mb > 3 * nb - 6:
        return None
    adj: list[list[tuple[int, int]]] = [[] for _ in range(nb)]
    for i, (a, b) in enumerate(edges):
        adj[a].append((b, i))
        adj[b].append((a, i))

    def dart_at(e: int, x: int) -> Dart:
        return (e, 0) if edges[e][0] == x else (e, 1)

    cycle = _find_cycle(nb, edges, adj)
    embedded_e = [False] * mb
    embedded_v = [False] * nb
    rot: dict[int, list[Dart]] = {}
    for e in cycle:
        embedded_e[e] = True
        for x in edges[e]:
            embedded_v[x] = True
            rot.setdefault(x, []).append(dart_at(e, x))
    remaining = mb - len(cycle)

    while remaining:
        faces = _trace_partial(rot, edges)
        faces_at: dict[int, set[int]] = {}
        for fi, walk in enumerate(faces):
            for e, end in walk:
                faces_at.setdefault(edges[e][end], set()).add(fi)

        # fragments: (attachments, interior vertices or None for a chord edge, chord edge)
        fragments: list[tuple[list[int], Optional[set[int]], int]] = []
        for e in range(mb):
            if not embedded_e[e] and embedded_v[edges[e][0]] and embedded_v[edges[e][1]]:
                fragments.append((sorted(edges[e]), None, e))
        seen_v = [False] * nb
        for s in range(nb):
            if embedded_v[s] or seen_v[s]:
                continue
            seen_v[s] = True
            interior = {s}
            attach: set[int] = set()
            queue = deque([s])
            while queue:
                x = queue.popleft()
                for y, _ in adj[x]:
                    if embedded_v[y]:
                        attach.add(y)
                    elif not seen_v[y]:
                        seen_v[y] = True
                        interior.add(y)
                        queue.append(y)
            fragments.append((sorted(attach), interior, -1))

        chosen = None
        for frag in fragments:
            attach = frag[0]
            ok = set(faces_at[attach[0]])
            for a in attach[1:]:
                ok &= faces_at[a]
            if not ok:
                return None
            if chosen is None or (len(ok) == 1 and chosen[2] > 1):
                chosen = (frag, min(ok), len(ok))
                if len(ok) == 1:
                    break
        assert chosen is not None
        (attach, interior, chord), face_idx, _ = chosen

        if interior is None:
            path_edges = [chord]
            a, b = edges[chord]
        else:
            a = attach[0]
            prev: dict[int, tuple[int, int]] = {}
            queue = deque()
            for y, e in adj[a]:
                if y in interior and y not in prev:
                    prev[y] = (a, e)
                    queue.append(y)
            end_vertex = end_edge = -1
            while queue and end_vertex < 0:
                x = queue.popleft()
                for y, e in adj[x]:
                    if embedded_v[y] and y != a:
                        end_vertex, end_edge = y, e
                        last = x
                        break
                    if y in interior and y not in prev:
                        prev[y] = (x, e)
                        queue.append(y)
            b = end_vertex
            path_edges = [end_edge]
            x = last
            while x != a:
                x, e = prev[x]
                path_edges.append(e)
            path_edges.reverse()

        # corner of the chosen face at a vertex x: the dart arriving at x
        walk = faces[face_idx]
        arriving: dict[int, Dart] = {}
        for e, end in walk:
            arriving[edges[e][1 - end]] = (e, 1 - end)

        def insert(x: int, new: Dart) -> None:
            darts = rot[x]
            darts.insert(darts.index(arriving[x]) + 1, new)

        insert(a, dart_at(path_edges[0], a))
        insert(b, dart_at(path_edges[-1], b))
        x = a
        for i, e in enumerate(path_edges):
            embedded_e[e] = True
            y = edges[e][1] if edges[e][0] == x else edges[e][0]
            if i + 1 < len(path_edges):
                embedded_v[y] = True
                rot[y] = [dart_at(e, y), dart_at(path_edges[i + 1], y)]
            x = y
        remaining -= len(path_edges)
    return rot


# ---------------------------------------------------------------------------
# public tester
# ---------------------------------------------------------------------------


def is_planar(g: Multigraph) -> PlanarityResult:
    """Decide planarity; when planar, return a genus-0 rotation system."""
    simple_edges: list[tuple[int, int]] = []
    simple_index: list[int] = []
    first: dict[tuple[int, int], int] = {}
    extras: list[tuple[int, int]] = []  # (edge, twin edge or -1 for loops)
    for e, (u, v) in enumerate(g.edges):
        if u == v:
            extras.append((e, -1))
            continue
        key = (min(u, v), max(u, v))
        if key in first:
            extras.append((e, first[key]))
            continue
        first[key] = e
        simple_edges.append((u, v))
        simple_index.append(e)

    for comp in components(g):
        nc = len(comp)
        if nc >= 3:
            cset = set(comp)
            mc = sum(1 for u, v in simple_edges if u in cset)
            if mc > 3 * nc - 6:
                return PlanarityResult(False, None, f"component with {nc} vertices has {mc} > 3n-6 edges")

    rotation: list[list[Dart]] = [[] for _ in range(g.n)]
    for block in _blocks(g.n, simple_edges):
        if len(block) == 1:
            e = simple_index[block[0]]
            u, v = g.edges[e]
            rotation[u].append((e, 0))
            rotation[v].append((e, 1))
            continue
        verts = sorted({x for i in block for x in simple_edges[i]})
        local = {x: i for i, x in enumerate(verts)}
        local_edges = [(local[simple_edges[i][0]], local[simple_edges[i][1]]) for i in block]
        rot = _embed_block(len(verts), local_edges)
        if rot is None:
            return PlanarityResult(False, None, f"biconnected block on vertices {verts[:8]} is non-planar")
        for lx, darts in sorted(rot.items()):
            rotation[verts[lx]].extend((simple_index[block[le]], end) for le, end in darts)

    for e, twin in extras:
        u, v = g.edges[e]
        if twin < 0:
            rotation[u].extend([(e, 0), (e, 1)])
            continue
        tu = 0 if g.edges[twin][0] == u else 1
        at_u = rotation[u]
        at_u.insert(at_u.index((twin, tu)) + 1, (e, 0))
        at_v = rotation[v]
        at_v.insert(at_v.index((twin, 1 - tu)), (e, 1))

    rot_sys = RotationSystem(tuple(tuple(r) for r in rotation))
    if euler_genus(g, rot_sys) != 0:
        raise AssertionError("planarity tester produced a non-planar rotation")
    return PlanarityResult(True, rot_sys, None)


def planar_without(g: Multigraph, removed: Iterable[int]) -> bool:
    h, _, _ = g.delete_vertices(removed)
    return is_planar(h).planar


# ---------------------------------------------------------------------------
# planarizing sets
# ---------------------------------------------------------------------------

STRATEGIES = ("greedy-degree", "bfs-layers", "user-supplied")


@dataclass(frozen=True)
class PlanarizerStrategy:
    name: str = "bfs-layers"
    seed: int = 0
    layer_width: Optional[int] = None
    genus: Optional[int] = None
    apex_set: tuple[int, ...] = field(default=())

    def __post_init__(self) -> None:
        if self.name not in STRATEGIES:
            raise ValueError(f"unknown planarizer {self.name!r}; choose from {STRATEGIES}")


def _two_core(g: Multigraph, removed: set[int]) -> dict[int, int]:
    """Degrees inside the 2-core of G - removed (simple-graph degrees)."""
    nbrs: dict[int, set[int]] = {v: set() for v in range(g.n) if v not in removed}
    for u, v in g.edges:
        if u != v and u in nbrs and v in nbrs:
            nbrs[u].add(v)
            nbrs[v].add(u)
    queue = deque(v for v, s in nbrs.items() if len(s) < 2)
    while queue:
        v = queue.popleft()
        if v not in nbrs:
            continue
        for w in nbrs.pop(v):
            if w in nbrs:
                nbrs[w].discard(v)
                if len(nbrs[w]) < 2:
                    queue.append(w)
    return {v: len(s) for v, s in nbrs.items()}


def _greedy_repair(g: Multigraph, removed: set[int], cutoff: Optional[int]) -> Optional[set[int]]:
    removed = set(removed)
    while not planar_without(g, removed):
        if cutoff is not None and len(removed) >= cutoff:
            return None
        core = _two_core(g, removed)
        v = min(core, key=lambda x: (-core[x], x))
        removed.add(v)
    return removed


def _prune(g: Multigraph, removed: set[int]) -> set[int]:
    removed = set(removed)
    for v in sorted(removed):
        trial = removed - {v}
        if planar_without(g, trial):
            removed = trial
    return removed


def _bfs_layers(g: Multigraph, root: int) -> list[int]:
    dist = [-1] * g.n
    order = [root] + [v for v in range(g.n) if v != root]
    for s in order:
        if dist[s] != -1:
            continue
        dist[s] = 0
        queue = deque([s])
        while queue:
            x = queue.popleft()
            for y, _ in g.neighbors(x):
                if dist[y] == -1:
                    dist[y] = dist[x] + 1
                    queue.append(y)
    return dist


def planarizing_set(g: Multigraph, strategy: PlanarizerStrategy = PlanarizerStrategy()) -> tuple[int, ...]:
    """Vertex set X with G - X planar, checked with :func:`is_planar`.

    ``greedy-degree`` deletes a maximum-degree vertex of the 2-core until the
    rest is planar.  ``bfs-layers`` deletes every ``w``-th breadth-first layer
    (``w = ceil(sqrt(n / max(g, 1)))`` unless given), trying each residue
    class of layers, repairs greedily, drops vertices that are not needed, and
    keeps the smallest result.  ``user-supplied`` only checks ``apex_set``.
    """
    if strategy.name == "user-supplied":
        x = tuple(sorted(set(strategy.apex_set)))
        if any(not 0 <= v < g.n for v in x):
            raise GraphError(f"apex set {x} has vertices outside 0..{g.n - 1}")
        if not planar_without(g, x):
            raise NonPlanarError(f"G - X is non-planar for X = {list(x)}")
        return x
    if is_planar(g).planar:
        return ()
    if strategy.name == "greedy-degree":
        found = _greedy_repair(g, set(), None)
        assert found is not None
        return tuple(sorted(found))

    width = strategy.layer_width or math.ceil(math.sqrt(g.n / max(strategy.genus or 1, 1)))
    width = max(width, 1)
    root = 0 if strategy.seed == 0 else random.Random(strategy.seed).randrange(g.n)
    dist = _bfs_layers(g, root)
    best: Optional[set[int]] = None
    for r in range(width):
        start = {v for v in range(g.n) if dist[v] % width == r}
        if best is not None and len(start) >= 2 * len(best):
            continue
        repaired = _greedy_repair(g, start, None if best is None else len(start) + len(best))
        if repaired is None:
            continue
        pruned = _prune(g, repaired)
        if best is None or len(pruned) < len(best):
            best = pruned
    assert best is not None
    return tuple(sorted(best))
