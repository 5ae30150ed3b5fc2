"""Multigraphs with stable edge identity, plus the combinatorial oracles
(components, Kruskal, spanning-tree enumeration) used to check formulations.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

MAX_ENUM_EDGES = 25


class GraphError(ValueError):
    """Raised for malformed graphs or violated graph preconditions."""


@dataclass(frozen=True)
class Multigraph:
    """Undirected multigraph on vertices ``0..n-1``.

    Edge ``i`` is ``edges[i]``; operations never reorder edges, so edge
    indices double as column identities in the formulations built on top.
    """

    n: int
    edges: tuple[tuple[int, int], ...]
    simple: bool = True
    _adj: tuple[tuple[tuple[int, int], ...], ...] = field(
        init=False, repr=False, compare=False
    )

    def __post_init__(self) -> None:
        if self.n < 0:
            raise GraphError("vertex count must be non-negative")
        edges = tuple((int(u), int(v)) for u, v in self.edges)
        object.__setattr__(self, "edges", edges)
        seen: set[tuple[int, int]] = set()
        adj: list[list[tuple[int, int]]] = [[] for _ in range(self.n)]
        for i, (u, v) in enumerate(edges):
            if not (0 <= u < self.n and 0 <= v < self.n):
                raise GraphError(f"edge {i} = ({u}, {v}) has an endpoint out of range")
            if self.simple:
                if u == v:
                    raise GraphError(f"edge {i} is a loop in a simple graph")
                key = (min(u, v), max(u, v))
                if key in seen:
                    raise GraphError(f"edge {i} = ({u}, {v}) is a parallel edge in a simple graph")
                seen.add(key)
            adj[u].append((v, i))
            if u != v:
                adj[v].append((u, i))
        object.__setattr__(self, "_adj", tuple(tuple(a) for a in adj))

    @property
    def m(self) -> int:
        return len(self.edges)

    def neighbors(self, v: int) -> tuple[tuple[int, int], ...]:
        """(neighbor, edge index) pairs at ``v``; loops are listed once."""
        return self._adj[v]

    def degree(self, v: int) -> int:
        return sum(2 if self.edges[e][0] == self.edges[e][1] else 1 for _, e in self._adj[v])

    def other_end(self, e: int, v: int) -> int:
        a, b = self.edges[e]
        return b if v == a else a

    def is_connected(self) -> bool:
        return len(components(self)) <= 1

    def induced_subgraph(
        self, keep: Iterable[int]
    ) -> tuple["Multigraph", list[int], list[int]]:
        """Subgraph induced on ``keep``.

        Returns ``(H, vertex_map, edge_map)`` where ``vertex_map[i]`` and
        ``edge_map[j]`` give the original index of H's vertex ``i`` and
        edge ``j``.  Relative order of vertices and edges is preserved.
        """
        vertex_map = sorted(set(keep))
        local = {v: i for i, v in enumerate(vertex_map)}
        edge_map = [
            i for i, (u, v) in enumerate(self.edges) if u in local and v in local
        ]
        sub_edges = [(local[self.edges[i][0]], local[self.edges[i][1]]) for i in edge_map]
        return Multigraph(len(vertex_map), tuple(sub_edges), self.simple), vertex_map, edge_map

    def delete_vertices(self, removed: Iterable[int]) -> tuple["Multigraph", list[int], list[int]]:
        gone = set(removed)
        return self.induced_subgraph(v for v in range(self.n) if v not in gone)


def new_multigraph(n: int, edges: Sequence[Sequence[int]], simple: bool = True) -> Multigraph:
    return Multigraph(n, tuple((e[0], e[1]) for e in edges), simple)


def components(g: Multigraph) -> list[list[int]]:
    """Connected components, each sorted, ordered by smallest vertex."""
    seen = [False] * g.n
    out: list[list[int]] = []
    for s in range(g.n):
        if seen[s]:
            continue
        seen[s] = True
        comp = [s]
        stack = [s]
        while stack:
            u = stack.pop()
            for w, _ in g.neighbors(u):
                if not seen[w]:
                    seen[w] = True
                    comp.append(w)
                    stack.append(w)
        out.append(sorted(comp))
    return out


class _DisjointSet:
    def __init__(self, n: int) -> None:
        self.parent = list(range(n))

    def find(self, x: int) -> int:
        root = x
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[x] != root:
            self.parent[x], x = root, self.parent[x]
        return root

    def union(self, a: int, b: int) -> bool:
        ra, rb = self.find(a), self.find(b)
        if ra == rb:
            return False
        if ra > rb:
            ra, rb = rb, ra
        self.parent[rb] = ra
        return True


def kruskal_mst(g: Multigraph, weights: Sequence[Fraction | int]) -> tuple[list[int], Fraction]:
    """Minimum spanning tree by Kruskal's algorithm.

    Ties are broken by smallest edge index.  Returns the sorted list of tree
    edge indices and the exact total weight.
    """
    if len(weights) != g.m:
        raise GraphError(f"weighting has length {len(weights)}, graph has {g.m} edges")
    if not g.is_connected():
        raise GraphError("minimum spanning tree requires a connected graph")
    w = [Fraction(x) for x in weights]
    dsu = _DisjointSet(g.n)
    tree: list[int] = []
    for e in sorted(range(g.m), key=lambda i: (w[i], i)):
        u, v = g.edges[e]
        if dsu.union(u, v):
            tree.append(e)
            if len(tree) == g.n - 1:
                break
    return sorted(tree), sum((w[e] for e in tree), Fraction(0))


def is_spanning_tree(g: Multigraph, edge_set: Iterable[int]) -> bool:
    chosen = list(edge_set)
    if len(chosen) != g.n - 1 or len(set(chosen)) != len(chosen):
        return False
    dsu = _DisjointSet(g.n)
    return all(dsu.union(*g.edges[e]) for e in chosen)


def enumerate_spanning_trees(g: Multigraph) -> list[tuple[int, ...]]:
    """All spanning trees as sorted tuples of edge indices, in lexicographic order.

    Backtracking over edges in index order: each edge is either taken (if it
    joins two current components) or skipped (if enough edges remain).
    """
    if g.m > MAX_ENUM_EDGES:
        raise GraphError(f"enumeration guard: {g.m} edges > {MAX_ENUM_EDGES}")
    if not g.is_connected():
        raise GraphError("spanning trees require a connected graph")
    need = g.n - 1
    out: list[tuple[int, ...]] = []
    chosen: list[int] = []

    def extend(start: int, parent: list[int]) -> None:
        if len(chosen) == need:
            out.append(tuple(chosen))
            return
        if g.m - start < need - len(chosen):
            return

        def find(x: int) -> int:
            while parent[x] != x:
                x = parent[x]
            return x

        for e in range(start, g.m):
            if g.m - e < need - len(chosen):
                break
            u, v = g.edges[e]
            ru, rv = find(u), find(v)
            if ru == rv:
                continue
            merged = list(parent)
            merged[max(ru, rv)] = min(ru, rv)
            chosen.append(e)
            extend(e + 1, merged)
            chosen.pop()

    extend(0, list(range(g.n)))
    return out


def brute_force_spanning_trees(g: Multigraph) -> list[tuple[int, ...]]:
    """Reference enumeration over all (n-1)-subsets; only for tiny graphs."""
    return [
        combo
        for combo in itertools.combinations(range(g.m), g.n - 1)
        if is_spanning_tree(g, combo)
    ]


# ---------------------------------------------------------------------------
# graph families used by the corpus, the benchmarks and the tests
# ---------------------------------------------------------------------------


def complete_graph(n: int) -> Multigraph:
    return Multigraph(n, tuple(itertools.combinations(range(n), 2)))


def cycle_graph(n: int) -> Multigraph:
    if n < 3:
        raise GraphError("cycle needs at least 3 vertices")
    return Multigraph(n, tuple((i, (i + 1) % n) for i in range(n)))


def path_graph(n: int) -> Multigraph:
    return Multigraph(n, tuple((i, i + 1) for i in range(n - 1)))


def torus_grid(k: int) -> Multigraph:
    """C_k x C_k.  Vertex ``(i, j)`` is ``i*k + j``; for each vertex the
    horizontal edge to ``(i, j+1)`` precedes the vertical edge to ``(i+1, j)``."""
    if k < 3:
        raise GraphError("torus grid needs k >= 3")
    edges = []
    for i in range(k):
        for j in range(k):
            v = i * k + j
            edges.append((v, i * k + (j + 1) % k))
            edges.append((v, ((i + 1) % k) * k + j))
    return Multigraph(k * k, tuple(edges))


def planar_grid(k: int) -> Multigraph:
    """P_k x P_k with the same vertex numbering as :func:`torus_grid`."""
    edges = []
    for i in range(k):
        for j in range(k):
            v = i * k + j
            if j + 1 < k:
                edges.append((v, v + 1))
            if i + 1 < k:
                edges.append((v, v + k))
    return Multigraph(k * k, tuple(edges))


def cube_graph() -> Multigraph:
    edges = [(u, u ^ (1 << b)) for u in range(8) for b in range(3) if u < u ^ (1 << b)]
    return Multigraph(8, tuple(edges))


def petersen_graph() -> Multigraph:
    outer = [(i, (i + 1) % 5) for i in range(5)]
    spokes = [(i, i + 5) for i in range(5)]
    inner = [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
    return Multigraph(10, tuple(outer + spokes + inner))


def wheel_graph(rim: int) -> Multigraph:
    """Hub 0 joined to the rim cycle ``1..rim``."""
    edges = [(0, i) for i in range(1, rim + 1)]
    edges += [(i, i % rim + 1) for i in range(1, rim + 1)]
    return Multigraph(rim + 1, tuple(edges))


def add_apex(g: Multigraph) -> Multigraph:
    """New vertex ``n`` adjacent to every vertex of ``g``."""
    return Multigraph(g.n + 1, g.edges + tuple((v, g.n) for v in range(g.n)), g.simple)


def complete_bipartite(a: int, b: int) -> Multigraph:
    return Multigraph(a + b, tuple((i, a + j) for i in range(a) for j in range(b)))
