"""Named extended formulations and the two planarizing-set pipelines.

Label conventions: ``x:e`` is the spanning-tree coordinate of edge ``e``;
``s:v`` and ``f:e`` are the vertex and edge coordinates of the (non-empty)
subgraph polytope.
"""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass, field
from fractions import Fraction
from typing import Any, Optional, Sequence

from . import polyhedra as ph
from .exactq import Row
from .graph import GraphError, Multigraph, components
from .planar import NonPlanarError, PlanarizerStrategy, is_planar, planar_without, planarizing_set
from .polyhedra import ExtForm
from .surface import EmbeddedGraph, RotationSystem, dual_graph, embed, euler_genus


def x_label(e: int) -> str:
    return f"x:{e}"


def s_label(v: int) -> str:
    return f"s:{v}"


def f_label(e: int) -> str:
    return f"f:{e}"


def stp_labels(g: Multigraph) -> tuple[str, ...]:
    return tuple(x_label(e) for e in range(g.m))


def subgraph_labels(g: Multigraph) -> tuple[str, ...]:
    return tuple(s_label(v) for v in range(g.n)) + tuple(f_label(e) for e in range(g.m))


def _require_connected(g: Multigraph) -> None:
    if g.n == 0 or not g.is_connected():
        raise GraphError("spanning tree polytope requires a connected graph")


def _stamp(form: ExtForm, op: str, **params: Any) -> ExtForm:
    """Replace the top provenance node with a named construction."""
    prov = {"op": op, "params": params, "size": form.size(), "children": [form.provenance]}
    return ExtForm(form.labels, form.aux_labels, form.inequalities, form.equalities, prov)


# ---------------------------------------------------------------------------
# subgraph polytope
# ---------------------------------------------------------------------------


def subp_ef(g: Multigraph) -> ExtForm:
    """``0 <= f_vw <= s_v <= 1`` for every edge ``vw``; ``3m + n`` rows.

    Isolated vertices additionally get ``s_v >= 0`` (nothing else bounds them).
    """
    labels = subgraph_labels(g)
    rows: list[tuple[dict[str, int], int]] = []
    rows += [({f_label(e): -1}, 0) for e in range(g.m)]
    for e, (u, v) in enumerate(g.edges):
        rows.append(({f_label(e): 1, s_label(u): -1}, 0))
        rows.append(({f_label(e): 1, s_label(v): -1}, 0))
    rows += [({s_label(v): 1}, 1) for v in range(g.n)]
    rows += [({s_label(v): -1}, 0) for v in range(g.n) if not g.neighbors(v)]
    return ph.from_rows(labels, rows, op="subp", n=g.n, m=g.m)


# ---------------------------------------------------------------------------
# Martin / Wong: one rooted orientation per vertex
# ---------------------------------------------------------------------------


def martin_stp(g: Multigraph) -> ExtForm:
    """For every root ``k`` an orientation ``z_k`` of the support of ``x`` in
    which every vertex other than ``k`` has out-degree 1 and ``k`` has 0.

    Size is ``2 n m`` (non-negativity of the orientation variables only).
    """
    _require_connected(g)
    n, m = g.n, g.m
    labels = stp_labels(g)
    aux = tuple(f"z{k}.{e}{d}" for k in range(n) for e in range(m) for d in "+-")

    def z(k: int, e: int, forward: bool) -> int:
        return m + 2 * (k * m + e) + (0 if forward else 1)

    eq = [Row.make({e: 1 for e in range(m)}, n - 1)]
    for k in range(n):
        for e in range(m):
            eq.append(Row.make({z(k, e, True): 1, z(k, e, False): 1, e: -1}, 0))
        for i in range(n):
            out = {}
            for _, e in g.neighbors(i):
                u, _v = g.edges[e]
                out[z(k, e, u == i)] = 1
            eq.append(Row.make(out, 0 if i == k else 1))
    ineq = [Row.make({j: -1}, 0) for j in range(m, m + 2 * n * m)]
    return ExtForm(labels, aux, tuple(ineq), tuple(eq),
                   {"op": "martin_stp", "params": {"n": n, "m": m}, "size": len(ineq), "children": []})


def _tree_parent_edges(g: Multigraph, tree: Sequence[int], root: int) -> dict[int, tuple[int, int]]:
    """For every non-root vertex: (edge to parent, the vertex itself)."""
    adj: dict[int, list[tuple[int, int]]] = {v: [] for v in range(g.n)}
    for e in tree:
        u, v = g.edges[e]
        adj[u].append((v, e))
        adj[v].append((u, e))
    parent: dict[int, tuple[int, int]] = {}
    seen = {root}
    stack = [root]
    while stack:
        u = stack.pop()
        for w, e in adj[u]:
            if w not in seen:
                seen.add(w)
                parent[w] = (e, w)
                stack.append(w)
    return parent


def martin_lift(g: Multigraph, tree: Sequence[int]) -> list[Fraction]:
    """Full point of :func:`martin_stp` for the spanning tree ``tree``: for each
    root, every tree edge is oriented towards that root."""
    n, m = g.n, g.m
    point = [Fraction(0)] * (m + 2 * n * m)
    for e in tree:
        point[e] = Fraction(1)
    for k in range(n):
        for child, (e, w) in _tree_parent_edges(g, tree, k).items():
            u, _ = g.edges[e]
            point[m + 2 * (k * m + e) + (0 if u == w else 1)] = Fraction(1)
    return point


# ---------------------------------------------------------------------------
# Williams: primal tree towards r and dual tree towards f0
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class WilliamsLayout:
    embedding: EmbeddedGraph
    dual: EmbeddedGraph
    root: int
    root_face: int


def williams_layout(
    g: Multigraph,
    rotation: Optional[RotationSystem] = None,
    root: Optional[int] = None,
    root_face: Optional[int] = None,
) -> WilliamsLayout:
    _require_connected(g)
    if rotation is None:
        res = is_planar(g)
        if not res.planar:
            raise NonPlanarError(f"graph is non-planar: {res.witness}")
        rotation = res.embedding
    emb = embed(g, rotation)
    if emb.genus != 0:
        raise NonPlanarError(f"embedding has genus {emb.genus}; a planar embedding is required")
    r = 0 if root is None else root
    incident = [fi for fi in range(len(emb.faces)) if r in emb.face_vertices(fi)]
    f0 = incident[0] if root_face is None else root_face
    if f0 not in incident:
        raise GraphError(f"root vertex {r} is not incident to root face {f0}")
    return WilliamsLayout(emb, dual_graph(emb), r, f0)


def williams_stp(
    g: Multigraph,
    rotation: Optional[RotationSystem] = None,
    root: Optional[int] = None,
    root_face: Optional[int] = None,
) -> ExtForm:
    """Planar formulation with arc variables on both orientations of every
    primal and dual edge; size ``4m``.

    Rows: ``x_e = a_e+ + a_e-``; out-degree 1 at every vertex except ``root``
    (0 there); out-degree 1 at every face except ``root_face`` (0 there);
    ``a_e+ + a_e- + d_e+ + d_e- = 1``; all arcs non-negative.  The root
    defaults to vertex 0 and the root face to the first traced face at it.
    """
    if g.m == 0:
        _require_connected(g)
        return ExtForm((), (), (), (), {"op": "williams_stp", "params": {"n": g.n, "m": 0}, "size": 0, "children": []})
    lay = williams_layout(g, rotation, root, root_face)
    m = g.m
    dual = lay.dual.graph
    labels = stp_labels(g)
    aux = tuple(f"{kind}{e}{d}" for kind in "ad" for e in range(m) for d in "+-")

    def arc(e: int, forward: bool) -> int:
        return m + 2 * e + (0 if forward else 1)

    def darc(e: int, forward: bool) -> int:
        return 3 * m + 2 * e + (0 if forward else 1)

    eq = [Row.make({e: 1, arc(e, True): -1, arc(e, False): -1}, 0) for e in range(m)]
    for v in range(g.n):
        out = {}
        for _, e in g.neighbors(v):
            out[arc(e, g.edges[e][0] == v)] = 1
        eq.append(Row.make(out, 0 if v == lay.root else 1))
    dual_out: list[dict[int, int]] = [dict() for _ in range(dual.n)]
    for e, (f, h) in enumerate(dual.edges):
        dual_out[f][darc(e, True)] = 1
        dual_out[h][darc(e, False)] = 1
    for f in range(dual.n):
        eq.append(Row.make(dual_out[f], 0 if f == lay.root_face else 1))
    for e in range(m):
        eq.append(Row.make({arc(e, True): 1, arc(e, False): 1, darc(e, True): 1, darc(e, False): 1}, 1))
    ineq = [Row.make({j: -1}, 0) for j in range(m, 5 * m)]
    prov = {"op": "williams_stp", "params": {"n": g.n, "m": m, "root": lay.root, "root_face": lay.root_face,
                                             "faces": len(lay.embedding.faces)},
            "size": len(ineq), "children": []}
    return ExtForm(labels, aux, tuple(ineq), tuple(eq), prov)


def williams_lift(g: Multigraph, tree: Sequence[int], layout: WilliamsLayout) -> list[Fraction]:
    """Full point of :func:`williams_stp` for ``tree``: tree edges oriented
    towards the root, the complementary dual tree towards the root face."""
    m = g.m
    point = [Fraction(0)] * (5 * m)
    for e in tree:
        point[e] = Fraction(1)
    for _, (e, w) in _tree_parent_edges(g, tree, layout.root).items():
        point[m + 2 * e + (0 if g.edges[e][0] == w else 1)] = Fraction(1)
    dual = layout.dual.graph
    cotree = [e for e in range(m) if e not in set(tree)]
    for _, (e, w) in _tree_parent_edges(dual, cotree, layout.root_face).items():
        point[3 * m + 2 * e + (0 if dual.edges[e][0] == w else 1)] = Fraction(1)
    return point


# ---------------------------------------------------------------------------
# forest polytope and non-empty subgraph polytope of planar graphs
# ---------------------------------------------------------------------------


def forest_ef(h: Multigraph) -> ExtForm:
    """Forest polytope of ``h``: product of per-component spanning-tree
    formulations (Williams; Martin for a non-planar component), monotonized.
    Size is ``sum(4 m_i) + 2 m`` when every component is planar."""
    pieces: list[ExtForm] = []
    warnings: list[str] = []
    for comp in components(h):
        sub, _, emap = h.induced_subgraph(comp)
        if sub.m == 0:
            continue
        if is_planar(sub).planar:
            piece = williams_stp(sub)
        else:
            warnings.append(f"component {comp[:6]} is non-planar; used martin_stp")
            piece = martin_stp(sub)
        pieces.append(ph.relabel(piece, {x_label(i): x_label(e) for i, e in enumerate(emap)}))
    if not pieces:
        base = ExtForm((), (), (), (), {"op": "empty", "params": {}, "size": 0, "children": []})
    else:
        base = pieces[0]
        for piece in pieces[1:]:
            base = ph.product(base, piece)
    form = ph.monotonize(base)
    return _stamp(form, "forest_ef", n=h.n, m=h.m, components=len(pieces), warnings=warnings)


def nesubp_planar_ef(h: Multigraph) -> ExtForm:
    """Non-empty subgraph polytope of a planar graph (any number of components).

    ``subp(h)`` intersected with ``f(F) <= s(V) - 1`` for every forest ``F``,
    the latter family written as one robust-counterpart row over
    :func:`forest_ef`.  Size ``size(subp) + size(forest) + 1``.
    """
    sub = subp_ef(h)
    forest = forest_ef(h)
    pairing = {x_label(e): {f_label(e): 1} for e in range(h.m)}
    rc = ph.robust_counterpart(
        forest, sub.labels, pairing, {}, {s_label(v): 1 for v in range(h.n)}, -1
    )
    return _stamp(ph.intersect(sub, rc), "nesubp_planar_ef", n=h.n, m=h.m)


def nesubp_deletion_ef(g: Multigraph, removed: Sequence[int], inner: Optional[ExtForm] = None) -> ExtForm:
    """Non-empty subgraph polytope of ``g`` from one of ``g - X``.

    Union of ``inner`` (embedded with zeros on X and its edges; dropped when
    ``X = V``) and, for each ``v`` in X, the face ``s_v = 1`` of ``subp(g)``.
    ``inner`` is over the local labels of ``g - X`` and defaults to
    :func:`nesubp_planar_ef` of it.
    """
    xs = sorted(set(removed))
    if any(not 0 <= v < g.n for v in xs):
        raise GraphError(f"vertex set {xs} is out of range")
    h, vmap, emap = g.delete_vertices(xs)
    target = subgraph_labels(g)
    parts: list[ExtForm] = []
    if h.n > 0:
        if inner is None:
            inner = nesubp_planar_ef(h)
        names = {s_label(i): s_label(v) for i, v in enumerate(vmap)}
        names.update({f_label(j): f_label(e) for j, e in enumerate(emap)})
        parts.append(ph.embed_zero(ph.relabel(inner, names), target))
    full = subp_ef(g)
    for v in xs:
        parts.append(ph.face_restrict(full, [({s_label(v): 1}, 1)]))
    return _stamp(ph.balas_union(parts), "nesubp_deletion_ef", X=xs, parts=len(parts))


def stp_from_nesubp(g: Multigraph, inner: ExtForm) -> ExtForm:
    """``{x >= 0 : sum x = n-1, x(F) <= |S| - 1 for all (S, F) in nesubp(g)}``.

    The family is one robust-counterpart row over ``inner``; size
    ``size(inner) + 1 + m``.
    """
    _require_connected(g)
    if set(inner.labels) != set(subgraph_labels(g)):
        raise ph.FormulationError("inner formulation must live in the subgraph space of g")
    labels = stp_labels(g)
    pairing = {f_label(e): {x_label(e): 1} for e in range(g.m)}
    offset = {s_label(v): -1 for v in range(g.n)}
    rc = ph.robust_counterpart(inner, labels, pairing, offset, {}, -1)
    rc = ph.add_inequalities(rc, [({x_label(e): -1}, 0) for e in range(g.m)], note="x >= 0")
    rc = ph.face_restrict(rc, [({lab: 1 for lab in labels}, g.n - 1)])
    return _stamp(rc, "stp_from_nesubp", n=g.n, m=g.m)


# ---------------------------------------------------------------------------
# pipelines
# ---------------------------------------------------------------------------


def planar_edge_bound(n: int) -> int:
    """Maximum edge count of a simple planar graph on ``n`` vertices."""
    return 3 * n - 6 if n >= 3 else max(n - 1, 0)


@dataclass
class SizeReport:
    construction: str
    n: int
    m: int
    genus: Optional[int]
    apex_set: list[int]
    sizes: dict[str, int]
    martin_size: int
    bounds: dict[str, Any] = field(default_factory=dict)

    @property
    def apex_size(self) -> int:
        return len(self.apex_set)

    def to_json(self) -> dict[str, Any]:
        out = asdict(self)
        out["apex_size"] = self.apex_size
        out["schema_version"] = 1
        out["kind"] = "size_report"
        return out


def _pipeline(g: Multigraph, xs: Sequence[int]) -> tuple[ExtForm, dict[str, int]]:
    if not g.simple:
        raise GraphError("pipelines take simple graphs")
    _require_connected(g)
    xs = sorted(set(xs))
    if not planar_without(g, xs):
        raise NonPlanarError(f"G - X is non-planar for X = {xs}")
    h, _, _ = g.delete_vertices(xs)
    sizes: dict[str, int] = {"subp_H": subp_ef(h).size()}
    forest = forest_ef(h)
    sizes["forest_H"] = forest.size()
    inner = nesubp_planar_ef(h) if h.n else None
    sizes["nesubp_H"] = inner.size() if inner is not None else 0
    nes = nesubp_deletion_ef(g, xs, inner)
    sizes["nesubp_G"] = nes.size()
    stp = stp_from_nesubp(g, nes)
    sizes["stp"] = stp.size()
    return stp, sizes


def bounded_genus_stp(
    g: Multigraph,
    genus: Optional[int] = None,
    removed: Optional[Sequence[int]] = None,
    strategy: Optional[PlanarizerStrategy] = None,
    rotation: Optional[RotationSystem] = None,
) -> tuple[ExtForm, SizeReport]:
    """Spanning-tree formulation through a planarizing set X.

    ``G - X`` gets the planar non-empty-subgraph formulation, the deletion
    union lifts it to ``G`` and the robust counterpart turns it into the
    spanning tree polytope.  ``genus`` is taken from ``rotation`` when given
    and only informs reporting and the default planarizer layer width.
    """
    if rotation is not None:
        genus = euler_genus(g, rotation)
    if removed is None:
        strat = strategy or PlanarizerStrategy(genus=genus)
        if strat.genus is None and genus is not None:
            strat = PlanarizerStrategy(strat.name, strat.seed, strat.layer_width, genus, strat.apex_set)
        removed = planarizing_set(g, strat)
    stp, sizes = _pipeline(g, removed)
    xs = sorted(set(removed))
    n, m = g.n, g.m
    bounds: dict[str, Any] = {}
    if genus is not None:
        bounds["genus_bound"] = math.sqrt(genus) * n ** 1.5 + genus ** 1.5 * math.sqrt(n)
        bounds["euler_edge_bound"] = 3 * n - 6 + 6 * genus if n >= 3 else max(n - 1, 0)
        bounds["euler_edge_bound_holds"] = m <= bounds["euler_edge_bound"]
        bounds["planarizer_scale"] = math.sqrt(max(genus, 1) * n)
    report = SizeReport("bounded_genus_stp", n, m, genus, xs, sizes, 2 * n * m, bounds)
    return _stamp(stp, "bounded_genus_stp", genus=genus, X=xs), report


def kapex_stp(g: Multigraph, apex: Sequence[int]) -> tuple[ExtForm, SizeReport]:
    """Same pipeline with a user-supplied apex set; reports the k-apex edge bound."""
    xs = sorted(set(apex))
    stp, sizes = _pipeline(g, xs)
    n, m, k = g.n, g.m, len(xs)
    formula = k * (n - 1) + 3 * (n - k) - 6
    # the planar term 3n'-6 undercounts for fewer than 3 planar vertices
    exact = k * (n - 1) + planar_edge_bound(n - k)
    bounds = {
        "k": k,
        "kapex_edge_formula": formula,
        "kapex_edge_formula_holds": m <= formula,
        "kapex_edge_bound": exact,
        "kapex_edge_bound_holds": m <= exact,
        "k_times_m": k * m,
    }
    report = SizeReport("kapex_stp", n, m, None, xs, sizes, 2 * n * m, bounds)
    return _stamp(stp, "kapex_stp", X=xs), report
