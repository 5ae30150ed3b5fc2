from __future__ import annotations

import math

import networkx as nx
import pytest
from hypothesis import given, strategies as st

from stpef.corpus import corpus
from stpef.graph import Multigraph, complete_bipartite, complete_graph, new_multigraph, torus_grid
from stpef.planar import (
    STRATEGIES,
    NonPlanarError,
    PlanarizerStrategy,
    is_planar,
    planar_without,
    planarizing_set,
)
from stpef.surface import embed


def test_k4_planar_with_four_faces():
    res = is_planar(complete_graph(4))
    assert res.planar and len(embed(complete_graph(4), res.embedding).faces) == 4


def test_k5_and_k33_not_planar():
    assert not is_planar(complete_graph(5)).planar
    assert not is_planar(complete_bipartite(3, 3)).planar


def test_c5xc5_not_planar():
    assert not is_planar(torus_grid(5)).planar


def test_disconnected_and_multigraph_inputs():
    g = new_multigraph(7, [(0, 1), (1, 2), (0, 2), (4, 5), (5, 6)])
    assert is_planar(g).planar
    multi = new_multigraph(3, [(0, 1), (0, 1), (1, 2), (2, 2)], simple=False)
    res = is_planar(multi)
    assert res.planar and embed(multi, res.embedding).genus == 0


@st.composite
def random_graphs(draw):
    n = draw(st.integers(1, 9))
    pairs = [(u, v) for u in range(n) for v in range(u + 1, n)]
    chosen = draw(st.lists(st.sampled_from(pairs), unique=True, max_size=len(pairs))) if pairs else []
    return Multigraph(n, tuple(sorted(chosen)))


def to_nx(g):
    h = nx.MultiGraph()
    h.add_nodes_from(range(g.n))
    h.add_edges_from(g.edges)
    return h


@given(random_graphs())
def test_planarity_agrees_with_networkx(g):
    res = is_planar(g)
    assert res.planar == nx.check_planarity(nx.Graph(to_nx(g)))[0]
    if res.planar and g.m and g.is_connected():
        assert embed(g, res.embedding).genus == 0


@given(random_graphs())
def test_euler_prefilter_consistency(g):
    if g.n >= 3 and g.m > 3 * g.n - 6:
        assert not is_planar(g).planar


def test_planarizing_examples():
    assert planarizing_set(complete_graph(4)) == ()
    assert len(planarizing_set(complete_graph(5))) == 1
    x = planarizing_set(torus_grid(5), PlanarizerStrategy("bfs-layers", genus=1))
    assert len(x) <= 5 and planar_without(torus_grid(5), x)


def test_removing_one_row_planarizes_c5xc5():
    assert planar_without(torus_grid(5), range(5))


@pytest.mark.parametrize("k", range(3, 13))
def test_bfs_layers_trend_on_torus_grids(k):
    g = torus_grid(k)
    x = planarizing_set(g, PlanarizerStrategy("bfs-layers", genus=1))
    assert planar_without(g, x)
    assert len(x) <= 2 * math.isqrt(1 * g.n)


@pytest.mark.parametrize("entry", corpus(), ids=lambda c: c.name)
@pytest.mark.parametrize("name", ["greedy-degree", "bfs-layers"])
def test_planarizers_sound_on_corpus(entry, name):
    x = planarizing_set(entry.graph, PlanarizerStrategy(name, genus=entry.genus))
    assert is_planar(entry.graph.delete_vertices(x)[0]).planar


def test_user_supplied_checks_planarity():
    g = complete_graph(5)
    assert planarizing_set(g, PlanarizerStrategy("user-supplied", apex_set=(4,))) == (4,)
    with pytest.raises(NonPlanarError):
        planarizing_set(complete_graph(6), PlanarizerStrategy("user-supplied", apex_set=(0,)))


def test_planarizer_deterministic_for_seed():
    g = torus_grid(6)
    a = planarizing_set(g, PlanarizerStrategy("bfs-layers", seed=3, genus=1))
    b = planarizing_set(g, PlanarizerStrategy("bfs-layers", seed=3, genus=1))
    assert a == b


def test_unknown_strategy():
    assert "user-supplied" in STRATEGIES
    with pytest.raises(ValueError):
        PlanarizerStrategy("random")
