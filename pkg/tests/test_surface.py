from __future__ import annotations

from collections import Counter

import pytest

from stpef.corpus import corpus, k5_torus_rotation
from stpef.graph import complete_graph, cube_graph, cycle_graph, new_multigraph, torus_grid
from stpef.planar import is_planar
from stpef.surface import (
    EmbeddingError,
    RotationSystem,
    dual_graph,
    embed,
    euler_genus,
    rotation_from_neighbor_order,
    torus_grid_rotation,
    trace_faces,
    validate_rotation,
)


def planar_embedding(g):
    res = is_planar(g)
    assert res.planar
    return embed(g, res.embedding)


def test_k4_planar_rotation_has_four_faces():
    g = complete_graph(4)
    emb = planar_embedding(g)
    assert len(emb.faces) == 4 and emb.genus == 0


def test_cube_has_six_faces():
    assert len(planar_embedding(cube_graph()).faces) == 6


def test_torus_grid_faces_are_squares():
    g = torus_grid(3)
    faces = trace_faces(g, torus_grid_rotation(3))
    assert len(faces) == 9 and all(len(f) == 4 for f in faces)
    assert euler_genus(g, torus_grid_rotation(3)) == 1


def test_k5_torus_rotation():
    g = complete_graph(5)
    rot = k5_torus_rotation()
    assert len(trace_faces(g, rot)) == 5
    assert euler_genus(g, rot) == 1


def test_cube_dual_is_octahedron():
    dual = dual_graph(planar_embedding(cube_graph()))
    assert dual.graph.n == 6 and dual.graph.m == 12
    assert all(dual.graph.degree(v) == 4 for v in range(6))
    assert dual.genus == 0


def test_bridge_dual_is_a_loop():
    g = new_multigraph(2, [(0, 1)])
    dual = dual_graph(embed(g, RotationSystem((((0, 0),), ((0, 1),)))))
    assert dual.graph.n == 1 and dual.graph.edges == ((0, 0),)


def test_triangle_dual_is_triple_edge():
    dual = dual_graph(planar_embedding(cycle_graph(3)))
    assert dual.graph.n == 2 and dual.graph.m == 3
    assert Counter(tuple(sorted(e)) for e in dual.graph.edges) == {(0, 1): 3}


PLANAR = [c for c in corpus() if c.planar and c.graph.m > 0]


@pytest.mark.parametrize("entry", PLANAR, ids=lambda c: c.name)
def test_dual_involution(entry):
    emb = planar_embedding(entry.graph)
    dual = dual_graph(emb)
    back = dual_graph(dual)
    assert back.graph.n == entry.graph.n and back.graph.m == entry.graph.m
    assert sorted(back.graph.degree(v) for v in range(back.graph.n)) == sorted(
        entry.graph.degree(v) for v in range(entry.graph.n)
    )
    # faces of the dual are the primal vertex rotations, so each double-dual
    # vertex is a primal vertex and each edge keeps its endpoints
    primal_vertex = {}
    for f, walk in enumerate(dual.faces):
        owners = {entry.graph.edges[e][end] for e, end in walk}
        assert len(owners) == 1
        primal_vertex[f] = owners.pop()
    for e in range(entry.graph.m):
        a, b = back.graph.edges[e]
        assert {primal_vertex[a], primal_vertex[b]} == set(entry.graph.edges[e])


ALL_EMBEDDED = [(c.name, c.graph, c.rotation) for c in corpus() if c.rotation is not None] + [
    (c.name, c.graph, is_planar(c.graph).embedding) for c in PLANAR
]


@pytest.mark.parametrize("name, g, rot", ALL_EMBEDDED, ids=[x[0] for x in ALL_EMBEDDED])
def test_dart_partition_and_parity(name, g, rot):
    faces = trace_faces(g, rot)
    assert sum(len(f) for f in faces) == 2 * g.m
    assert len({d for f in faces for d in f}) == 2 * g.m
    assert (g.n - g.m + len(faces)) % 2 == 0


def test_invalid_rotations_rejected():
    g = cycle_graph(3)
    good = is_planar(g).embedding
    with pytest.raises(EmbeddingError):
        validate_rotation(g, RotationSystem(good.order[:2]))
    missing = RotationSystem((good.order[0][:1],) + good.order[1:])
    with pytest.raises(EmbeddingError):
        trace_faces(g, missing)
    swapped = RotationSystem((good.order[1],) + (good.order[0],) + good.order[2:])
    with pytest.raises(EmbeddingError):
        validate_rotation(g, swapped)


def test_rotation_from_non_edge_rejected():
    with pytest.raises(EmbeddingError):
        rotation_from_neighbor_order(cycle_graph(4), [[1, 2], [0, 2], [1, 3], [2, 0]])


def test_rotation_json_lists_round_trip():
    rot = torus_grid_rotation(3)
    assert RotationSystem.from_lists(rot.to_lists()) == rot
