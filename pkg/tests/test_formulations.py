from __future__ import annotations

import itertools
import random
from fractions import Fraction

import pytest

from stpef import formulations as fm
from stpef.corpus import corpus, corpus_graph
from stpef.exactq import lp_solve
from stpef.graph import (
    GraphError,
    complete_graph,
    cube_graph,
    cycle_graph,
    enumerate_spanning_trees,
    kruskal_mst,
    new_multigraph,
    torus_grid,
)
from stpef.planar import NonPlanarError, is_planar
from stpef.surface import torus_grid_rotation
from stpef.verify import nesubp_vertices, verify_nesubp, verify_stp_exact, verify_stp_sampled


def lp_min(form, g, w):
    return lp_solve(form.lp({fm.x_label(e): c for e, c in enumerate(w)}, "min")).value


NO_ISOLATED = [c for c in corpus() if all(c.graph.degree(v) for v in range(c.graph.n))]


@pytest.mark.parametrize("entry", NO_ISOLATED, ids=lambda c: c.name)
def test_size_formulas_on_corpus(entry):
    g = entry.graph
    assert fm.subp_ef(g).size() == 3 * g.m + g.n
    assert fm.martin_stp(g).size() == 2 * g.n * g.m
    if entry.planar:
        assert fm.williams_stp(g).size() == 4 * g.m


def test_size_examples():
    k4 = complete_graph(4)
    assert fm.subp_ef(k4).size() == 22
    assert fm.martin_stp(k4).size() == 48
    assert fm.williams_stp(k4).size() == 24
    assert fm.martin_stp(cycle_graph(3)).size() == 18


def test_subp_isolated_vertex_gets_lower_bound():
    g = new_multigraph(2, [])
    assert fm.subp_ef(g).size() == 2 + 2


def test_martin_k4_sampled_100():
    g = complete_graph(4)
    assert verify_stp_sampled(fm.martin_stp(g), g, 100, seed=0).passed


@pytest.mark.parametrize("entry", [c for c in corpus() if c.graph.n <= 8], ids=lambda c: c.name)
def test_martin_lift_feasible_for_every_tree(entry):
    g = entry.graph
    form = fm.martin_stp(g)
    for tree in enumerate_spanning_trees(g)[:200]:
        assert form.contains_lifted(fm.martin_lift(g, tree))


@pytest.mark.parametrize("entry", [c for c in corpus() if c.planar and c.graph.n <= 9], ids=lambda c: c.name)
def test_williams_lift_feasible_for_every_tree(entry):
    g = entry.graph
    layout = fm.williams_layout(g)
    form = fm.williams_stp(g)
    for tree in enumerate_spanning_trees(g)[:200]:
        assert form.contains_lifted(fm.williams_lift(g, tree, layout))


def test_williams_examples():
    c3 = cycle_graph(3)
    assert lp_min(fm.williams_stp(c3), c3, [1, 2, 3]) == 3
    assert verify_stp_exact(fm.williams_stp(cube_graph()), cube_graph()).passed


def test_williams_rejects_non_planar():
    with pytest.raises(NonPlanarError, match="non-planar"):
        fm.williams_stp(complete_graph(5))
    with pytest.raises(NonPlanarError):
        fm.williams_stp(torus_grid(3), torus_grid_rotation(3))


def test_williams_root_face_must_touch_root():
    g = cube_graph()
    emb_faces = fm.williams_layout(g).embedding
    far = [f for f in range(len(emb_faces.faces)) if 0 not in emb_faces.face_vertices(f)]
    with pytest.raises(GraphError):
        fm.williams_stp(g, root_face=far[0])


def test_disconnected_inputs_rejected():
    g = new_multigraph(4, [(0, 1), (2, 3)])
    for build in (fm.martin_stp, fm.williams_stp):
        with pytest.raises(GraphError):
            build(g)


def test_forest_examples():
    k2 = new_multigraph(2, [(0, 1)])
    f = fm.forest_ef(k2)
    assert lp_solve(f.lp({"x:0": 1}, "max")).value == 1
    assert lp_solve(f.lp({"x:0": 1}, "min")).value == 0
    c3 = fm.forest_ef(cycle_graph(3))
    for bits in itertools.product((0, 1), repeat=3):
        assert c3.projection_contains({fm.x_label(e): b for e, b in enumerate(bits)}) == (sum(bits) < 3)
    two = fm.forest_ef(new_multigraph(4, [(0, 1), (2, 3)]))
    for bits in itertools.product((0, 1), repeat=2):
        assert two.projection_contains({"x:0": bits[0], "x:1": bits[1]})
    assert not two.projection_contains({"x:0": 2, "x:1": 0})


def test_forest_size_formula():
    g = cube_graph()
    assert fm.forest_ef(g).size() == 4 * g.m + 2 * g.m


def test_nesubp_k2_vertices():
    g = new_multigraph(2, [(0, 1)])
    form = fm.nesubp_planar_ef(g)
    report = verify_nesubp(form, g)
    assert report.passed and report.sizes["vertices"] == 4
    assert sorted(nesubp_vertices(g)) == [(0, 1, 0), (1, 0, 0), (1, 1, 0), (1, 1, 1)]


def test_nesubp_two_isolated_vertices():
    g = new_multigraph(2, [])
    form = fm.nesubp_planar_ef(g)
    assert verify_nesubp(form, g).passed
    assert form.projection_contains({"s:0": 1, "s:1": 0})
    assert not form.projection_contains({"s:0": Fraction(1, 3), "s:1": Fraction(1, 3)})


def test_nesubp_p3_midpoint():
    g = new_multigraph(3, [(0, 1), (1, 2)])
    form = fm.nesubp_planar_ef(g)
    half = Fraction(1, 2)
    assert form.projection_contains({"s:0": half, "s:1": 1, "s:2": half, "f:0": half, "f:1": half})
    assert len(nesubp_vertices(g)) == 12


def test_deletion_with_empty_x_keeps_projection():
    g = cycle_graph(3)
    assert verify_nesubp(fm.nesubp_deletion_ef(g, []), g).passed


def test_deletion_lifts_k4_part_into_k5():
    g = complete_graph(5)
    form = fm.nesubp_deletion_ef(g, [4])
    h, _, _ = g.delete_vertices([4])
    labels = [fm.s_label(v) for v in range(5)] + [fm.f_label(e) for e in range(g.m)]
    for vert in nesubp_vertices(h)[::7]:
        s_part, f_part = vert[:4], vert[4:]
        point = dict(zip(labels, list(s_part) + [0] + [0] * g.m))
        for i, e in enumerate(e for e, (u, v) in enumerate(g.edges) if 4 not in (u, v)):
            point[fm.f_label(e)] = f_part[i]
        assert form.projection_contains(point)


def test_stp_from_nesubp_examples():
    k2 = new_multigraph(2, [(0, 1)])
    stp = fm.stp_from_nesubp(k2, fm.nesubp_planar_ef(k2))
    assert lp_solve(stp.lp({"x:0": 1}, "min")).value == 1
    c3 = cycle_graph(3)
    stp3 = fm.stp_from_nesubp(c3, fm.nesubp_planar_ef(c3))
    assert lp_min(stp3, c3, [1, 2, 3]) == 3
    assert verify_stp_exact(stp3, c3).passed
    assert stp3.size() == fm.nesubp_planar_ef(c3).size() + 1 + c3.m


def test_bounded_genus_k5():
    g = complete_graph(5)
    form, rep = fm.bounded_genus_stp(g)
    assert rep.apex_size == 1
    assert verify_stp_exact(form, g).passed
    assert rep.sizes["stp"] == form.size()


def test_bounded_genus_planar_degenerate_path():
    g = cube_graph()
    form, rep = fm.bounded_genus_stp(g, genus=0)
    assert rep.apex_set == []
    other, _ = fm.kapex_stp(g, [])
    assert other.size() == form.size()
    rng = random.Random(1)
    for _ in range(5):
        w = [rng.randint(-9, 9) for _ in range(g.m)]
        assert lp_min(form, g, w) == kruskal_mst(g, w)[1]


def test_bounded_genus_report_bounds_on_torus():
    g = torus_grid(4)
    _, rep = fm.bounded_genus_stp(g, rotation=torus_grid_rotation(4))
    assert rep.genus == 1 and rep.bounds["euler_edge_bound_holds"]
    assert rep.martin_size == 2 * g.n * g.m


def test_kapex_examples():
    g = complete_graph(5)
    form, rep = fm.kapex_stp(g, [4])
    assert rep.bounds["k"] == 1 and rep.bounds["kapex_edge_bound_holds"]
    assert rep.bounds["kapex_edge_formula"] == 1 * 4 + 3 * 4 - 6
    assert verify_stp_exact(form, g).passed
    wa = corpus_graph("W6+apex")
    form, rep = fm.kapex_stp(wa.graph, wa.apex)
    assert verify_stp_sampled(form, wa.graph, 100, seed=0).passed
    with pytest.raises(NonPlanarError):
        fm.kapex_stp(complete_graph(6), [0])


def test_kapex_bound_correction_for_tiny_planar_part():
    _, rep = fm.kapex_stp(cycle_graph(3), [0])
    assert not rep.bounds["kapex_edge_formula_holds"]
    assert rep.bounds["kapex_edge_bound_holds"]


def test_size_report_json():
    _, rep = fm.bounded_genus_stp(complete_graph(5))
    data = rep.to_json()
    assert data["kind"] == "size_report" and data["apex_size"] == 1
    assert set(data["sizes"]) == {"subp_H", "forest_H", "nesubp_H", "nesubp_G", "stp"}


def test_pipelines_reject_multigraphs():
    g = new_multigraph(2, [(0, 1), (0, 1)], simple=False)
    with pytest.raises(GraphError):
        fm.bounded_genus_stp(g)


def test_non_planar_component_of_h_uses_martin_and_warns():
    form = fm.forest_ef(complete_graph(5))
    assert form.provenance["params"]["warnings"]
