from __future__ import annotations

import csv
import io
import json

import pytest

from stpef import formulations as fm
from stpef.graph import GraphError, complete_graph, cycle_graph, new_multigraph, petersen_graph, torus_grid
from stpef.polyhedra import ExtForm, relabel
from stpef.verify import (
    VerificationError,
    bench_csv,
    bench_family,
    bench_summary,
    mutate,
    trial_weights,
    verify_nesubp,
    verify_stp_exact,
    verify_stp_sampled,
)


def test_martin_k4_exact_passes_with_15_subtour_lps():
    g = complete_graph(4)
    rep = verify_stp_exact(fm.martin_stp(g), g, graph_id="K4")
    assert rep.passed and rep.check("subtour").lps == 15


def test_subp_as_stp_fails_cardinality():
    g = complete_graph(4)
    sub = fm.subp_ef(g)
    # keep only the edge block as the claimed spanning-tree coordinates
    claim = relabel(sub, {fm.f_label(e): fm.x_label(e) for e in range(g.m)})
    order = [fm.x_label(e) for e in range(g.m)]
    moved = ExtForm(tuple(order), tuple(fm.s_label(v) for v in range(g.n)),
                    tuple(_swap(r, g) for r in claim.inequalities), (), claim.provenance)
    rep = verify_stp_exact(moved, g)
    assert not rep.passed
    card = rep.check("cardinality")
    assert card.status == "fail"
    assert card.counterexample["sense"] == "max" and card.counterexample["value"] == "6/1"


def _swap(row, g):
    from stpef.exactq import Row

    n, m = g.n, g.m
    remap = {v: m + v for v in range(n)} | {n + e: e for e in range(m)}
    return Row.make([(remap[i], c) for i, c in row.coeffs], row.rhs)


def test_williams_c3_exact_uses_7_subtour_lps():
    g = cycle_graph(3)
    rep = verify_stp_exact(fm.williams_stp(g), g)
    assert rep.passed and rep.check("subtour").lps == 7


def test_sampled_examples():
    g = petersen_graph()
    assert verify_stp_sampled(fm.martin_stp(g), g, 100, seed=0).passed
    t = torus_grid(3)
    form, _ = fm.bounded_genus_stp(t)
    assert verify_stp_sampled(form, t, 100, seed=0).passed


def test_corrupted_rhs_recorded():
    g = complete_graph(4)
    form = fm.martin_stp(g)
    bad, mutation = mutate(form, 0)
    assert bad.size() == form.size()
    differences = [
        (a, b) for a, b in zip(form.inequalities, bad.inequalities) if a != b
    ]
    assert len(differences) == 1 and mutation.row == form.inequalities.index(differences[0][0])


def test_detected_mutation_has_counterexample():
    g = complete_graph(4)
    form = fm.martin_stp(g)
    for seed in range(40):
        bad, _ = mutate(form, seed)
        rep = verify_stp_sampled(bad, g, 30, seed=0)
        if not rep.passed:
            cex = rep.checks[0].counterexample
            assert cex is not None and len(cex["weights"]) == g.m
            return
    pytest.fail("no mutation detected")


def test_nesubp_examples():
    k2 = new_multigraph(2, [(0, 1)])
    assert verify_nesubp(fm.nesubp_planar_ef(k2), k2).passed
    p3 = new_multigraph(3, [(0, 1), (1, 2)])
    assert verify_nesubp(fm.nesubp_planar_ef(p3), p3).passed
    rep = verify_nesubp(fm.subp_ef(k2), k2)
    assert not rep.passed and rep.check("origin_excluded").status == "fail"
    assert rep.check("vertices_feasible").status == "pass"


def test_guards():
    with pytest.raises(VerificationError):
        verify_stp_exact(fm.martin_stp(complete_graph(13)), complete_graph(13))
    with pytest.raises(VerificationError):
        verify_nesubp(fm.nesubp_planar_ef(cycle_graph(7)), cycle_graph(7))
    with pytest.raises(GraphError):
        verify_stp_sampled(fm.subp_ef(new_multigraph(2, [])), new_multigraph(2, []), 1)
    with pytest.raises(VerificationError):
        verify_stp_exact(fm.martin_stp(cycle_graph(4)), cycle_graph(3))


def test_reports_are_byte_identical():
    g = complete_graph(4)
    form = fm.williams_stp(g)
    a = verify_stp_sampled(form, g, 20, seed=5).dumps()
    b = verify_stp_sampled(fm.williams_stp(g), g, 20, seed=5).dumps()
    assert a == b and "timing" not in json.loads(a)
    assert "timing" in json.loads(verify_stp_sampled(form, g, 2, seed=5).dumps(include_timing=True))


def test_trial_weights_depend_only_on_seed_and_index():
    assert trial_weights(5, 3, 7) == trial_weights(5, 3, 7)
    assert trial_weights(5, 3, 7) != trial_weights(5, 3, 8)
    assert all(-1000 <= w <= 1000 for w in trial_weights(50, 1, 1))


def test_bench_torus_martin_column():
    rows = bench_family("torus-grid", 3, 5, ["martin", "genus"])
    assert [r["martin_size"] for r in rows] == [4 * k ** 4 for k in (3, 4, 5)]
    summary = bench_summary(rows)
    assert summary["crossover_k"] == 3


def test_bench_complete_and_planar_grid():
    rows = bench_family("complete", 5, 8, ["martin"])
    assert [r["martin_size"] for r in rows] == [2 * k * k * (k - 1) // 2 for k in range(5, 9)]
    assert rows[0]["martin_size"] == 100
    rows = bench_family("planar-grid", 2, 5, ["williams"])
    assert [r["williams_size"] for r in rows] == [4 * (2 * k * k - 2 * k) for k in range(2, 6)]


def test_bench_empty_range_and_unknown_family():
    assert bench_family("torus-grid", 5, 3) == []
    text = bench_csv([], ["martin", "genus"])
    assert list(csv.reader(io.StringIO(text)))[0][:2] == ["family", "k"]
    with pytest.raises(VerificationError):
        bench_family("hypercube", 3, 4)


def test_bench_has_no_timing_unless_requested():
    rows = bench_family("complete", 4, 4, ["martin"])
    assert not any(k.endswith("seconds") for k in rows[0])
    rows = bench_family("complete", 4, 4, ["martin"], timing=True)
    assert "martin_seconds" in rows[0]
