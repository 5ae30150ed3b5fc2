from __future__ import annotations

from dataclasses import replace
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, strategies as st
from scipy.optimize import linprog

from stpef.exactq import (
    CertificateError,
    LPProblem,
    LPSolution,
    Row,
    SimplexSolver,
    check_certificate,
    lp_feasible,
    lp_solve,
    parse_rational,
    to_str,
)
from stpef.formulations import martin_lift, martin_stp, subp_ef
from stpef.graph import complete_graph, enumerate_spanning_trees, kruskal_mst


def one_var(rows, eqs=(), c=(1,), sense="max"):
    return LPProblem(len(c), tuple(Fraction(v) for v in c), sense, tuple(rows), tuple(eqs))


def test_rational_strings():
    assert to_str(Fraction(3, 2)) == "3/2" and to_str(4) == "4/1" and to_str(Fraction(-1, 3)) == "-1/3"
    assert parse_rational("6/4") == Fraction(3, 2) and parse_rational(" -2 ") == -2
    with pytest.raises(TypeError):
        parse_rational(1.5)
    with pytest.raises(TypeError):
        parse_rational(True)


def test_max_with_fractional_bound():
    sol = lp_solve(one_var([Row.make({0: 1}, Fraction(3, 2))]))
    assert sol.status == "optimal" and sol.value == Fraction(3, 2)


def test_infeasible():
    sol = lp_solve(one_var([Row.make({0: -1}, -1), Row.make({0: 1}, 0)]))
    assert sol.status == "infeasible"


def test_unbounded():
    assert lp_solve(one_var([Row.make({0: -1}, 0)])).status == "unbounded"


def test_minimisation_sign_convention():
    sol = lp_solve(one_var([Row.make({0: -1}, 2), Row.make({0: 1}, 5)], sense="min"))
    assert sol.value == -2 and sol.x == (Fraction(-2),)


def test_martin_k4_matches_kruskal():
    g = complete_graph(4)
    w = [5, 1, 1, 1, 1, 5]
    form = martin_stp(g)
    sol = lp_solve(form.lp({f"x:{e}": c for e, c in enumerate(w)}, "min"))
    assert sol.value == 3 == kruskal_mst(g, w)[1]


def test_membership_examples():
    g = complete_graph(4)
    form = martin_stp(g)
    for tree in enumerate_spanning_trees(g):
        assert form.contains_lifted(martin_lift(g, tree))
    sub = subp_ef(g)
    assert sub.contains_lifted([0] * sub.num_vars)
    point = [0] * sub.num_vars
    point[0] = 2
    assert not sub.contains_lifted(point)
    with pytest.raises(ValueError):
        lp_feasible(2, [], [], [0])


def test_certificate_rejects_tampering():
    prob = one_var([Row.make({0: 1}, 3), Row.make({0: -1}, 0)])
    sol = lp_solve(prob)
    check_certificate(prob, sol)
    with pytest.raises(CertificateError):
        check_certificate(prob, replace(sol, value=Fraction(2)))
    with pytest.raises(CertificateError):
        check_certificate(prob, replace(sol, ineq_duals=(Fraction(2), Fraction(0))))
    with pytest.raises(CertificateError):
        check_certificate(prob, replace(sol, x=(Fraction(4),)))
    with pytest.raises(CertificateError):
        check_certificate(prob, replace(sol, ineq_duals=(Fraction(1), Fraction(-1))))


def test_problem_validation():
    with pytest.raises(ValueError):
        LPProblem(1, (Fraction(1),), "maximize")
    with pytest.raises(ValueError):
        LPProblem(2, (Fraction(1),))
    with pytest.raises(ValueError):
        LPProblem(1, (Fraction(1),), "max", (Row.make({3: 1}, 0),))


def test_big_coefficients_use_python_integers():
    big = 10**15
    rows = [Row.make({0: big, 1: 1}, big + 7), Row.make({0: -1}, 0), Row.make({1: -1}, 0), Row.make({0: 1, 1: -big}, 3)]
    solver = SimplexSolver(2, rows, [])
    solver.use_guide = False
    sol = solver.solve(LPProblem(2, (Fraction(1), Fraction(1)), "max", tuple(rows)))
    assert sol.status == "optimal" and solver.T.dtype == object


def test_warm_start_reuses_phase_one():
    form = martin_stp(complete_graph(4))
    solver = form.solver()
    solver.use_guide = False
    first = solver.optimize(form.linear({"x:0": 1}), "max")
    pivots = solver.total_pivots
    second = solver.optimize(form.linear({"x:0": 1}), "max")
    assert first.value == second.value == 1
    assert solver.total_pivots == pivots


def test_solutions_are_deterministic():
    form = martin_stp(complete_graph(4))
    prob = form.lp({"x:0": 2, "x:3": -1, "x:5": Fraction(1, 3)}, "min")
    for guide in (True, False):
        outs = []
        for _ in range(2):
            s = SimplexSolver(prob.num_vars, prob.inequalities, prob.equalities)
            s.use_guide = guide
            outs.append(s.solve(prob))
        assert outs[0] == outs[1]


small = st.integers(-4, 4)


@st.composite
def random_lps(draw):
    n = draw(st.integers(1, 4))
    rows = [Row.make({j: draw(small) for j in range(n)}, draw(st.integers(-3, 6))) for _ in range(draw(st.integers(0, 5)))]
    rows += [Row.make({j: 1}, draw(st.integers(0, 4))) for j in range(n)]
    rows += [Row.make({j: -1}, draw(st.integers(0, 4))) for j in range(n)]
    eqs = [Row.make({j: draw(small) for j in range(n)}, draw(st.integers(-2, 2))) for _ in range(draw(st.integers(0, 2)))]
    c = tuple(Fraction(draw(small), draw(st.integers(1, 3))) for _ in range(n))
    return LPProblem(n, c, draw(st.sampled_from(["max", "min"])), tuple(rows), tuple(eqs))


def dense(rows, n):
    return np.array([[float(dict(r.coeffs).get(j, 0)) for j in range(n)] for r in rows]) if rows else None


@given(random_lps(), st.booleans())
def test_agrees_with_highs(prob, guide):
    solver = SimplexSolver(prob.num_vars, prob.inequalities, prob.equalities)
    solver.use_guide = guide
    sol = solver.solve(prob)
    sign = 1 if prob.sense == "max" else -1
    res = linprog(
        -sign * np.array([float(v) for v in prob.objective]),
        A_ub=dense(prob.inequalities, prob.num_vars),
        b_ub=[float(r.rhs) for r in prob.inequalities] or None,
        A_eq=dense(prob.equalities, prob.num_vars),
        b_eq=[float(r.rhs) for r in prob.equalities] or None,
        bounds=(None, None),
        method="highs",
    )
    expected = {0: "optimal", 2: "infeasible", 3: "unbounded"}[res.status]
    assert sol.status == expected
    if expected == "optimal":
        assert abs(float(sol.value) + sign * res.fun) < 1e-7
        assert isinstance(sol, LPSolution) and all(isinstance(v, Fraction) for v in sol.x)


def test_complete_points_lifts_every_tree_of_k4():
    g = complete_graph(4)
    form = martin_stp(g)
    solver = SimplexSolver(form.num_vars, form.inequalities, form.equalities)
    trees = [tuple(int(e in set(t)) for e in range(g.m)) for t in enumerate_spanning_trees(g)]
    lifts = solver.complete_points(trees, batch=5)
    assert all(p is not None for p in lifts)
    for tree, point in zip(trees, lifts):
        assert point[: g.m] == tuple(Fraction(v) for v in tree)
        assert lp_feasible(form.num_vars, form.inequalities, form.equalities, point)


def test_complete_points_never_returns_infeasible_lifts():
    # x0 + y <= 1, y >= 0: prefix x0 = 2 has no completion
    solver = SimplexSolver(2, [Row.make({0: 1, 1: 1}, 1), Row.make({1: -1}, 0)], [])
    got = solver.complete_points([(0,), (2,), (Fraction(1, 2),)])
    assert got[1] is None
    assert got[0] is not None and got[2] is not None
    assert all(lp_feasible(2, solver.inequalities, (), p) for p in (got[0], got[2]))
    with pytest.raises(ValueError):
        solver.complete_points([(0,), (0, 1)])
