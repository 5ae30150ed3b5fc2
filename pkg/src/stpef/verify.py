"""Oracles that certify constructed formulations, plus the size benchmark.

Every check is exact: LP answers come with verified dual certificates and
are compared to combinatorial ground truth (Kruskal, enumeration) with
rational equality.  Reports carry no wall-clock data unless asked for, so
equal seeds give byte-identical JSON.
"""

from __future__ import annotations

import csv
import io
import json
import random
import time
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Callable, Iterable, Optional, Sequence

import numpy as np

from .exactq import Row, SimplexSolver, to_str
from .formulations import (
    bounded_genus_stp,
    martin_stp,
    s_label,
    f_label,
    subp_ef,
    williams_stp,
    x_label,
)
from .graph import (
    GraphError,
    Multigraph,
    complete_graph,
    enumerate_spanning_trees,
    kruskal_mst,
    planar_grid,
    torus_grid,
)
from .planar import is_planar
from .polyhedra import ExtForm, FormulationError
from .surface import planar_grid_rotation, torus_grid_rotation

REPORT_SCHEMA_VERSION = 1
EXACT_MAX_VERTICES = 12
NESUBP_MAX_VERTICES = 6
WEIGHT_RANGE = 1000
NESUBP_DIRECTIONS = 200
LIFT_BATCH = 256


class VerificationError(ValueError):
    """Oracle preconditions violated (guards, label mismatch)."""


@dataclass
class Check:
    name: str
    status: str
    lps: int = 0
    counterexample: Optional[dict[str, Any]] = None

    def to_json(self) -> dict[str, Any]:
        out: dict[str, Any] = {"name": self.name, "status": self.status, "lps": self.lps}
        if self.counterexample is not None:
            out["counterexample"] = self.counterexample
        return out


@dataclass
class VerificationReport:
    graph_id: str
    construction_id: str
    mode: str
    seed: int
    sizes: dict[str, int]
    checks: list[Check] = field(default_factory=list)
    timing: Optional[dict[str, float]] = None

    @property
    def passed(self) -> bool:
        return bool(self.checks) and all(c.status == "pass" for c in self.checks)

    @property
    def status(self) -> str:
        return "pass" if self.passed else "fail"

    def check(self, name: str) -> Check:
        for c in self.checks:
            if c.name == name:
                return c
        raise KeyError(name)

    def to_json(self, include_timing: bool = False) -> dict[str, Any]:
        out: dict[str, Any] = {
            "schema_version": REPORT_SCHEMA_VERSION,
            "kind": "verification_report",
            "graph_id": self.graph_id,
            "construction_id": self.construction_id,
            "mode": self.mode,
            "seed": self.seed,
            "status": self.status,
            "sizes": dict(self.sizes),
            "checks": [c.to_json() for c in self.checks],
        }
        if include_timing and self.timing is not None:
            out["timing"] = self.timing
        return out

    def dumps(self, include_timing: bool = False) -> str:
        return json.dumps(self.to_json(include_timing), indent=2, sort_keys=True) + "\n"


def _construction_id(form: ExtForm, given: Optional[str]) -> str:
    return given if given is not None else str(form.provenance.get("op", "unknown"))


def _sizes(form: ExtForm) -> dict[str, int]:
    return {"inequalities": form.size(), "equalities": len(form.equalities), "variables": form.num_vars}


def _require_labels(form: ExtForm, wanted: Sequence[str]) -> None:
    if tuple(form.labels) != tuple(wanted):
        raise VerificationError(
            f"formulation labels {list(form.labels[:4])}... do not match the graph ({len(wanted)} expected)"
        )


def _qstr(vals: Iterable[Fraction]) -> list[str]:
    return [to_str(v) for v in vals]


class _Oracle:
    """Shared solver over one formulation; counts LPs per check."""

    def __init__(self, form: ExtForm) -> None:
        self.form = form
        self.solver = form.solver()
        self.count = 0

    def solve(self, weights: dict[str, Fraction | int], sense: str):
        self.count += 1
        return self.solver.optimize(self.form.linear(weights), sense)

    def contains_point(self, point: dict[str, Fraction | int]) -> bool:
        """Whether ``point`` lies in the projection.

        Maximises ``sum (2 p_i - 1) x_i``; for a 0/1 point this is uniquely
        optimal at ``p`` over any 0/1 polytope, so an optimal lifted solution
        that restricts to ``p`` is a witness.  Otherwise fall back to a
        feasibility solve with ``x`` fixed.
        """
        direction = {lab: 2 * Fraction(v) - 1 for lab, v in point.items()}
        sol = self.solve(direction, "max")
        if sol.status == "optimal":
            dim = self.form.dim
            if all(sol.x[i] == Fraction(point[lab]) for i, lab in enumerate(self.form.labels[:dim])):
                return True
        self.count += 1
        return self.form.projection_contains(point)


def _x_of(form: ExtForm, sol) -> list[Fraction]:
    return list(sol.x[: form.dim])


# ---------------------------------------------------------------------------
# spanning tree oracles
# ---------------------------------------------------------------------------


def verify_stp_exact(
    form: ExtForm,
    g: Multigraph,
    graph_id: str = "",
    construction_id: Optional[str] = None,
    seed: int = 0,
    lift: Optional[Callable[[Sequence[int]], Sequence[Fraction]]] = None,
) -> VerificationReport:
    """Complete equality check of ``proj(form)`` against the spanning tree polytope.

    Containment in the polytope follows from the subtour, non-negativity and
    cardinality checks; the reverse from feasibility of every tree vector.
    ``lift`` may supply a full lifted point per tree, which is checked row by
    row before falling back to an LP.
    """
    if g.n > EXACT_MAX_VERTICES:
        raise VerificationError(f"exact verification is limited to {EXACT_MAX_VERTICES} vertices, got {g.n}")
    if g.n == 0 or not g.is_connected():
        raise GraphError("spanning tree polytope requires a connected graph")
    _require_labels(form, [x_label(e) for e in range(g.m)])
    started = time.perf_counter()
    report = VerificationReport(graph_id, _construction_id(form, construction_id), "exact", seed, _sizes(form))
    oracle = _Oracle(form)
    n, m = g.n, g.m

    check = Check("trees_feasible", "pass")
    oracle.count = 0
    pending = []
    for tree in enumerate_spanning_trees(g):
        if lift is not None and form.contains_lifted(lift(tree)):
            continue
        chosen = set(tree)
        pending.append((tree, tuple(int(e in chosen) for e in range(m))))
    lifts = oracle.solver.complete_points([vec for _, vec in pending], LIFT_BATCH)
    oracle.count = oracle.solver.batch_solves
    for (tree, vec), lifted in zip(pending, lifts):
        if lifted is not None:
            continue
        point = {x_label(e): v for e, v in enumerate(vec)}
        if not oracle.contains_point(point):
            check.status = "fail"
            check.counterexample = {"tree": list(tree)}
            break
    check.lps = oracle.count
    report.checks.append(check)

    check = Check("subtour", "pass")
    oracle.count = 0
    for mask in range(1, 1 << n):
        inside = [v for v in range(n) if mask >> v & 1]
        members = set(inside)
        edges = [e for e, (u, v) in enumerate(g.edges) if u in members and v in members]
        sol = oracle.solve({x_label(e): 1 for e in edges}, "max")
        bound = len(inside) - 1
        if sol.status != "optimal" or sol.value > bound:
            check.status = "fail"
            check.counterexample = {
                "vertex_set": inside,
                "lp_status": sol.status,
                "value": to_str(sol.value) if sol.value is not None else None,
                "bound": bound,
                "x": _qstr(_x_of(form, sol)) if sol.x is not None else None,
            }
            break
    check.lps = oracle.count
    report.checks.append(check)

    check = Check("nonnegative", "pass")
    oracle.count = 0
    for e in range(m):
        sol = oracle.solve({x_label(e): 1}, "min")
        if sol.status != "optimal" or sol.value < 0:
            check.status = "fail"
            check.counterexample = {
                "edge": e,
                "lp_status": sol.status,
                "value": to_str(sol.value) if sol.value is not None else None,
            }
            break
    check.lps = oracle.count
    report.checks.append(check)

    check = Check("cardinality", "pass")
    oracle.count = 0
    total = {x_label(e): 1 for e in range(m)}
    for sense in ("max", "min"):
        sol = oracle.solve(total, sense)
        if sol.status != "optimal" or sol.value != n - 1:
            check.status = "fail"
            check.counterexample = {
                "sense": sense,
                "lp_status": sol.status,
                "value": to_str(sol.value) if sol.value is not None else None,
                "expected": n - 1,
            }
            break
    check.lps = oracle.count
    report.checks.append(check)
    report.timing = {"seconds": time.perf_counter() - started}
    return report


def trial_weights(m: int, seed: int, trial: int) -> list[int]:
    """Integer weights in ``[-1000, 1000]`` for one trial; depends only on ``(seed, trial)``."""
    rng = random.Random(f"stpef-weights:{seed}:{trial}")
    return [rng.randint(-WEIGHT_RANGE, WEIGHT_RANGE) for _ in range(m)]


def verify_stp_sampled(
    form: ExtForm,
    g: Multigraph,
    trials: int = 100,
    seed: int = 0,
    graph_id: str = "",
    construction_id: Optional[str] = None,
) -> VerificationReport:
    """LP minimum over ``form`` equals the Kruskal weight for seeded weightings."""
    if g.n == 0 or not g.is_connected():
        raise GraphError("spanning tree polytope requires a connected graph")
    if trials < 0:
        raise VerificationError("trial count must be non-negative")
    _require_labels(form, [x_label(e) for e in range(g.m)])
    started = time.perf_counter()
    report = VerificationReport(graph_id, _construction_id(form, construction_id), "sampled", seed, _sizes(form))
    oracle = _Oracle(form)
    check = Check("kruskal_agreement", "pass")
    for t in range(trials):
        w = trial_weights(g.m, seed, t)
        sol = oracle.solve({x_label(e): c for e, c in enumerate(w)}, "min")
        _, best = kruskal_mst(g, w)
        if sol.status != "optimal" or sol.value != best:
            check.status = "fail"
            check.counterexample = {
                "trial": t,
                "weights": w,
                "lp_status": sol.status,
                "lp_value": to_str(sol.value) if sol.value is not None else None,
                "kruskal_value": to_str(best),
            }
            break
    check.lps = oracle.count
    report.checks.append(check)
    report.timing = {"seconds": time.perf_counter() - started}
    return report


# ---------------------------------------------------------------------------
# non-empty subgraph oracle
# ---------------------------------------------------------------------------


def nesubp_vertices(g: Multigraph) -> list[tuple[int, ...]]:
    """All ``(chi_S, chi_F)`` with ``S`` non-empty and ``F`` inside ``E(S)``."""
    out = []
    for mask in range(1, 1 << g.n):
        inside = [e for e, (u, v) in enumerate(g.edges) if mask >> u & 1 and mask >> v & 1]
        s_part = tuple(mask >> v & 1 for v in range(g.n))
        for pick in range(1 << len(inside)):
            chosen = {inside[i] for i in range(len(inside)) if pick >> i & 1}
            out.append(s_part + tuple(int(e in chosen) for e in range(g.m)))
    return out


def direction_vector(dim: int, seed: int, index: int) -> list[int]:
    rng = random.Random(f"stpef-direction:{seed}:{index}")
    return [rng.randint(-WEIGHT_RANGE, WEIGHT_RANGE) for _ in range(dim)]


def verify_nesubp(
    form: ExtForm,
    g: Multigraph,
    seed: int = 0,
    directions: int = NESUBP_DIRECTIONS,
    graph_id: str = "",
    construction_id: Optional[str] = None,
) -> VerificationReport:
    """Compare ``proj(form)`` with the non-empty subgraph polytope by enumeration."""
    if g.n > NESUBP_MAX_VERTICES:
        raise VerificationError(f"nesubp verification is limited to {NESUBP_MAX_VERTICES} vertices, got {g.n}")
    labels = [s_label(v) for v in range(g.n)] + [f_label(e) for e in range(g.m)]
    _require_labels(form, labels)
    started = time.perf_counter()
    report = VerificationReport(graph_id, _construction_id(form, construction_id), "nesubp", seed, _sizes(form))
    report.sizes["vertices"] = 0
    oracle = _Oracle(form)
    verts = nesubp_vertices(g)
    report.sizes["vertices"] = len(verts)
    vert_matrix = np.array(verts, dtype=np.int64)

    check = Check("vertices_feasible", "pass")
    oracle.count = 0
    lifts = oracle.solver.complete_points(verts, LIFT_BATCH)
    oracle.count = oracle.solver.batch_solves
    for vert, lifted in zip(verts, lifts):
        if lifted is not None:
            continue
        if not oracle.contains_point(dict(zip(labels, vert))):
            check.status = "fail"
            check.counterexample = {"point": list(vert)}
            break
    check.lps = oracle.count
    report.checks.append(check)

    check = Check("origin_excluded", "pass", lps=1)
    if form.projection_contains({lab: 0 for lab in labels}):
        check.status = "fail"
        check.counterexample = {"point": [0] * len(labels)}
    report.checks.append(check)

    check = Check("support_function", "pass")
    oracle.count = 0
    for t in range(directions):
        c = direction_vector(len(labels), seed, t)
        best = int((vert_matrix @ np.array(c, dtype=np.int64)).max())
        sol = oracle.solve(dict(zip(labels, c)), "max")
        if sol.status != "optimal" or sol.value != best:
            check.status = "fail"
            check.counterexample = {
                "direction_index": t,
                "direction": c,
                "lp_status": sol.status,
                "lp_value": to_str(sol.value) if sol.value is not None else None,
                "enumerated_max": best,
            }
            break
    check.lps = oracle.count
    report.checks.append(check)
    report.timing = {"seconds": time.perf_counter() - started}
    return report


# ---------------------------------------------------------------------------
# mutations
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Mutation:
    kind: str
    row: int
    column: Optional[int]
    old: Fraction
    new: Fraction

    def to_json(self) -> dict[str, Any]:
        return {"kind": self.kind, "row": self.row, "column": self.column, "old": to_str(self.old), "new": to_str(self.new)}


def mutate(form: ExtForm, seed: int) -> tuple[ExtForm, Mutation]:
    """Change one coefficient (or right-hand side) of one inequality row.

    The row, the entry and the change are drawn from ``seed``; the result is
    a formulation of identical shape that differs in a single number.
    """
    if not form.inequalities:
        raise FormulationError("nothing to mutate: no inequality rows")
    rng = random.Random(f"stpef-mutation:{seed}")
    k = rng.randrange(len(form.inequalities))
    row = form.inequalities[k]
    delta = Fraction(rng.choice((-1, 1)))
    if rng.random() < 0.5 or not row.coeffs:
        new_row = Row(row.coeffs, row.rhs + delta)
        mut = Mutation("rhs", k, None, row.rhs, row.rhs + delta)
    else:
        pos = rng.randrange(len(row.coeffs))
        col, old = row.coeffs[pos]
        new_row = Row.make([(i, c + delta if i == col else c) for i, c in row.coeffs], row.rhs)
        mut = Mutation("coefficient", k, col, old, old + delta)
    rows = form.inequalities[:k] + (new_row,) + form.inequalities[k + 1 :]
    prov = {"op": "mutation", "params": mut.to_json(), "size": form.size(), "children": [form.provenance]}
    return ExtForm(form.labels, form.aux_labels, rows, form.equalities, prov), mut


# ---------------------------------------------------------------------------
# benchmark
# ---------------------------------------------------------------------------

FAMILIES = ("torus-grid", "planar-grid", "complete")
BENCH_METHODS = ("martin", "williams", "subp", "genus")


def family_instance(family: str, k: int):
    """``(graph, rotation or None, genus or None)`` for one family member."""
    if family == "torus-grid":
        if k < 3:
            raise GraphError("torus grids need k >= 3")
        return torus_grid(k), torus_grid_rotation(k), 1
    if family == "planar-grid":
        if k < 2:
            raise GraphError("planar grids need k >= 2")
        g = planar_grid(k)
        return g, planar_grid_rotation(g, k), 0
    if family == "complete":
        if k < 1:
            raise GraphError("complete graphs need k >= 1")
        g = complete_graph(k)
        return g, None, 0 if k <= 4 else None
    raise VerificationError(f"unknown family {family!r}; choose from {', '.join(FAMILIES)}")


def bench_family(
    family: str,
    kmin: int,
    kmax: int,
    methods: Sequence[str] = ("martin", "genus"),
    seed: int = 0,
    timing: bool = False,
) -> list[dict[str, Any]]:
    """Build every requested formulation per instance and tabulate sizes (no LPs)."""
    if family not in FAMILIES:
        raise VerificationError(f"unknown family {family!r}; choose from {', '.join(FAMILIES)}")
    for meth in methods:
        if meth not in BENCH_METHODS:
            raise VerificationError(f"unknown method {meth!r}; choose from {', '.join(BENCH_METHODS)}")
    rows: list[dict[str, Any]] = []
    for k in range(kmin, kmax + 1):
        g, rot, genus = family_instance(family, k)
        row: dict[str, Any] = {"family": family, "k": k, "n": g.n, "m": g.m, "genus": genus, "apex_size": ""}
        for meth in methods:
            started = time.perf_counter()
            size: Any = ""
            if meth == "martin":
                size = martin_stp(g).size()
            elif meth == "subp":
                size = subp_ef(g).size()
            elif meth == "williams":
                if rot is not None and genus == 0:
                    size = williams_stp(g, rot).size()
                elif is_planar(g):
                    size = williams_stp(g).size()
            elif meth == "genus":
                form, rep = bounded_genus_stp(g, genus=genus, rotation=rot if genus else None)
                size = form.size()
                row["apex_size"] = rep.apex_size
                row["genus_per_k3"] = f"{size / k ** 3:.4f}" if k else ""
            row[f"{meth}_size"] = size
            if timing:
                row[f"{meth}_seconds"] = round(time.perf_counter() - started, 3)
        if "martin" in methods:
            row["martin_formula"] = 2 * g.n * g.m
        rows.append(row)
    return rows


def bench_columns(methods: Sequence[str], timing: bool = False) -> list[str]:
    cols = ["family", "k", "n", "m", "genus", "apex_size"]
    for meth in methods:
        cols.append(f"{meth}_size")
        if timing:
            cols.append(f"{meth}_seconds")
    if "genus" in methods:
        cols.append("genus_per_k3")
    if "martin" in methods:
        cols.append("martin_formula")
    return cols


def bench_summary(rows: Sequence[dict[str, Any]]) -> dict[str, Any]:
    """Largest ``genus_size / k^3`` and the first k from which genus beats Martin."""
    ratio = max((Fraction(r["genus_size"], r["k"] ** 3) for r in rows if r.get("genus_size") not in (None, "")), default=None)
    crossover = None
    paired = [r for r in rows if r.get("genus_size") not in (None, "") and r.get("martin_size") not in (None, "")]
    for i, r in enumerate(paired):
        if all(q["genus_size"] < q["martin_size"] for q in paired[i:]):
            crossover = r["k"]
            break
    return {
        "max_genus_per_k3": None if ratio is None else to_str(ratio),
        "crossover_k": crossover,
    }


def bench_csv(rows: Sequence[dict[str, Any]], methods: Sequence[str], timing: bool = False) -> str:
    buf = io.StringIO()
    writer = csv.DictWriter(buf, fieldnames=bench_columns(methods, timing), extrasaction="ignore", lineterminator="\n")
    writer.writeheader()
    for r in rows:
        writer.writerow(r)
    return buf.getvalue()
