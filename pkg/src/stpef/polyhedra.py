"""Extended formulations and the operations that compose them.

An :class:`ExtForm` is a system ``A x + B y <= b, C x + D y = c`` over a
labelled original block ``x`` and an auxiliary block ``y``; its size is the
number of inequality rows.  Every constructor here is syntactic: rows are
copied, shifted and homogenised, never simplified, so sizes are exactly
predictable.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Iterable, Mapping, Optional, Sequence

from .exactq import LPProblem, Row, SimplexSolver, lp_feasible, parse_rational, to_str

SCHEMA_VERSION = 1

LinearForm = Mapping[str, Fraction | int]


class FormulationError(ValueError):
    """Incompatible variable spaces or violated constructor preconditions."""


@dataclass(frozen=True, eq=False)
class ExtForm:
    labels: tuple[str, ...]
    aux_labels: tuple[str, ...] = ()
    inequalities: tuple[Row, ...] = ()
    equalities: tuple[Row, ...] = ()
    provenance: dict[str, Any] = field(default_factory=dict)

    def __post_init__(self) -> None:
        if len(set(self.labels)) != len(self.labels):
            raise FormulationError("duplicate original-variable labels")
        nv = self.num_vars
        for row in self.inequalities + self.equalities:
            if row.coeffs and row.coeffs[-1][0] >= nv:
                raise FormulationError("row refers to a column beyond the variable count")

    @property
    def dim(self) -> int:
        return len(self.labels)

    @property
    def num_vars(self) -> int:
        return len(self.labels) + len(self.aux_labels)

    def size(self) -> int:
        return len(self.inequalities)

    def index(self) -> dict[str, int]:
        return {lab: i for i, lab in enumerate(self.labels)}

    def linear(self, form: LinearForm) -> list[Fraction]:
        """Dense objective over all columns from a form on original labels."""
        idx = self.index()
        out = [Fraction(0)] * self.num_vars
        for lab, c in form.items():
            if lab not in idx:
                raise FormulationError(f"unknown label {lab!r}")
            out[idx[lab]] += Fraction(c)
        return out

    def lp(self, form: LinearForm, sense: str = "max") -> LPProblem:
        return LPProblem(self.num_vars, tuple(self.linear(form)), sense, self.inequalities, self.equalities)

    def solver(self) -> SimplexSolver:
        return SimplexSolver(self.num_vars, self.inequalities, self.equalities)

    def contains_lifted(self, point: Sequence[Fraction | int]) -> bool:
        """Membership of a full ``(x, y)`` point in the system."""
        return lp_feasible(self.num_vars, self.inequalities, self.equalities, point)

    def projection_contains(self, x: Mapping[str, Fraction | int]) -> bool:
        """Whether some ``y`` completes ``x``; one exact feasibility solve."""
        idx = self.index()
        if set(x) != set(self.labels):
            raise FormulationError("point must give a value for every original label")
        fixed = [Row.make({idx[lab]: 1}, v) for lab, v in x.items()]
        return SimplexSolver(self.num_vars, self.inequalities, self.equalities + tuple(fixed)).feasible()

    # -- serialization --------------------------------------------------------

    def to_json(self) -> dict[str, Any]:
        def rows(rs: Iterable[Row]) -> list[dict[str, Any]]:
            return [{"coeffs": [[i, to_str(c)] for i, c in r.coeffs], "rhs": to_str(r.rhs)} for r in rs]

        return {
            "schema_version": SCHEMA_VERSION,
            "kind": "extended_formulation",
            "labels": list(self.labels),
            "aux_labels": list(self.aux_labels),
            "size": self.size(),
            "inequalities": rows(self.inequalities),
            "equalities": rows(self.equalities),
            "provenance": self.provenance,
        }

    @classmethod
    def from_json(cls, data: Mapping[str, Any]) -> "ExtForm":
        allowed = {"schema_version", "kind", "labels", "aux_labels", "size", "inequalities", "equalities", "provenance"}
        unknown = set(data) - allowed
        if unknown:
            raise FormulationError(f"unknown fields in formulation JSON: {sorted(unknown)}")
        if data.get("schema_version") != SCHEMA_VERSION or data.get("kind") != "extended_formulation":
            raise FormulationError("not an extended formulation of a supported schema version")

        def rows(raw: Iterable[Mapping[str, Any]]) -> tuple[Row, ...]:
            out = []
            for r in raw:
                if set(r) != {"coeffs", "rhs"}:
                    raise FormulationError("rows must have exactly 'coeffs' and 'rhs'")
                out.append(Row.make([(int(i), parse_rational(c)) for i, c in r["coeffs"]], parse_rational(r["rhs"])))
            return tuple(out)

        form = cls(
            tuple(data["labels"]),
            tuple(data.get("aux_labels", ())),
            rows(data["inequalities"]),
            rows(data["equalities"]),
            dict(data.get("provenance", {})),
        )
        if "size" in data and data["size"] != form.size():
            raise FormulationError(f"declared size {data['size']} differs from {form.size()} inequality rows")
        return form


def _prov(op: str, form_size: int, children: Sequence[ExtForm] = (), **params: Any) -> dict[str, Any]:
    return {
        "op": op,
        "params": params,
        "size": form_size,
        "children": [c.provenance for c in children],
    }


def _remap(row: Row, colmap: Sequence[int]) -> Row:
    return Row(tuple(sorted((colmap[i], c) for i, c in row.coeffs)), row.rhs)


def _rows_over(labels: Sequence[str], rows: Iterable[tuple[LinearForm, Fraction | int]]) -> list[Row]:
    idx = {lab: i for i, lab in enumerate(labels)}
    out = []
    for form, rhs in rows:
        unknown = set(form) - set(idx)
        if unknown:
            raise FormulationError(f"constraint uses unknown labels {sorted(unknown)}")
        out.append(Row.make({idx[lab]: c for lab, c in form.items()}, rhs))
    return out


def size(form: ExtForm) -> int:
    return form.size()


def from_rows(
    labels: Sequence[str],
    inequalities: Iterable[tuple[LinearForm, Fraction | int]] = (),
    equalities: Iterable[tuple[LinearForm, Fraction | int]] = (),
    op: str = "rows",
    **params: Any,
) -> ExtForm:
    """Formulation without auxiliaries, rows given as ``(form, rhs)`` pairs."""
    ineq = tuple(_rows_over(labels, inequalities))
    eq = tuple(_rows_over(labels, equalities))
    return ExtForm(tuple(labels), (), ineq, eq, _prov(op, len(ineq), **params))


def face_restrict(form: ExtForm, equalities: Iterable[tuple[LinearForm, Fraction | int]]) -> ExtForm:
    """Add equalities on original variables; size is unchanged."""
    extra = tuple(_rows_over(form.labels, equalities))
    return ExtForm(
        form.labels, form.aux_labels, form.inequalities, form.equalities + extra,
        _prov("face_restrict", form.size(), [form], equalities=len(extra)),
    )


def add_inequalities(form: ExtForm, inequalities: Iterable[tuple[LinearForm, Fraction | int]], note: str = "") -> ExtForm:
    extra = tuple(_rows_over(form.labels, inequalities))
    return ExtForm(
        form.labels, form.aux_labels, form.inequalities + extra, form.equalities,
        _prov("add_inequalities", form.size() + len(extra), [form], added=len(extra), note=note),
    )


def relabel(form: ExtForm, mapping: Mapping[str, str]) -> ExtForm:
    labels = tuple(mapping.get(lab, lab) for lab in form.labels)
    return ExtForm(labels, form.aux_labels, form.inequalities, form.equalities,
                   _prov("relabel", form.size(), [form]))


def intersect(first: ExtForm, second: ExtForm) -> ExtForm:
    """Both systems over the same original labels; auxiliaries are kept apart."""
    if set(first.labels) != set(second.labels):
        raise FormulationError("intersection needs identical original label sets")
    idx = first.index()
    nx, na1 = first.dim, len(first.aux_labels)
    colmap = [idx[lab] for lab in second.labels] + [nx + na1 + k for k in range(len(second.aux_labels))]
    ineq = first.inequalities + tuple(_remap(r, colmap) for r in second.inequalities)
    eq = first.equalities + tuple(_remap(r, colmap) for r in second.equalities)
    aux = first.aux_labels + tuple(f"b.{a}" for a in second.aux_labels)
    return ExtForm(first.labels, aux, ineq, eq, _prov("intersect", len(ineq), [first, second]))


def product(first: ExtForm, second: ExtForm) -> ExtForm:
    """Cartesian product over disjoint label sets; sizes add."""
    clash = set(first.labels) & set(second.labels)
    if clash:
        raise FormulationError(f"product needs disjoint labels, shared: {sorted(clash)[:5]}")
    n1, n2 = first.dim, second.dim
    a1, a2 = len(first.aux_labels), len(second.aux_labels)
    map1 = list(range(n1)) + [n1 + n2 + k for k in range(a1)]
    map2 = [n1 + j for j in range(n2)] + [n1 + n2 + a1 + k for k in range(a2)]
    ineq = tuple(_remap(r, map1) for r in first.inequalities) + tuple(_remap(r, map2) for r in second.inequalities)
    eq = tuple(_remap(r, map1) for r in first.equalities) + tuple(_remap(r, map2) for r in second.equalities)
    aux = tuple(f"l.{a}" for a in first.aux_labels) + tuple(f"r.{a}" for a in second.aux_labels)
    return ExtForm(first.labels + second.labels, aux, ineq, eq, _prov("product", len(ineq), [first, second]))


def embed_zero(form: ExtForm, target: Sequence[str]) -> ExtForm:
    """Place ``form`` in a larger coordinate space with the new coordinates fixed to 0."""
    target = tuple(target)
    tidx = {lab: i for i, lab in enumerate(target)}
    if len(tidx) != len(target):
        raise FormulationError("duplicate target labels")
    missing = [lab for lab in form.labels if lab not in tidx]
    if missing:
        raise FormulationError(f"labels {missing[:5]} are not in the target space")
    nt = len(target)
    colmap = [tidx[lab] for lab in form.labels] + [nt + k for k in range(len(form.aux_labels))]
    own = set(form.labels)
    zeros = tuple(Row.make({tidx[lab]: 1}, 0) for lab in target if lab not in own)
    return ExtForm(
        target, form.aux_labels,
        tuple(_remap(r, colmap) for r in form.inequalities),
        tuple(_remap(r, colmap) for r in form.equalities) + zeros,
        _prov("embed_zero", form.size(), [form], fixed_to_zero=len(zeros)),
    )


def balas_union(parts: Sequence[ExtForm]) -> ExtForm:
    """Convex hull of the union of the parts' projections.

    ``x = sum(x_i)``, ``sum(lam_i) = 1``, ``lam_i >= 0`` and each part's rows
    homogenised against ``lam_i``.  Size is ``sum(size(part)) + len(parts)``.
    Parts must be non-empty polytopes; empty pieces are the caller's to drop.
    """
    if not parts:
        raise FormulationError("balas_union needs at least one part")
    labels = parts[0].labels
    for p in parts[1:]:
        if set(p.labels) != set(labels):
            raise FormulationError("balas_union parts must share the original label set")
    nx = len(labels)
    base = {lab: i for i, lab in enumerate(labels)}
    aux: list[str] = []
    ineq: list[Row] = []
    eq: list[Row] = []
    link: dict[int, dict[int, int]] = {i: {i: 1} for i in range(nx)}
    lambdas: list[int] = []
    for pi, part in enumerate(parts):
        # the copy keeps the part's own column order: its labels, then its aux
        start = nx + len(aux)
        own_map = [start + k for k in range(part.num_vars)]
        aux.extend(f"p{pi}.{lab}" for lab in part.labels)
        aux.extend(f"p{pi}.{a}" for a in part.aux_labels)
        lam = nx + len(aux)
        aux.append(f"lambda{pi}")
        lambdas.append(lam)
        for r in part.inequalities:
            coeffs = [(own_map[i], c) for i, c in r.coeffs]
            ineq.append(Row.make(coeffs + [(lam, -r.rhs)], 0))
        for r in part.equalities:
            coeffs = [(own_map[i], c) for i, c in r.coeffs]
            eq.append(Row.make(coeffs + [(lam, -r.rhs)], 0))
        for j, lab in enumerate(part.labels):
            link[base[lab]][start + j] = -1
    eq.extend(Row.make(link[i], 0) for i in range(nx))
    eq.append(Row.make({lam: 1 for lam in lambdas}, 1))
    ineq.extend(Row.make({lam: -1}, 0) for lam in lambdas)
    return ExtForm(
        tuple(labels), tuple(aux), tuple(ineq), tuple(eq),
        _prov("balas_union", len(ineq), parts, parts=len(parts)),
    )


def monotonize(form: ExtForm) -> ExtForm:
    """``{x : exists z in proj(form), 0 <= x <= z}``; adds ``2 * dim`` rows."""
    nx = form.dim
    aux = tuple(f"z.{lab}" for lab in form.labels) + form.aux_labels
    colmap = [nx + j for j in range(form.num_vars)]
    ineq = [_remap(r, colmap) for r in form.inequalities]
    ineq += [Row.make({j: -1}, 0) for j in range(nx)]
    ineq += [Row.make({j: 1, nx + j: -1}, 0) for j in range(nx)]
    eq = [_remap(r, colmap) for r in form.equalities]
    return ExtForm(form.labels, aux, tuple(ineq), tuple(eq), _prov("monotonize", len(ineq), [form]))


def robust_counterpart(
    inner: ExtForm,
    outer_labels: Sequence[str],
    pairing: Mapping[str, LinearForm],
    offset: Mapping[str, Fraction | int],
    outer_form: LinearForm,
    beta: Fraction | int,
) -> ExtForm:
    """Outer set ``{x : max_{q in proj(inner)} q . (M x + m0) <= a . x + beta}``.

    ``pairing[q][o]`` is ``M[q, o]``, ``offset[q]`` is ``m0[q]`` and
    ``outer_form`` is ``a``.  The inner maximisation is replaced by its LP
    dual: multipliers ``lam >= 0`` per inner inequality and free ``mu`` per
    inner equality with ``A^T lam + C^T mu = M x + m0`` on the inner original
    block, ``B^T lam + D^T mu = 0`` on the inner auxiliary block and
    ``b . lam + c . mu <= a . x + beta``.  The inner formulation must be a
    non-empty polytope; size is ``size(inner) + 1``.
    """
    outer_labels = tuple(outer_labels)
    oidx = {lab: i for i, lab in enumerate(outer_labels)}
    qidx = inner.index()
    for q, row in pairing.items():
        if q not in qidx:
            raise FormulationError(f"pairing names unknown inner label {q!r}")
        if set(row) - set(oidx):
            raise FormulationError(f"pairing row {q!r} names unknown outer labels")
    if set(offset) - set(qidx):
        raise FormulationError("offset names unknown inner labels")
    if set(outer_form) - set(oidx):
        raise FormulationError("outer form names unknown outer labels")
    no = len(outer_labels)
    n_lam = len(inner.inequalities)
    lam0, mu0 = no, no + n_lam
    columns: list[dict[int, Fraction]] = [dict() for _ in range(inner.num_vars)]
    for r, row in enumerate(inner.inequalities):
        for j, c in row.coeffs:
            columns[j][lam0 + r] = columns[j].get(lam0 + r, Fraction(0)) + c
    for s, row in enumerate(inner.equalities):
        for j, c in row.coeffs:
            columns[j][mu0 + s] = columns[j].get(mu0 + s, Fraction(0)) + c
    eq: list[Row] = []
    for j in range(inner.num_vars):
        coeffs = dict(columns[j])
        rhs: Fraction | int = 0
        if j < inner.dim:
            q = inner.labels[j]
            for o, c in pairing.get(q, {}).items():
                coeffs[oidx[o]] = coeffs.get(oidx[o], Fraction(0)) - Fraction(c)
            rhs = offset.get(q, 0)
        eq.append(Row.make(coeffs, rhs))
    value: dict[int, Fraction] = {}
    for r, row in enumerate(inner.inequalities):
        value[lam0 + r] = row.rhs
    for s, row in enumerate(inner.equalities):
        value[mu0 + s] = row.rhs
    for o, c in outer_form.items():
        value[oidx[o]] = value.get(oidx[o], Fraction(0)) - Fraction(c)
    ineq = [Row.make(value, beta)]
    ineq += [Row.make({lam0 + r: -1}, 0) for r in range(n_lam)]
    aux = tuple(f"lam{r}" for r in range(n_lam)) + tuple(f"mu{s}" for s in range(len(inner.equalities)))
    return ExtForm(
        outer_labels, aux, tuple(ineq), tuple(eq),
        _prov("robust_counterpart", len(ineq), [inner], beta=to_str(Fraction(beta))),
    )
