"""Exact rational arithmetic helpers and an exact two-phase simplex solver.

Scalars are :class:`fractions.Fraction`.  The solver keeps an
integer-preserving tableau (every entry is the true value times a common
denominator, updated by Edmonds' division-exact pivot), stored as an int64
numpy array while entries stay small and as Python ints otherwise.  Every
optimal answer carries dual multipliers and is certificate-checked in exact
arithmetic before it is returned.

Large systems are first handed to HiGHS; its floating point primal and dual
solutions are snapped to nearby small-denominator rationals and accepted only
if they pass the same exact certificate check.  Anything that fails falls
back to the exact tableau, so floating point never decides an answer.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, Optional, Sequence

import numpy as np
from scipy import sparse
from scipy.optimize import linprog

Rational = Fraction

_INT64_SAFE = 1 << 30
_MAX_PIVOTS = 2_000_000
BLAND_AFTER = 50
GUIDE_DENOMINATOR = 1 << 12


def to_str(q: Fraction | int) -> str:
    """Serialize as ``"p/q"`` (always with a denominator)."""
    q = Fraction(q)
    return f"{q.numerator}/{q.denominator}"


def parse_rational(s: str | int) -> Fraction:
    if isinstance(s, bool):
        raise TypeError("booleans are not rationals")
    if isinstance(s, int):
        return Fraction(s)
    if not isinstance(s, str):
        raise TypeError(f"rational must be a string 'p/q', got {type(s).__name__}")
    return Fraction(s.strip())


@dataclass(frozen=True)
class Row:
    """Sparse linear row ``sum(c * v[i] for i, c in coeffs)`` against ``rhs``."""

    coeffs: tuple[tuple[int, Fraction], ...]
    rhs: Fraction

    @classmethod
    def make(cls, coeffs: Mapping[int, Fraction | int] | Iterable[tuple[int, Fraction | int]], rhs: Fraction | int = 0) -> "Row":
        acc: dict[int, Fraction] = {}
        items = coeffs.items() if isinstance(coeffs, Mapping) else coeffs
        for i, c in items:
            acc[i] = acc.get(i, Fraction(0)) + Fraction(c)
        return cls(tuple(sorted((i, c) for i, c in acc.items() if c != 0)), Fraction(rhs))

    def dot(self, point: Sequence[Fraction]) -> Fraction:
        return sum((c * point[i] for i, c in self.coeffs), Fraction(0))

    def shifted(self, offset: int) -> "Row":
        return Row(tuple((i + offset, c) for i, c in self.coeffs), self.rhs)


@dataclass(frozen=True)
class LPProblem:
    num_vars: int
    objective: tuple[Fraction, ...]
    sense: str = "max"
    inequalities: tuple[Row, ...] = ()
    equalities: tuple[Row, ...] = ()

    def __post_init__(self) -> None:
        if self.sense not in ("max", "min"):
            raise ValueError(f"sense must be 'max' or 'min', got {self.sense!r}")
        if len(self.objective) != self.num_vars:
            raise ValueError("objective length differs from variable count")
        for row in self.inequalities + self.equalities:
            if row.coeffs and not (0 <= row.coeffs[0][0] and row.coeffs[-1][0] < self.num_vars):
                raise ValueError("row refers to a variable out of range")


@dataclass(frozen=True)
class LPSolution:
    """Outcome of a solve.

    For an optimal solution the multipliers certify the maximisation of
    ``sign * objective`` (``sign = -1`` for minimisation): ``ineq_duals >= 0``,
    ``ineq_duals @ A + eq_duals @ C == sign * c`` and
    ``ineq_duals @ b + eq_duals @ d == sign * value``.
    """

    status: str
    x: Optional[tuple[Fraction, ...]] = None
    ineq_duals: Optional[tuple[Fraction, ...]] = None
    eq_duals: Optional[tuple[Fraction, ...]] = None
    value: Optional[Fraction] = None
    pivots: int = 0


class CertificateError(AssertionError):
    """An optimal answer failed its exact certificate check (solver defect)."""


def lp_feasible(
    num_vars: int, inequalities: Sequence[Row], equalities: Sequence[Row], point: Sequence[Fraction | int]
) -> bool:
    """Exact membership of ``point`` in the system (not its projection)."""
    if len(point) != num_vars:
        raise ValueError(f"point has {len(point)} coordinates, system has {num_vars} variables")
    pt = [Fraction(v) for v in point]
    return all(r.dot(pt) <= r.rhs for r in inequalities) and all(r.dot(pt) == r.rhs for r in equalities)


def check_certificate(problem: LPProblem, sol: LPSolution) -> None:
    """Raise :class:`CertificateError` unless ``sol`` is provably optimal."""
    if sol.status != "optimal":
        return
    x = sol.x
    assert x is not None and sol.ineq_duals is not None and sol.eq_duals is not None
    if not lp_feasible(problem.num_vars, problem.inequalities, problem.equalities, x):
        raise CertificateError("primal point infeasible")
    sign = 1 if problem.sense == "max" else -1
    if any(lam < 0 for lam in sol.ineq_duals):
        raise CertificateError("negative inequality multiplier")
    combo = [Fraction(0)] * problem.num_vars
    dual_value = Fraction(0)
    for rows, duals in ((problem.inequalities, sol.ineq_duals), (problem.equalities, sol.eq_duals)):
        for row, y in zip(rows, duals):
            if y:
                for i, c in row.coeffs:
                    combo[i] += y * c
                dual_value += y * row.rhs
    if any(combo[i] != sign * problem.objective[i] for i in range(problem.num_vars)):
        raise CertificateError("multipliers do not reproduce the objective")
    primal_value = sum((c * v for c, v in zip(problem.objective, x) if c), Fraction(0))
    if primal_value != sol.value or dual_value != sign * primal_value:
        raise CertificateError("primal and dual objective values differ")


def _lcm_of_denominators(values: Iterable[Fraction]) -> int:
    out = 1
    for v in values:
        den = v.denominator
        if den != 1:
            out = out * den // math.gcd(out, den)
    return out


def _snapper():
    """Float to nearby small-denominator rational, memoised per solve."""
    cache: dict[float, Fraction] = {}

    def snap(v: float) -> Fraction:
        v = float(v)
        q = cache.get(v)
        if q is None:
            q = Fraction(round(v)) if abs(v - round(v)) < 1e-9 else Fraction(v).limit_denominator(GUIDE_DENOMINATOR)
            cache[v] = q
        return q

    return snap


class SimplexSolver:
    """Exact simplex over a fixed feasible region, re-usable across objectives.

    Phase 1 runs once; every :meth:`optimize` call restarts phase 2 from the
    last basis.  Entering columns follow Dantzig's rule until a degenerate
    pivot occurs, after which Bland's rule is used until the objective moves
    again, which rules out cycling.  Leaving rows are chosen by minimum ratio
    with ties going to the smallest basic column.
    """

    def __init__(self, num_vars: int, inequalities: Sequence[Row], equalities: Sequence[Row]) -> None:
        self.num_vars = num_vars
        self.inequalities = tuple(inequalities)
        self.equalities = tuple(equalities)
        self.total_pivots = 0
        self.bland_after = BLAND_AFTER
        self._feasible: Optional[bool] = None
        self.use_guide = True
        self.guided_hits = 0
        self._guide_data: Optional[tuple] = None
        self._phase_one_done = False
        self.batch_solves = 0
        self._build()

    # -- setup ---------------------------------------------------------------

    def _build(self) -> None:
        n = self.num_vars
        self.bound_row_of: dict[int, tuple[int, Fraction]] = {}
        general_ineq: list[int] = []
        for k, row in enumerate(self.inequalities):
            if len(row.coeffs) == 1 and row.coeffs[0][1] < 0 and row.rhs == 0:
                j, a = row.coeffs[0]
                if j not in self.bound_row_of:
                    self.bound_row_of[j] = (k, -a)
                    continue
            general_ineq.append(k)
        self.general_ineq = general_ineq

        col_plus: list[int] = []
        col_minus: list[int] = []
        ncol = 0
        for j in range(n):
            col_plus.append(ncol)
            ncol += 1
            if j in self.bound_row_of:
                col_minus.append(-1)
            else:
                col_minus.append(ncol)
                ncol += 1
        self.col_plus, self.col_minus = col_plus, col_minus
        n_struct = ncol

        rows: list[tuple[Row, bool]] = [(self.inequalities[k], True) for k in general_ineq]
        rows += [(r, False) for r in self.equalities]
        nrows = len(rows)
        n_slack = len(general_ineq)
        slack_start = n_struct
        # artificials are appended after slacks for rows that need them
        int_rows: list[dict[int, int]] = []
        rhs: list[int] = []
        mult: list[Fraction] = []
        identity_col: list[int] = []
        needs_art: list[int] = []
        for i, (row, is_ineq) in enumerate(rows):
            scale = _lcm_of_denominators([c for _, c in row.coeffs] + [row.rhs])
            sign = -1 if row.rhs < 0 else 1
            coeffs: dict[int, int] = {}
            for j, c in row.coeffs:
                v = int(c * scale) * sign
                coeffs[col_plus[j]] = coeffs.get(col_plus[j], 0) + v
                if col_minus[j] >= 0:
                    coeffs[col_minus[j]] = coeffs.get(col_minus[j], 0) - v
            if is_ineq:
                coeffs[slack_start + i] = sign
            int_rows.append(coeffs)
            rhs.append(int(row.rhs * scale) * sign)
            mult.append(Fraction(scale * sign))
            if is_ineq and sign == 1:
                identity_col.append(slack_start + i)
            else:
                identity_col.append(-1)
                needs_art.append(i)
        art_start = slack_start + n_slack
        for a, i in enumerate(needs_art):
            identity_col[i] = art_start + a
            int_rows[i][art_start + a] = 1
        ncols = art_start + len(needs_art)

        self.nrows, self.ncols = nrows, ncols
        self.n_struct, self.art_start = n_struct, art_start
        self.row_mult = mult
        self.identity_col = identity_col
        self.row_is_ineq = [is_ineq for _, is_ineq in rows]

        big = max([abs(v) for r in int_rows for v in r.values()] + [abs(v) for v in rhs] + [1])
        dtype = np.int64 if big < _INT64_SAFE else object
        T = np.zeros((nrows + 1, ncols + 1), dtype=dtype)
        for i, coeffs in enumerate(int_rows):
            for j, v in coeffs.items():
                T[i, j] = v
            T[i, ncols] = rhs[i]
        self.T = T
        self.d = 1
        self.maxabs = big
        self.basis = list(identity_col)
        self.enterable = np.zeros(ncols, dtype=bool)
        self.enterable[:art_start] = True

    # -- core pivoting -------------------------------------------------------

    def _ensure_capacity(self, extra: int = 1) -> None:
        if self.T.dtype != object and (self.maxabs >= _INT64_SAFE or extra >= _INT64_SAFE):
            self.T = self.T.astype(object)

    def _pivot(self, r: int, s: int) -> None:
        self._ensure_capacity()
        T = self.T
        p = T[r, s]
        if p < 0:
            T[r] = -T[r]
            p = -p
        d = self.d
        col = T[:, s].copy()
        col[r] = 0
        pivot_row = T[r]
        if p == d:
            rows = np.nonzero(col)[0]
            if len(rows):
                block = (p * T[rows] - np.outer(col[rows], pivot_row)) // d
                T[rows] = block
                if T.dtype != object:
                    self.maxabs = max(self.maxabs, int(np.abs(block).max()))
        else:
            keep = pivot_row.copy()
            T[:] = (p * T - np.outer(col, pivot_row)) // d
            T[r] = keep
            if T.dtype != object:
                self.maxabs = int(np.abs(T).max())
        self.d = int(p) if T.dtype != object else p
        self.basis[r] = s
        self.total_pivots += 1

    def _ratio_row(self, s: int, bland: bool) -> tuple[int, bool]:
        T = self.T
        colv = T[: self.nrows, s]
        cand = np.nonzero(colv > 0)[0]
        if len(cand) == 0:
            return -1, False
        rhs = T[: self.nrows, -1]
        best = -1
        bn = bd = 0
        for i in cand.tolist():
            num, den = int(rhs[i]), int(colv[i])
            if best < 0:
                best, bn, bd = i, num, den
                continue
            lhs, rhs_cmp = num * bd, bn * den
            if lhs < rhs_cmp or (lhs == rhs_cmp and self.basis[i] < self.basis[best]):
                best, bn, bd = i, num, den
        return best, bn == 0

    def _run(self) -> str:
        T = self.T
        streak = 0
        steps = 0
        while True:
            T = self.T
            obj = T[self.nrows, : self.ncols]
            cand = np.nonzero((obj < 0) & self.enterable)[0]
            if len(cand) == 0:
                return "optimal"
            bland = streak >= self.bland_after
            if bland:
                s = int(cand[0])
            else:
                s = int(cand[np.argmin(obj[cand])])
            r, degenerate = self._ratio_row(s, bland)
            streak = streak + 1 if degenerate else 0
            if r < 0:
                return "unbounded"
            self._pivot(r, s)
            steps += 1
            if steps > _MAX_PIVOTS:
                raise RuntimeError("simplex pivot limit exceeded")

    def _install_objective(self, costs: dict[int, int]) -> None:
        """Objective row ``d * (c_B B^-1 A - c)`` for column costs ``costs``."""
        T = self.T
        nr = self.nrows
        cb = [(i, costs.get(self.basis[i], 0)) for i in range(nr)]
        cb = [(i, c) for i, c in cb if c]
        cmax = max([abs(c) for c in costs.values()] + [1])
        use_int = T.dtype != object and cmax * self.maxabs * (len(cb) + 1) * 2 < (1 << 62)
        if use_int:
            row = np.zeros(self.ncols + 1, dtype=np.int64)
            if cb:
                idx = np.array([i for i, _ in cb])
                w = np.array([c for _, c in cb], dtype=np.int64)
                row = w @ T[idx]
            row = row.copy()
            for j, c in costs.items():
                row[j] -= self.d * c
            self.maxabs = max(self.maxabs, int(np.abs(row).max()))
        else:
            row = np.zeros(self.ncols + 1, dtype=object)
            for i, c in cb:
                row = row + c * T[i].astype(object)
            for j, c in costs.items():
                row[j] -= self.d * c
            if T.dtype != object:
                self.T = T = T.astype(object)
            self.maxabs = max(self.maxabs, max(abs(int(v)) for v in row))
        self._ensure_capacity()
        self.T[nr] = row

    # -- phases --------------------------------------------------------------

    def feasible(self) -> bool:
        if self._feasible is None and self.use_guide and self._guided(None, 1) is not None:
            self._feasible = True
        if self._feasible is None:
            self._phase_one()
        return bool(self._feasible)

    def _phase_one(self) -> None:
        if self._phase_one_done:
            return
        self._phase_one_done = True
        arts = {j: -1 for j in range(self.art_start, self.ncols)}
        if arts:
            self._install_objective(arts)
            self._run()
            if self.T[self.nrows, -1] != 0:
                self._feasible = False
                return
            for i in range(self.nrows):
                if self.basis[i] < self.art_start:
                    continue
                nz = np.nonzero(self.T[i, : self.art_start])[0]
                if len(nz):
                    self._pivot(i, int(nz[0]))
        self._feasible = True

    # -- floating point guidance -----------------------------------------------

    def _guide_matrices(self) -> tuple:
        """Float matrices for HiGHS plus integer-scaled copies for exact checks."""
        if self._guide_data is None:
            def build(rows: Sequence[Row]):
                data, idata, ri, ci, rhs, irhs = [], [], [], [], [], []
                for i, row in enumerate(rows):
                    scale = _lcm_of_denominators([c for _, c in row.coeffs] + [row.rhs])
                    for j, c in row.coeffs:
                        ri.append(i)
                        ci.append(j)
                        data.append(float(c))
                        idata.append(int(c * scale))
                    rhs.append(float(row.rhs))
                    irhs.append(int(row.rhs * scale))
                shape = (len(rows), self.num_vars)
                fmat = sparse.csr_matrix((data, (ri, ci)), shape=shape)
                big = max([abs(v) for v in idata] + [abs(v) for v in irhs] + [1])
                imat = sparse.csr_matrix((np.array(idata, dtype=np.int64), (ri, ci)), shape=shape) if big < _INT64_SAFE else None
                scales = [_lcm_of_denominators([c for _, c in r.coeffs] + [r.rhs]) for r in rows]
                return fmat, np.array(rhs), imat, irhs, scales

            a_ub, b_ub, ia_ub, ib_ub, sc_ub = build(self.inequalities)
            a_eq, b_eq, ia_eq, ib_eq, sc_eq = build(self.equalities)
            self._guide_data = (a_ub, b_ub, a_eq, b_eq, ia_ub, ib_ub, ia_eq, ib_eq, sc_ub + sc_eq)
        return self._guide_data

    def _integer_certificate(self, x: Sequence[Fraction], ineq: Sequence[Fraction], eq: Sequence[Fraction],
                             c: Optional[Sequence[Fraction]]) -> Optional[bool]:
        """Exact certificate check in scaled integer arithmetic.

        Returns ``None`` when the numbers are too large for the int64 fast
        path (the caller then uses :func:`check_certificate`).  For ``c`` None
        only primal feasibility is checked.
        """
        _, _, _, _, ia_ub, ib_ub, ia_eq, ib_eq, scales = self._guide_matrices()
        if (self.inequalities and ia_ub is None) or (self.equalities and ia_eq is None):
            return None
        den = _lcm_of_denominators(x)
        xs = [v.numerator * (den // v.denominator) for v in x]
        if max([abs(v) for v in xs] + [1]) >= _INT64_SAFE or den >= _INT64_SAFE:
            return None
        xv = np.array(xs, dtype=np.int64)
        if self.inequalities and np.any(ia_ub @ xv > np.array(ib_ub, dtype=np.int64) * den):
            return False
        if self.equalities and np.any(ia_eq @ xv != np.array(ib_eq, dtype=np.int64) * den):
            return False
        if c is None:
            return True
        # multipliers of the integer-scaled rows
        z = [y / sc if y else y for y, sc in zip(list(ineq) + list(eq), scales)]
        zden = _lcm_of_denominators(v for v in itertools.chain(z, c) if v)
        zi = [v.numerator * (zden // v.denominator) if v else 0 for v in z]
        ci = [v.numerator * (zden // v.denominator) if v else 0 for v in c]
        if max([abs(v) for v in zi + ci] + [1]) >= _INT64_SAFE or zden >= _INT64_SAFE:
            return None
        n_ub = len(self.inequalities)
        combo = np.zeros(self.num_vars, dtype=np.int64)
        if n_ub:
            combo += ia_ub.T @ np.array(zi[:n_ub], dtype=np.int64)
        if self.equalities:
            combo += ia_eq.T @ np.array(zi[n_ub:], dtype=np.int64)
        if np.any(combo != np.array(ci, dtype=np.int64)):
            return False
        # dual value b.z against primal value c.x, both scaled by zden * den
        dual_value = sum(b * v for b, v in zip(list(ib_ub) + list(ib_eq), zi) if v) * den
        primal_value = sum(cv * xv_ for cv, xv_ in zip(ci, xs) if cv)
        return dual_value == primal_value

    def _guided(self, c: Optional[list[Fraction]], sign: int) -> Optional[LPSolution]:
        """Solve with HiGHS and snap to rationals; ``None`` unless exactly certified.

        ``c`` is the objective already multiplied by ``sign``; ``None`` asks for
        any feasible point.
        """
        a_ub, b_ub, a_eq, b_eq = self._guide_matrices()[:4]
        cost = np.zeros(self.num_vars) if c is None else -np.array([float(v) for v in c])
        try:
            res = linprog(
                cost,
                A_ub=a_ub if a_ub.shape[0] else None,
                b_ub=b_ub if a_ub.shape[0] else None,
                A_eq=a_eq if a_eq.shape[0] else None,
                b_eq=b_eq if a_eq.shape[0] else None,
                bounds=(None, None),
                method="highs-ds",
            )
        except ValueError:
            return None
        if res.status != 0:
            return None
        snap = _snapper()
        x = tuple(snap(v) for v in res.x)
        ineq = tuple(max(Fraction(0), -snap(v)) for v in res.ineqlin.marginals) if self.inequalities else ()
        eq = tuple(-snap(v) for v in res.eqlin.marginals) if self.equalities else ()
        verdict = self._integer_certificate(x, ineq, eq, c)
        if verdict is False:
            return None
        if c is None:
            if verdict is None and not lp_feasible(self.num_vars, self.inequalities, self.equalities, x):
                return None
            self.guided_hits += 1
            return LPSolution("feasible", x)
        value = sum((cj * xj for cj, xj in zip(c, x) if cj), Fraction(0)) * sign
        sol = LPSolution("optimal", x, ineq, eq, value, self.total_pivots)
        if verdict is None:
            probe = LPProblem(self.num_vars, tuple(cj * sign for cj in c), "max" if sign == 1 else "min",
                              self.inequalities, self.equalities)
            try:
                check_certificate(probe, sol)
            except CertificateError:
                return None
        self.guided_hits += 1
        return sol

    def complete_points(self, prefixes: Sequence[Sequence[Fraction | int]], batch: int = 256) -> list[Optional[tuple[Fraction, ...]]]:
        """Exactly verified completions of many fixed leading blocks.

        Each prefix fixes the first ``len(prefix)`` variables.  The remaining
        variables are found for a whole batch at once by one block-diagonal
        HiGHS feasibility solve, snapped to rationals and checked row by row
        in exact arithmetic.  A batch HiGHS rejects is split in half until the
        offending prefixes are isolated.  Entries are ``None`` where no
        verified completion was found; that is not a proof of infeasibility.
        """
        out: list[Optional[tuple[Fraction, ...]]] = [None] * len(prefixes)
        if not prefixes:
            return out
        k = len(prefixes[0])
        if any(len(p) != k for p in prefixes) or k > self.num_vars:
            raise ValueError("prefixes must share one length not exceeding the variable count")
        pending = [(lo, min(lo + batch, len(prefixes))) for lo in range(0, len(prefixes), batch)]
        pending.reverse()
        while pending:
            lo, hi = pending.pop()
            values = self._batch_completion(prefixes[lo:hi], k)
            if values is None:
                if hi - lo > 1:
                    mid = (lo + hi) // 2
                    pending += [(mid, hi), (lo, mid)]
                continue
            self._accept_completions(prefixes, lo, hi, values, out)
        return out

    def _batch_completion(self, chunk: Sequence[Sequence[Fraction | int]], k: int) -> Optional[np.ndarray]:
        """Float completions for ``chunk`` from one block-diagonal solve, or ``None``."""
        free = self.num_vars - k
        if not free:
            return np.zeros((len(chunk), 0))
        self.batch_solves += 1
        a_ub, b_ub, a_eq, b_eq = self._guide_matrices()[:4]
        fixed = np.array([[float(v) for v in p] for p in chunk]).T
        blocks = []
        for mat, rhs in ((a_ub, b_ub), (a_eq, b_eq)):
            if mat.shape[0]:
                mat = mat.tocsc()
                stacked_rhs = (rhs[:, None] - mat[:, :k] @ fixed).T.ravel()
                blocks.append((sparse.block_diag([mat[:, k:]] * len(chunk), format="csr"), stacked_rhs))
            else:
                blocks.append((None, None))
        (m_ub, r_ub), (m_eq, r_eq) = blocks
        try:
            res = linprog(np.zeros(free * len(chunk)), A_ub=m_ub, b_ub=r_ub, A_eq=m_eq, b_eq=r_eq,
                          bounds=(None, None), method="highs-ds")
        except ValueError:
            return None
        if res.status != 0:
            return None
        return res.x.reshape(len(chunk), free)

    def _accept_completions(self, prefixes, lo: int, hi: int, values: np.ndarray, out: list) -> None:
        chunk = prefixes[lo:hi]
        snap = _snapper()
        rounded = np.rint(values)
        integral = np.abs(values - rounded) < 1e-9
        ok_rows = self._integral_rows_feasible(chunk, rounded) if values.shape[1] else None
        for i, prefix in enumerate(chunk):
            if ok_rows is not None and integral[i].all() and ok_rows[i]:
                out[lo + i] = tuple(Fraction(v) for v in prefix) + tuple(Fraction(int(v)) for v in rounded[i])
                continue
            point = tuple(Fraction(v) for v in prefix) + tuple(snap(v) for v in values[i])
            verdict = self._integer_certificate(point, (), (), None)
            if verdict is None:
                verdict = lp_feasible(self.num_vars, self.inequalities, self.equalities, point)
            if verdict:
                out[lo + i] = point

    def _integral_rows_feasible(self, prefixes: Sequence[Sequence[Fraction | int]], rest: np.ndarray) -> Optional[np.ndarray]:
        """Row-wise exact check of integer points ``prefix + rest``, vectorised.

        ``None`` when the int64 fast path does not apply.
        """
        _, _, _, _, ia_ub, ib_ub, ia_eq, ib_eq, _ = self._guide_matrices()
        if (self.inequalities and ia_ub is None) or (self.equalities and ia_eq is None):
            return None
        if any(Fraction(v).denominator != 1 for p in prefixes for v in p):
            return None
        if rest.size and np.abs(rest).max() >= _INT64_SAFE:
            return None
        pts = np.hstack([np.array([[int(v) for v in p] for p in prefixes], dtype=np.int64).reshape(len(prefixes), -1),
                         rest.astype(np.int64)]).T
        ok = np.ones(len(prefixes), dtype=bool)
        if self.inequalities:
            ok &= np.all(ia_ub @ pts <= np.array(ib_ub, dtype=np.int64)[:, None], axis=0)
        if self.equalities:
            ok &= np.all(ia_eq @ pts == np.array(ib_eq, dtype=np.int64)[:, None], axis=0)
        return ok

    def optimize(self, objective: Sequence[Fraction | int], sense: str = "max") -> LPSolution:
        if len(objective) != self.num_vars:
            raise ValueError("objective length differs from variable count")
        sign = 1 if sense == "max" else -1
        c = [Fraction(v) * sign for v in objective]
        if self.use_guide and self._feasible is not False:
            sol = self._guided(c, sign)
            if sol is not None:
                self._feasible = True
                return sol
        self._phase_one()
        if not self._feasible:
            return LPSolution("infeasible", pivots=self.total_pivots)
        lc = _lcm_of_denominators(c)
        costs: dict[int, int] = {}
        for j, cj in enumerate(c):
            if cj:
                v = int(cj * lc)
                costs[self.col_plus[j]] = v
                if self.col_minus[j] >= 0:
                    costs[self.col_minus[j]] = -v
        self._install_objective(costs)
        status = self._run()
        if status == "unbounded":
            return LPSolution("unbounded", pivots=self.total_pivots)
        return self._extract(c, lc, sign)

    def _extract(self, c: list[Fraction], lc: int, sign: int) -> LPSolution:
        T, d, nr = self.T, self.d, self.nrows
        colval: dict[int, Fraction] = {}
        for i, b in enumerate(self.basis):
            v = T[i, -1]
            if v:
                colval[b] = Fraction(int(v), int(d))
        x = tuple(
            colval.get(self.col_plus[j], Fraction(0))
            - (colval.get(self.col_minus[j], Fraction(0)) if self.col_minus[j] >= 0 else 0)
            for j in range(self.num_vars)
        )
        obj = T[nr]
        scale = int(d) * lc
        ineq_duals = [Fraction(0)] * len(self.inequalities)
        eq_duals = [Fraction(0)] * len(self.equalities)
        n_gen_ineq = len(self.general_ineq)
        for i in range(nr):
            y = Fraction(int(obj[self.identity_col[i]]), scale) * self.row_mult[i]
            if i < n_gen_ineq:
                ineq_duals[self.general_ineq[i]] = y
            else:
                eq_duals[i - n_gen_ineq] = y
        for j, (k, a) in self.bound_row_of.items():
            ineq_duals[k] = Fraction(int(obj[self.col_plus[j]]), scale) / a
        value = sum((cj * xj for cj, xj in zip(c, x) if cj), Fraction(0)) * sign
        return LPSolution("optimal", x, tuple(ineq_duals), tuple(eq_duals), value, self.total_pivots)

    def solve(self, problem: LPProblem, certify: bool = True) -> LPSolution:
        sol = self.optimize(problem.objective, problem.sense)
        if certify:
            check_certificate(problem, sol)
        return sol


def lp_solve(problem: LPProblem, certify: bool = True) -> LPSolution:
    """Solve ``problem`` exactly; optimal answers are certificate-checked."""
    solver = SimplexSolver(problem.num_vars, problem.inequalities, problem.equalities)
    return solver.solve(problem, certify)
