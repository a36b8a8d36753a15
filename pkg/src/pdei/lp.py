"""Dense two-phase primal simplex for small maximization LPs.

Canonical form: maximize ``c . x`` over ``x >= 0`` subject to rows
``a . x (<= | = | >=) b``.  Problems here are tiny (tens of variables and
constraints), so the tableau is kept dense and no factorization or
sparsity tricks are attempted.  Pricing is plain Dantzig; Bland's rule
takes over after a stretch of degenerate pivots with no objective
improvement, which terminates the cycling that ties in the data would
otherwise cause.

Solves are deterministic: the same problem bits always produce the same
solution bits, and nothing is shared between solves.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from typing import NamedTuple

import numpy as np

from pdei.errors import ComputeError, InputError

FEASIBILITY_TOL = 1e-9
PIVOT_TOL = 1e-10
MAX_ITERATIONS = 10_000

LESS_EQUAL = "<="
EQUAL = "="
GREATER_EQUAL = ">="
RELATIONS = (LESS_EQUAL, EQUAL, GREATER_EQUAL)

_FLIP = {LESS_EQUAL: GREATER_EQUAL, EQUAL: EQUAL, GREATER_EQUAL: LESS_EQUAL}


class LpInputError(InputError):
    """Malformed problem data; distinct from an infeasible model."""


class LpIterationLimitError(ComputeError):
    """The pivot count exceeded MAX_ITERATIONS."""


class LpStatus(Enum):
    OPTIMAL = "optimal"
    INFEASIBLE = "infeasible"
    UNBOUNDED = "unbounded"


class Constraint(NamedTuple):
    coeffs: np.ndarray
    relation: str
    rhs: float


@dataclass
class LinearProgram:
    """A maximization LP over nonnegative variables.

    ``constraints`` entries are ``(coefficients, relation, rhs)`` with
    relation one of ``"<="``, ``"="``, ``">="``.  All data is validated
    and copied to float arrays on construction.
    """

    num_vars: int
    objective: np.ndarray
    constraints: list[Constraint] = field(default_factory=list)

    def __post_init__(self) -> None:
        if not isinstance(self.num_vars, (int, np.integer)) or self.num_vars < 1:
            raise LpInputError(f"num_vars must be a positive integer, got {self.num_vars!r}")
        self.num_vars = int(self.num_vars)
        self.objective = np.asarray(self.objective, dtype=float).reshape(-1)
        if self.objective.shape != (self.num_vars,):
            raise LpInputError(
                f"objective has length {self.objective.size}, expected {self.num_vars}"
            )
        if not np.all(np.isfinite(self.objective)):
            raise LpInputError("objective coefficients must be finite")
        normalized = []
        for idx, raw in enumerate(self.constraints):
            coeffs, relation, rhs = raw
            coeffs = np.asarray(coeffs, dtype=float).reshape(-1)
            if coeffs.shape != (self.num_vars,):
                raise LpInputError(
                    f"constraint {idx} has {coeffs.size} coefficients, expected {self.num_vars}"
                )
            if not np.all(np.isfinite(coeffs)):
                raise LpInputError(f"constraint {idx} has non-finite coefficients")
            if relation not in RELATIONS:
                raise LpInputError(f"constraint {idx} relation {relation!r} not in {RELATIONS}")
            rhs = float(rhs)
            if not np.isfinite(rhs):
                raise LpInputError(f"constraint {idx} has non-finite rhs")
            normalized.append(Constraint(coeffs, relation, rhs))
        self.constraints = normalized


@dataclass(frozen=True)
class LpSolution:
    """Solver outcome.  objective_value/primal/dual are set iff Optimal.

    ``dual`` holds one multiplier per original constraint row, oriented to
    the caller's row signs (nonnegative for binding ``<=`` rows of a
    maximization, nonpositive for ``>=``, free for equalities).
    """

    status: LpStatus
    objective_value: float | None = None
    primal: np.ndarray | None = None
    dual: np.ndarray | None = None
    iterations: int = 0


def _set_objective_row(T: np.ndarray, cost: np.ndarray, basis: np.ndarray) -> None:
    # Last row holds reduced costs z_j - c_j; optimal when all >= 0.
    T[-1, :-1] = -cost
    T[-1, -1] = 0.0
    for i, bi in enumerate(basis):
        cb = cost[bi]
        if cb != 0.0:
            T[-1] += cb * T[i]


def _pivot(T: np.ndarray, basis: np.ndarray, row: int, col: int) -> None:
    T[row] = T[row] / T[row, col]
    colvals = T[:, col].copy()
    colvals[row] = 0.0
    T -= np.outer(colvals, T[row])
    T[:, col] = 0.0
    T[row, col] = 1.0
    basis[row] = col


def _pivot_until_optimal(
    T: np.ndarray, basis: np.ndarray, iterations: int, bland_threshold: int
) -> tuple[LpStatus, int]:
    m = T.shape[0] - 1
    ncols = T.shape[1] - 1
    stall = 0
    best = T[-1, -1]
    use_bland = False
    while True:
        reduced = T[-1, :ncols]
        if use_bland:
            negative = np.flatnonzero(reduced < -FEASIBILITY_TOL)
            if negative.size == 0:
                return LpStatus.OPTIMAL, iterations
            enter = int(negative[0])
        else:
            enter = int(np.argmin(reduced))
            if reduced[enter] >= -FEASIBILITY_TOL:
                return LpStatus.OPTIMAL, iterations
        column = T[:m, enter]
        eligible = column > PIVOT_TOL
        if not np.any(eligible):
            return LpStatus.UNBOUNDED, iterations
        ratios = np.full(m, np.inf)
        ratios[eligible] = T[:m, -1][eligible] / column[eligible]
        best_ratio = float(np.min(ratios))
        if use_bland:
            tied = np.flatnonzero(ratios <= best_ratio + 1e-12 * max(1.0, abs(best_ratio)))
            leave = int(tied[np.argmin(basis[tied])])
        else:
            leave = int(np.argmin(ratios))
        _pivot(T, basis, leave, enter)
        iterations += 1
        if iterations > MAX_ITERATIONS:
            raise LpIterationLimitError(f"simplex exceeded {MAX_ITERATIONS} pivots")
        if T[-1, -1] > best + 1e-12:
            best = T[-1, -1]
            stall = 0
        else:
            stall += 1
            if stall >= bland_threshold:
                use_bland = True


def solve_lp(lp: LinearProgram) -> LpSolution:
    """Solve a LinearProgram, classifying it Optimal, Infeasible or Unbounded.

    Phase 1 drives artificial variables (one per ``=``/``>=`` row) to zero;
    phase 2 optimizes the caller's objective.  Raises LpIterationLimitError
    if the pivot cap is hit, LpInputError on inconsistent dimensions.
    """
    n = lp.num_vars
    m = len(lp.constraints)
    objective = np.asarray(lp.objective, dtype=float)
    if objective.shape != (n,):
        raise LpInputError("objective length does not match num_vars")

    A = np.zeros((m, n))
    b = np.zeros(m)
    relations = []
    row_sign = np.ones(m)
    for i, (coeffs, relation, rhs) in enumerate(lp.constraints):
        coeffs = np.asarray(coeffs, dtype=float)
        if coeffs.shape != (n,):
            raise LpInputError(f"constraint {i} coefficient length does not match num_vars")
        if relation not in RELATIONS:
            raise LpInputError(f"constraint {i} has unknown relation {relation!r}")
        if rhs < 0:
            # Simplex needs nonnegative rhs; flip the row and remember the
            # orientation for the dual vector.
            coeffs = -coeffs
            rhs = -rhs
            relation = _FLIP[relation]
            row_sign[i] = -1.0
        A[i] = coeffs
        b[i] = rhs
        relations.append(relation)

    slack_rows = [(i, 1.0) for i, r in enumerate(relations) if r == LESS_EQUAL]
    slack_rows += [(i, -1.0) for i, r in enumerate(relations) if r == GREATER_EQUAL]
    slack_rows.sort()
    n_slack = len(slack_rows)
    artificial_rows = [i for i, r in enumerate(relations) if r != LESS_EQUAL]
    n_art = len(artificial_rows)
    art_start = n + n_slack
    width = art_start + n_art

    M = np.zeros((m, width))
    M[:, :n] = A
    slack_col_of_row: dict[int, int] = {}
    for j, (i, sign) in enumerate(slack_rows):
        M[i, n + j] = sign
        slack_col_of_row[i] = n + j
    for j, i in enumerate(artificial_rows):
        M[i, art_start + j] = 1.0

    basis = np.zeros(m, dtype=int)
    for j, i in enumerate(artificial_rows):
        basis[i] = art_start + j
    for i, r in enumerate(relations):
        if r == LESS_EQUAL:
            basis[i] = slack_col_of_row[i]

    T = np.zeros((m + 1, width + 1))
    T[:m, :width] = M
    T[:m, -1] = b

    iterations = 0
    bland_threshold = 2 * (n + m)
    kept_rows = list(range(m))

    if n_art:
        phase1_cost = np.zeros(width)
        phase1_cost[art_start:] = -1.0
        _set_objective_row(T, phase1_cost, basis)
        status, iterations = _pivot_until_optimal(T, basis, iterations, bland_threshold)
        if status is not LpStatus.OPTIMAL:  # pragma: no cover - phase 1 is bounded
            raise ComputeError("phase-1 simplex did not converge")
        if T[-1, -1] < -FEASIBILITY_TOL:
            return LpSolution(status=LpStatus.INFEASIBLE, iterations=iterations)

        # Pivot leftover artificial basics onto structural/slack columns; a
        # row with no such column is a redundant constraint and is dropped.
        drop = []
        for i in range(m):
            if basis[i] >= art_start:
                candidates = np.flatnonzero(np.abs(T[i, :art_start]) > PIVOT_TOL)
                if candidates.size:
                    _pivot(T, basis, i, int(candidates[0]))
                    iterations += 1
                else:
                    drop.append(i)
        if drop:
            kept_rows = [i for i in range(m) if i not in drop]
            T = np.vstack([T[kept_rows], T[-1:]])
            basis = basis[kept_rows]

    # Artificial columns are done; remove them before phase 2.
    T = np.hstack([T[:, :art_start], T[:, -1:]])
    m_active = T.shape[0] - 1

    phase2_cost = np.zeros(art_start)
    phase2_cost[:n] = objective
    _set_objective_row(T, phase2_cost, basis)
    status, iterations = _pivot_until_optimal(T, basis, iterations, bland_threshold)
    if status is LpStatus.UNBOUNDED:
        return LpSolution(status=LpStatus.UNBOUNDED, iterations=iterations)

    x_full = np.zeros(art_start)
    x_full[basis] = T[:m_active, -1]
    primal = x_full[:n].copy()
    objective_value = float(objective @ primal)

    dual = None
    if m:
        dual = np.zeros(m)
        try:
            B = M[np.ix_(kept_rows, basis)]
            y = np.linalg.solve(B.T, phase2_cost[basis])
            for local, original in enumerate(kept_rows):
                dual[original] = y[local] * row_sign[original]
        except np.linalg.LinAlgError:  # pragma: no cover - basis is invertible
            dual = None

    return LpSolution(
        status=LpStatus.OPTIMAL,
        objective_value=objective_value,
        primal=primal,
        dual=dual,
        iterations=iterations,
    )
