"""Constant-returns-to-scale relative-efficiency scoring (multiplier form).

Each unit under evaluation has a vector of positive inputs and a vector of
nonnegative outputs.  Its efficiency is the optimal value of a small LP
that chooses output weights ``mu`` and input weights ``nu`` most favorable
to the unit, subject to the normalization ``nu . x0 = 1`` and to every
unit's weighted output staying at or below its weighted input.  Scores lie
in (0, 1]; a unit scoring 1 sits on the efficient frontier.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple, Sequence

import numpy as np

from pdei.errors import ComputeError, InputError
from pdei.lp import Constraint, LinearProgram, LpStatus, solve_lp

EFFICIENT_TOL = 1e-7


class DeaInternalError(ComputeError):
    """The efficiency LP failed to solve; indicates a bug, never a score."""


class OracleNotApplicableError(InputError):
    """The unit set does not satisfy the closed-form oracle's preconditions."""


@dataclass
class Dmu:
    """One unit: positive inputs, nonnegative outputs with some positive entry."""

    id: str
    inputs: np.ndarray
    outputs: np.ndarray

    def __post_init__(self) -> None:
        self.inputs = np.asarray(self.inputs, dtype=float).reshape(-1)
        self.outputs = np.asarray(self.outputs, dtype=float).reshape(-1)
        if self.inputs.size == 0:
            raise InputError(f"unit {self.id!r} has no inputs")
        if self.outputs.size == 0:
            raise InputError(f"unit {self.id!r} has no outputs")
        if not np.all(np.isfinite(self.inputs)) or not np.all(np.isfinite(self.outputs)):
            raise InputError(f"unit {self.id!r} has non-finite data")
        if np.any(self.inputs <= 0):
            raise InputError(f"unit {self.id!r} has nonpositive inputs; all inputs must be > 0")
        if np.any(self.outputs < 0):
            raise InputError(f"unit {self.id!r} has negative outputs")
        if not np.any(self.outputs > 0):
            raise InputError(f"unit {self.id!r} has all-zero outputs")


class CcrScore(NamedTuple):
    theta: float
    output_weights: np.ndarray
    input_weights: np.ndarray


@dataclass(frozen=True)
class DmuScore:
    id: str
    efficiency: float
    output_weights: np.ndarray
    input_weights: np.ndarray
    is_efficient: bool


@dataclass(frozen=True)
class DeaResult:
    scores: tuple[DmuScore, ...]

    @property
    def efficiencies(self) -> np.ndarray:
        return np.array([s.efficiency for s in self.scores])


def _check_dmu_set(dmus: Sequence[Dmu]) -> tuple[int, int]:
    if not dmus:
        raise InputError("unit set is empty")
    r = dmus[0].inputs.size
    s = dmus[0].outputs.size
    for dmu in dmus:
        if dmu.inputs.size != r or dmu.outputs.size != s:
            raise InputError(
                f"unit {dmu.id!r} has dimensions ({dmu.inputs.size}, {dmu.outputs.size}), "
                f"expected ({r}, {s})"
            )
    return r, s


def build_ccr_multiplier(dmus: Sequence[Dmu], target_index: int) -> LinearProgram:
    """LP for one target unit: variables (mu_1..mu_s, nu_1..nu_r), maximize
    mu . y0 subject to nu . x0 = 1 and mu . y_i - nu . x_i <= 0 for every i."""
    r, s = _check_dmu_set(dmus)
    if not 0 <= target_index < len(dmus):
        raise InputError(f"target_index {target_index} out of range for {len(dmus)} units")
    target = dmus[target_index]
    num_vars = s + r
    objective = np.concatenate([target.outputs, np.zeros(r)])
    constraints = [Constraint(np.concatenate([np.zeros(s), target.inputs]), "=", 1.0)]
    for dmu in dmus:
        constraints.append(Constraint(np.concatenate([dmu.outputs, -dmu.inputs]), "<=", 0.0))
    return LinearProgram(num_vars=num_vars, objective=objective, constraints=constraints)


def ccr_efficiency(dmus: Sequence[Dmu], target_index: int) -> CcrScore:
    """Efficiency of one unit relative to the set, with its optimal weights.

    When alternate optima exist the weights come from the solver's
    deterministic final basis; the efficiency value itself is unique.
    """
    lp = build_ccr_multiplier(dmus, target_index)
    solution = solve_lp(lp)
    if solution.status is not LpStatus.OPTIMAL:
        raise DeaInternalError(
            f"efficiency LP for unit {dmus[target_index].id!r} ended {solution.status.value}; "
            "this indicates a bug in the model build"
        )
    theta = solution.objective_value
    if theta <= 0 or theta > 1 + EFFICIENT_TOL:
        raise DeaInternalError(
            f"efficiency {theta!r} for unit {dmus[target_index].id!r} is outside (0, 1]"
        )
    theta = min(theta, 1.0)
    s = dmus[0].outputs.size
    return CcrScore(theta, solution.primal[:s].copy(), solution.primal[s:].copy())


def ccr_efficiency_all(dmus: Sequence[Dmu]) -> DeaResult:
    """Score every unit independently, preserving input order."""
    _check_dmu_set(dmus)
    scores = []
    for index, dmu in enumerate(dmus):
        theta, mu, nu = ccr_efficiency(dmus, index)
        scores.append(
            DmuScore(
                id=dmu.id,
                efficiency=theta,
                output_weights=mu,
                input_weights=nu,
                is_efficient=theta >= 1 - EFFICIENT_TOL,
            )
        )
    return DeaResult(scores=tuple(scores))


def ratio_oracle(dmus: Sequence[Dmu], rtol: float = 1e-9) -> list[float]:
    """Closed-form efficiencies for sets with one effective output and an
    ideal unit.

    Preconditions: every output vector is a scalar multiple of a common
    profile (so unit i has effective scalar output s_i), and some unit i*
    has componentwise-minimal inputs together with the maximal s.  Then

        theta_0 = (s_0 / s_i*) * max_k (x_i*,k / x_0,k)

    because with one effective output the LP reduces to maximizing a
    linear function of nu over the simplex {nu >= 0, nu . x0 = 1}, whose
    optimum is at a vertex nu = e_k / x_0,k.  Raises
    OracleNotApplicableError when the preconditions fail.
    """
    _check_dmu_set(dmus)
    profile = dmus[0].outputs
    norm = float(profile @ profile)
    scales = []
    for dmu in dmus:
        scale = float(dmu.outputs @ profile) / norm
        residual = np.max(np.abs(dmu.outputs - scale * profile))
        if residual > rtol * max(1.0, float(np.max(np.abs(dmu.outputs)))):
            raise OracleNotApplicableError(
                f"unit {dmu.id!r} output vector is not a multiple of the common profile"
            )
        scales.append(scale)
    scales_arr = np.array(scales)
    inputs = np.vstack([dmu.inputs for dmu in dmus])
    floor = inputs.min(axis=0)
    best = None
    for i in np.flatnonzero(scales_arr >= scales_arr.max() * (1 - 1e-12)):
        if np.all(inputs[i] <= floor * (1 + 1e-12)):
            best = int(i)
            break
    if best is None:
        raise OracleNotApplicableError(
            "no unit has componentwise-minimal inputs and maximal output scale"
        )
    thetas = []
    for i in range(len(dmus)):
        ratio = float(np.max(inputs[best] / inputs[i]))
        thetas.append(min(1.0, (scales[i] / scales[best]) * ratio))
    return thetas
