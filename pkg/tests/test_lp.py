import numpy as np
import pytest

from pdei.lp import (
    EQUAL,
    GREATER_EQUAL,
    LESS_EQUAL,
    LinearProgram,
    LpInputError,
    LpStatus,
    solve_lp,
)

from lp_reference import random_lp, reference_solve


def lp(objective, constraints):
    return LinearProgram(num_vars=len(objective), objective=objective, constraints=constraints)


def test_single_constraint_boundary():
    solution = solve_lp(lp([1.0], [([1.0], LESS_EQUAL, 1.0)]))
    assert solution.status is LpStatus.OPTIMAL
    assert solution.objective_value == pytest.approx(1.0, abs=1e-9)
    assert solution.primal[0] == pytest.approx(1.0, abs=1e-9)


def test_empty_feasible_set_over_nonnegative_variables():
    solution = solve_lp(lp([1.0], [([1.0], LESS_EQUAL, -1.0)]))
    assert solution.status is LpStatus.INFEASIBLE
    assert solution.objective_value is None
    assert solution.primal is None


def test_unbounded_ray():
    solution = solve_lp(lp([1.0, 1.0], [([1.0, 1.0], GREATER_EQUAL, 0.0)]))
    assert solution.status is LpStatus.UNBOUNDED


def test_equality_constraint():
    solution = solve_lp(lp([2.0, 1.0], [([1.0, 1.0], EQUAL, 3.0), ([1.0, 0.0], LESS_EQUAL, 2.0)]))
    assert solution.status is LpStatus.OPTIMAL
    assert solution.objective_value == pytest.approx(5.0, abs=1e-8)
    assert solution.primal == pytest.approx([2.0, 1.0], abs=1e-8)


def test_degenerate_cycling_prone_instance_terminates():
    # Classic cycling example under most-negative pricing; the stall
    # detector must hand over to Bland's rule and finish.
    problem = lp(
        [0.75, -150.0, 0.02, -6.0],
        [
            ([0.25, -60.0, -0.04, 9.0], LESS_EQUAL, 0.0),
            ([0.5, -90.0, -0.02, 3.0], LESS_EQUAL, 0.0),
            ([0.0, 0.0, 1.0, 0.0], LESS_EQUAL, 1.0),
        ],
    )
    solution = solve_lp(problem)
    assert solution.status is LpStatus.OPTIMAL
    assert solution.objective_value == pytest.approx(0.05, abs=1e-9)


def test_validation_errors_are_distinct_from_infeasible():
    with pytest.raises(LpInputError):
        LinearProgram(num_vars=0, objective=[], constraints=[])
    with pytest.raises(LpInputError):
        LinearProgram(num_vars=2, objective=[1.0], constraints=[])
    with pytest.raises(LpInputError):
        lp([1.0], [([1.0, 2.0], LESS_EQUAL, 1.0)])
    with pytest.raises(LpInputError):
        lp([1.0], [([1.0], "<", 1.0)])
    with pytest.raises(LpInputError):
        lp([np.nan], [([1.0], LESS_EQUAL, 1.0)])
    with pytest.raises(LpInputError):
        lp([1.0], [([1.0], LESS_EQUAL, np.inf)])


def test_no_constraints():
    assert solve_lp(LinearProgram(1, [1.0], [])).status is LpStatus.UNBOUNDED
    solution = solve_lp(LinearProgram(1, [-1.0], []))
    assert solution.status is LpStatus.OPTIMAL
    assert solution.objective_value == 0.0


def test_deterministic_repeat_solves():
    problem = lp(
        [3.0, 1.0, 2.0],
        [
            ([1.0, 1.0, 3.0], LESS_EQUAL, 30.0),
            ([2.0, 2.0, 5.0], LESS_EQUAL, 24.0),
            ([4.0, 1.0, 2.0], LESS_EQUAL, 36.0),
        ],
    )
    first = solve_lp(problem)
    second = solve_lp(problem)
    assert first.objective_value == second.objective_value
    assert np.array_equal(first.primal, second.primal)
    assert first.iterations == second.iterations


def test_objective_consistent_with_primal():
    problem = lp(
        [5.0, 4.0],
        [([6.0, 4.0], LESS_EQUAL, 24.0), ([1.0, 2.0], LESS_EQUAL, 6.0)],
    )
    solution = solve_lp(problem)
    assert solution.status is LpStatus.OPTIMAL
    recomputed = float(np.dot(problem.objective, solution.primal))
    assert solution.objective_value == pytest.approx(recomputed, rel=1e-12)


def _dual_is_feasible_and_tight(problem: LinearProgram, solution) -> None:
    y = solution.dual
    assert y is not None
    b = np.array([c.rhs for c in problem.constraints])
    A = np.vstack([c.coeffs for c in problem.constraints])
    # Strong duality: primal and dual objectives coincide.
    assert float(y @ b) == pytest.approx(solution.objective_value, abs=1e-7)
    # Dual feasibility for a maximization over x >= 0.
    reduced = A.T @ y - np.asarray(problem.objective)
    assert np.all(reduced >= -1e-7)
    for yi, constraint in zip(y, problem.constraints):
        if constraint.relation == LESS_EQUAL:
            assert yi >= -1e-7
        elif constraint.relation == GREATER_EQUAL:
            assert yi <= 1e-7


def test_duality_spot_check_fixed_instances():
    problems = [
        lp([5.0, 4.0], [([6.0, 4.0], LESS_EQUAL, 24.0), ([1.0, 2.0], LESS_EQUAL, 6.0)]),
        lp([2.0, 1.0], [([1.0, 1.0], EQUAL, 3.0), ([1.0, 0.0], LESS_EQUAL, 2.0)]),
        lp([1.0, 2.0, 1.0], [([1.0, 1.0, 1.0], LESS_EQUAL, 4.0), ([1.0, 0.0, 1.0], GREATER_EQUAL, 1.0)]),
    ]
    for problem in problems:
        solution = solve_lp(problem)
        assert solution.status is LpStatus.OPTIMAL
        _dual_is_feasible_and_tight(problem, solution)


def test_duality_spot_check_random_instances():
    rng = np.random.default_rng(7)
    checked = 0
    while checked < 60:
        problem = random_lp(rng)
        solution = solve_lp(problem)
        if solution.status is not LpStatus.OPTIMAL:
            continue
        _dual_is_feasible_and_tight(problem, solution)
        checked += 1


def test_feasibility_of_reported_solutions():
    rng = np.random.default_rng(21)
    checked = 0
    while checked < 80:
        problem = random_lp(rng)
        solution = solve_lp(problem)
        if solution.status is not LpStatus.OPTIMAL:
            continue
        x = solution.primal
        assert np.all(x >= -1e-9)
        for coeffs, relation, rhs in problem.constraints:
            value = float(coeffs @ x)
            if relation == LESS_EQUAL:
                assert value <= rhs + 1e-9
            elif relation == GREATER_EQUAL:
                assert value >= rhs - 1e-9
            else:
                assert value == pytest.approx(rhs, abs=1e-9)
        checked += 1


def test_agrees_with_vertex_enumeration_sample():
    rng = np.random.default_rng(3)
    for _ in range(250):
        problem = random_lp(rng)
        status, value = reference_solve(problem)
        solution = solve_lp(problem)
        assert solution.status is status
        if status is LpStatus.OPTIMAL:
            assert solution.objective_value == pytest.approx(value, abs=1e-7)
