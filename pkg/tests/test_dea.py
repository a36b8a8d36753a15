import numpy as np
import pytest

from pdei.dea import (
    Dmu,
    OracleNotApplicableError,
    build_ccr_multiplier,
    ccr_efficiency,
    ccr_efficiency_all,
    ratio_oracle,
)
from pdei.errors import InputError
from pdei.lp import EQUAL, LpStatus, solve_lp


def unit(uid, inputs, outputs):
    return Dmu(id=uid, inputs=np.asarray(inputs, float), outputs=np.asarray(outputs, float))


def random_units(rng, n=None, r=None, s=None):
    n = n or int(rng.integers(2, 11))
    r = r or int(rng.integers(1, 4))
    s = s or int(rng.integers(1, 5))
    units = []
    for i in range(n):
        inputs = rng.uniform(0.1, 5.0, size=r)
        outputs = rng.uniform(0.0, 5.0, size=s)
        if not np.any(outputs > 0):
            outputs[int(rng.integers(0, s))] = 1.0
        units.append(unit(f"u{i}", inputs, outputs))
    return units


def assert_weight_invariants(units, index, theta, mu, nu):
    target = units[index]
    assert abs(float(nu @ target.inputs) - 1.0) <= 1e-7
    assert abs(float(mu @ target.outputs) - theta) <= 1e-7
    for other in units:
        assert float(mu @ other.outputs - nu @ other.inputs) <= 1e-7


def test_dmu_validation():
    with pytest.raises(InputError):
        unit("bad", [0.0], [1.0])
    with pytest.raises(InputError):
        unit("bad", [-1.0], [1.0])
    with pytest.raises(InputError):
        unit("bad", [1.0], [0.0, 0.0])
    with pytest.raises(InputError):
        unit("bad", [1.0], [-0.5])
    with pytest.raises(InputError):
        unit("bad", [], [1.0])
    # a single zero output coordinate is fine
    unit("ok", [1.0], [0.0, 2.0])


def test_build_single_unit_self_evaluation():
    problem = build_ccr_multiplier([unit("a", [1.0], [1.0])], 0)
    assert problem.num_vars == 2
    assert len(problem.constraints) == 2
    assert problem.constraints[0].relation == EQUAL
    solution = solve_lp(problem)
    assert solution.status is LpStatus.OPTIMAL
    assert solution.objective_value == pytest.approx(1.0, abs=1e-9)


def test_build_dimensions_for_uniform_pools():
    sixteen = [unit(f"u{i}", [1.0 + i % 4], [8.0, 8.0, 8.0, 8.0]) for i in range(16)]
    problem = build_ccr_multiplier(sixteen, 0)
    assert problem.num_vars == 5  # 4 output weights + 1 input weight
    assert len(problem.constraints) == 17

    thirty_two = [unit(f"v{i}", [1.0 + i % 4, 2.0], [8.0] * 4) for i in range(32)]
    problem = build_ccr_multiplier(thirty_two, 0)
    assert problem.num_vars == 6
    assert len(problem.constraints) == 33


def test_build_errors():
    with pytest.raises(InputError):
        build_ccr_multiplier([], 0)
    units = [unit("a", [1.0], [1.0])]
    with pytest.raises(InputError):
        build_ccr_multiplier(units, 1)
    with pytest.raises(InputError):
        build_ccr_multiplier(units + [unit("b", [1.0, 2.0], [1.0])], 0)


def test_single_unit_is_efficient():
    theta, mu, nu = ccr_efficiency([unit("solo", [3.0, 7.0], [2.0, 5.0])], 0)
    assert theta == pytest.approx(1.0, abs=1e-9)


def test_dominated_unit_scores_half():
    units = [unit("heavy", [2.0], [1.0]), unit("light", [1.0], [1.0])]
    theta, mu, nu = ccr_efficiency(units, 0)
    assert theta == pytest.approx(0.5, abs=1e-9)
    assert_weight_invariants(units, 0, theta, mu, nu)


def test_identical_units_both_efficient():
    units = [unit("a", [2.0, 3.0], [4.0]), unit("b", [2.0, 3.0], [4.0])]
    result = ccr_efficiency_all(units)
    assert result.efficiencies == pytest.approx([1.0, 1.0], abs=1e-9)
    assert all(s.is_efficient for s in result.scores)


def test_batch_preserves_order_and_matches_single_solves():
    rng = np.random.default_rng(11)
    units = random_units(rng, n=6)
    result = ccr_efficiency_all(units)
    assert [s.id for s in result.scores] == [u.id for u in units]
    for index in range(len(units)):
        theta, _, _ = ccr_efficiency(units, index)
        assert result.scores[index].efficiency == theta


def test_range_and_frontier_nonempty():
    rng = np.random.default_rng(5)
    for _ in range(40):
        units = random_units(rng)
        efficiencies = ccr_efficiency_all(units).efficiencies
        assert np.all(efficiencies > 0)
        assert np.all(efficiencies <= 1.0)
        assert np.any(efficiencies >= 1 - 1e-7)


def test_unit_invariance_under_input_column_scaling():
    rng = np.random.default_rng(17)
    for _ in range(25):
        units = random_units(rng)
        base = ccr_efficiency_all(units).efficiencies
        column = int(rng.integers(0, units[0].inputs.size))
        factor = float(rng.uniform(0.2, 8.0))
        scaled = []
        for u in units:
            inputs = u.inputs.copy()
            inputs[column] *= factor
            scaled.append(unit(u.id, inputs, u.outputs))
        rescored = ccr_efficiency_all(scaled).efficiencies
        assert np.max(np.abs(rescored - base)) <= 1e-7


def test_dominated_unit_removal_leaves_others_unchanged():
    rng = np.random.default_rng(23)
    for _ in range(25):
        units = random_units(rng)
        anchor = units[int(rng.integers(0, len(units)))]
        dominated = unit(
            "dominated",
            anchor.inputs * float(rng.uniform(1.0, 2.0)),
            anchor.outputs * float(rng.uniform(0.3, 1.0)),
        )
        with_dominated = ccr_efficiency_all(units + [dominated]).efficiencies[: len(units)]
        without = ccr_efficiency_all(units).efficiencies
        assert np.max(np.abs(with_dominated - without)) <= 1e-7


def test_monotonicity_in_target_outputs_and_inputs():
    rng = np.random.default_rng(29)
    for _ in range(20):
        units = random_units(rng)
        index = int(rng.integers(0, len(units)))
        base, _, _ = ccr_efficiency(units, index)

        boosted = list(units)
        boosted[index] = unit(
            units[index].id, units[index].inputs, units[index].outputs * 1.5 + 0.1
        )
        up, _, _ = ccr_efficiency(boosted, index)
        assert up >= base - 1e-7

        burdened = list(units)
        burdened[index] = unit(
            units[index].id, units[index].inputs * 1.5, units[index].outputs
        )
        down, _, _ = ccr_efficiency(burdened, index)
        assert down <= base + 1e-7


def test_weight_invariants_on_random_sets():
    rng = np.random.default_rng(31)
    for _ in range(10):
        units = random_units(rng, n=5)
        result = ccr_efficiency_all(units)
        for index, score in enumerate(result.scores):
            assert_weight_invariants(
                units, index, score.efficiency, score.output_weights, score.input_weights
            )


def oracle_eligible_units(rng, n=None, r=None):
    """Outputs all multiples of one profile; unit 0 made ideal."""
    n = n or int(rng.integers(2, 11))
    r = r or int(rng.integers(1, 4))
    s = int(rng.integers(1, 5))
    profile = rng.uniform(0.2, 2.0, size=s)
    scales = rng.uniform(0.5, 4.0, size=n)
    inputs = rng.uniform(0.5, 5.0, size=(n, r))
    scales[0] = scales.max() * float(rng.uniform(1.0, 1.5))
    inputs[0] = inputs.min(axis=0) * float(rng.uniform(0.5, 1.0))
    return [unit(f"u{i}", inputs[i], scales[i] * profile) for i in range(n)]


def test_oracle_agreement_on_eligible_sets():
    rng = np.random.default_rng(37)
    for _ in range(30):
        units = oracle_eligible_units(rng)
        expected = ratio_oracle(units)
        got = ccr_efficiency_all(units).efficiencies
        assert np.max(np.abs(got - np.array(expected))) <= 1e-7


def test_oracle_identical_inputs_cancel():
    units = [unit(f"c{s}", [1.7, 0.4], [s, s]) for s in (8.0, 7.0, 6.0, 5.0)]
    assert ratio_oracle(units) == pytest.approx([1.0, 7 / 8, 6 / 8, 5 / 8], abs=1e-12)


def test_oracle_refuses_non_proportional_outputs():
    units = [unit("a", [1.0], [1.0, 2.0]), unit("b", [1.0], [2.0, 1.0])]
    with pytest.raises(OracleNotApplicableError):
        ratio_oracle(units)


def test_oracle_refuses_without_ideal_unit():
    # Lowest-input unit and highest-output unit are different units.
    units = [unit("a", [1.0], [1.0]), unit("b", [2.0], [5.0])]
    with pytest.raises(OracleNotApplicableError):
        ratio_oracle(units)


def test_screening_instance_through_the_raw_lp():
    # the 16-unit single-input set from the built-in dataset's first sector
    from pdei.datasets import load_dataset
    from pdei.labor import build_disparity_profile

    profile = build_disparity_profile(*load_dataset())
    di = {g: profile.di("S1", g) for g in ("R1", "R2", "R3", "R4")}
    units = [
        unit(f"C{j}_{race}", [di[race]], [s] * 4)
        for race in ("R1", "R2", "R3", "R4")
        for j, s in enumerate((8.0, 7.0, 6.0, 5.0), start=1)
    ]

    problem = build_ccr_multiplier(units, 0)  # C1_R1
    assert problem.num_vars == 5
    assert len(problem.constraints) == 17
    solution = solve_lp(problem)
    assert solution.status is LpStatus.OPTIMAL
    assert solution.objective_value == pytest.approx(0.17, abs=0.02)

    theta, _, _ = ccr_efficiency(units, 5)  # C2_R2
    assert theta == pytest.approx(0.65, abs=0.02)

    oracle = ratio_oracle(units)
    assert oracle[8] == pytest.approx(0.33, abs=0.02)  # C1_R3
    for got, expected in zip(ccr_efficiency_all(units).efficiencies, oracle):
        assert got == pytest.approx(expected, abs=1e-9)
