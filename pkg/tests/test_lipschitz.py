from __future__ import annotations

import math

import numpy as np
import pytest

from ksmetric import (
    SampledFunction,
    SolverOptions,
    build_space,
    enumerate_balls,
    feasibility_residual,
    feasible_envelope,
    ks1p_oracle,
    ks1p_seminorm,
    ks_norm,
    lip_constant,
    lip_membership_bound,
    lipschitz_density_report,
    minimizer_uniqueness_probe,
    seminorm_embedding_report,
    slope,
)
from ksmetric.errors import SolverFailure, TooLarge, UsageError
from ksmetric.tools.constants import get_constant


WORKED = math.sqrt(5 / 32)


def test_lip_constant_examples(line3) -> None:
    space, _ = line3
    assert lip_constant(space, SampledFunction([2.0, 2.0, 2.0])) == 0.0
    assert lip_constant(space, SampledFunction([0.0, 0.5, 1.0])) == pytest.approx(1.0)
    assert lip_constant(space, SampledFunction([0.0, 0.25, 1.0])) == pytest.approx(1.5)


def test_slope_examples(line3) -> None:
    space, _ = line3
    assert slope(space, SampledFunction([0.0, 0.5, 1.0]), "b", 0.5) == pytest.approx(1.0)
    assert slope(space, SampledFunction([0.0, 0.25, 1.0]), "c", 0.5) == pytest.approx(1.5)
    assert slope(space, SampledFunction([1.0, 1.0, 1.0]), "a", 1.0) == 0.0
    assert slope(space, SampledFunction([0.0, 0.25, 1.0]), "a", 0.1) == 0.0
    with pytest.raises(UsageError):
        slope(space, SampledFunction([0.0, 0.25, 1.0]), "a", 0.0)


def test_feasible_envelope(two_point, line3) -> None:
    space, _ = two_point
    env = feasible_envelope(space, SampledFunction([0.0, 1.0]))
    assert env.values.tolist() == [1.0, 1.0]
    assert env.feasibility_residual == 0.0

    space3, _ = line3
    f = SampledFunction([0.0, 0.25, 1.0])
    env3 = feasible_envelope(space3, f)
    assert np.all(env3.values <= lip_constant(space3, f) + 1e-15)
    assert feasibility_residual(space3, f, env3.values) == 0.0


def test_seminorm_worked_example(two_point) -> None:
    space, family = two_point
    result = ks1p_seminorm(space, family, SampledFunction([0.0, 1.0]), 2)
    assert result.value == pytest.approx(WORKED, abs=1e-4)
    assert result.witness.values == pytest.approx([0.5, 0.5], abs=1e-3)
    assert result.witness.feasibility_residual <= 1e-9
    assert result.converged


@pytest.mark.parametrize(("p", "expected"), [(1, 0.375), (math.inf, 0.5)])
def test_seminorm_polyhedral_exponents(two_point, p, expected) -> None:
    space, family = two_point
    result = ks1p_seminorm(space, family, SampledFunction([0.0, 1.0]), p)
    assert result.value == pytest.approx(expected, abs=1e-4)


def test_seminorm_of_constant_is_zero(line3) -> None:
    space, family = line3
    result = ks1p_seminorm(space, family, SampledFunction([4.0, 4.0, 4.0]), 2)
    assert result.value == 0.0
    assert result.witness.values.tolist() == [0.0, 0.0, 0.0]


def test_seminorm_below_envelope_norm(line3) -> None:
    space, family = line3
    rng = np.random.default_rng(2)
    for p in (1.5, 2.0, 4.0):
        f = SampledFunction(rng.uniform(-1, 1, space.n_points))
        result = ks1p_seminorm(space, family, f, p)
        env = feasible_envelope(space, f).as_function()
        assert result.value <= ks_norm(space, family, env, p) * (1 + 1e-6)
        assert result.witness.feasibility_residual <= 1e-9


def test_subgradient_method_is_never_better_than_active_set(two_point) -> None:
    space, family = two_point
    f = SampledFunction([0.0, 1.0])
    exact = ks1p_seminorm(space, family, f, 2).value
    opts = SolverOptions.from_defaults(method="subgradient", max_iters=5000)
    try:
        sub = ks1p_seminorm(space, family, f, 2, opts)
    except SolverFailure as exc:
        sub = exc.result
    assert sub.method == "subgradient"
    assert sub.value >= exact - 1e-6
    assert sub.witness.feasibility_residual <= 1e-9


def test_solver_failure_carries_the_best_iterate(two_point) -> None:
    space, family = two_point
    with pytest.raises(SolverFailure) as excinfo:
        ks1p_seminorm(space, family, SampledFunction([0.0, 1.0]), 2, SolverOptions(max_iters=1))
    assert excinfo.value.result is not None
    assert excinfo.value.exit_code == 6


def test_solver_options_validation() -> None:
    with pytest.raises(UsageError):
        SolverOptions(method="newton")
    with pytest.raises(UsageError):
        SolverOptions(tolerance=0.0)


def test_oracle_worked_example(two_point) -> None:
    space, family = two_point
    assert ks1p_oracle(space, family, SampledFunction([0.0, 1.0]), 2, step=1e-3) == pytest.approx(WORKED, abs=1e-3)
    assert ks1p_oracle(space, family, SampledFunction([1.0, 1.0]), 2) == 0.0


def test_oracle_step_defaults_to_the_packaged_value(two_point, monkeypatch) -> None:
    space, family = two_point
    f = SampledFunction([0.0, 1.0])
    packaged = get_constant("oracle")["step"]
    assert ks1p_oracle(space, family, f, 2) == ks1p_oracle(space, family, f, 2, step=packaged)

    monkeypatch.setattr("ksmetric.tools.lipfuncs.oracle.get_constant", lambda name: {"step": 0.05})
    assert ks1p_oracle(space, family, f, 2) == ks1p_oracle(space, family, f, 2, step=0.05)

    with pytest.raises(UsageError):
        ks1p_oracle(space, family, f, 2, step=0.0)


def test_oracle_rejects_large_spaces() -> None:
    space = build_space(list("abcd"), {"type": "euclidean", "coords": [[0], [1], [2], [3]]}, [0.25] * 4)
    family = enumerate_balls(space)
    with pytest.raises(TooLarge):
        ks1p_oracle(space, family, SampledFunction([0.0, 1.0, 0.0, 1.0]), 2)


def test_solver_agrees_with_oracle_on_three_points(line3) -> None:
    space, family = line3
    f = SampledFunction([0.0, 0.8, 0.3])
    for p in (1.5, 2.0):
        solver = ks1p_seminorm(space, family, f, p).value
        oracle = ks1p_oracle(space, family, f, p, step=2.5e-4)
        assert abs(solver - oracle) <= max(1e-3, 1e-3 * oracle)


def test_lip_membership_bound_is_tight_on_two_points(two_point) -> None:
    space, family = two_point
    record = lip_membership_bound(space, family, SampledFunction([0.0, 1.0]), 2)
    assert record["values"]["bound"] == pytest.approx(0.5 * math.sqrt(0.625), rel=1e-12)
    assert record["values"]["seminorm"] == pytest.approx(WORKED, abs=1e-4)
    assert record["flags"]["bound_ok"]


def test_uniqueness_probe(two_point) -> None:
    space, family = two_point
    record = minimizer_uniqueness_probe(space, family, SampledFunction([0.0, 1.0]), 2, n_restarts=5)
    assert record["flags"] == {"unique_ok": True}
    assert record["values"]["max_pairwise_witness_distance"] <= 1e-4

    at_one = minimizer_uniqueness_probe(space, family, SampledFunction([0.0, 1.0]), 1, n_restarts=3)
    assert at_one["flags"] == {}
    assert "unique_ok" in at_one["report_only"]


def test_seminorm_embedding(line3) -> None:
    space, family = line3
    record = seminorm_embedding_report(space, family, SampledFunction([0.0, 0.8, 0.3]), 2, math.inf)
    assert record["flags"]["embedding_ok"]


def test_lipschitz_density_is_report_only(line3) -> None:
    space, family = line3
    record = lipschitz_density_report(space, family, SampledFunction([0.0, 0.8, 0.3]), 2)
    assert record["flags"] == {}
    assert set(record["report_only"]) == {"lip_h_ok", "bad_set_ok"}
    assert record["values"]["levels"][-1]["bad_mass"] == 0.0
