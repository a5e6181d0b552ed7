from __future__ import annotations

import math

import numpy as np
import pytest

from ksmetric import (
    BallFamily,
    GridSpec,
    MultiIndex,
    SampledFunction,
    average,
    build_space,
    enumerate_balls,
    equivalent_norm_check,
    euclid_embedding_report,
    grid_weak_derivative,
    ks1p_seminorm,
    ks_inner,
    ks_norm,
    lp_norm,
    multi_indices,
    poincare_report,
    wkp_norm,
    ws1p_norm,
    wsk2_inner,
    wskp_norm,
)
from ksmetric.errors import GridTooSmall, MissingFullBall, UsageError, ValidationError


def _grid(dim, n, probability=True):
    grid = GridSpec.unit_cube(dim, n, probability)
    return grid, enumerate_balls(grid.to_space())


def _on(grid, func):
    coords = grid.coords
    return SampledFunction(func(*[coords[:, i] for i in range(grid.dim)]))


def test_average_examples() -> None:
    equal = build_space(["a", "b"], {"type": "euclidean", "coords": [[0], [1]]}, [0.5, 0.5])
    skewed = build_space(["a", "b"], {"type": "euclidean", "coords": [[0], [1]]}, [0.75, 0.25])
    assert average(equal, SampledFunction([1.0, 3.0])) == 2.0
    assert average(skewed, SampledFunction([1.0, 3.0])) == 1.5
    assert average(equal, SampledFunction([7.0, 7.0])) == 7.0


def test_ws1p_norm_worked_example(two_point) -> None:
    space, family = two_point
    f = SampledFunction([0.0, 1.0])
    assert ks_norm(space, family, f, 2) == pytest.approx(math.sqrt(3 / 16), rel=1e-14)
    assert ws1p_norm(space, family, f, 2) == pytest.approx(math.sqrt(3 / 16) + math.sqrt(5 / 32), abs=1e-4)
    assert ws1p_norm(space, family, f, 2) == pytest.approx(0.82829, abs=1e-4)


def test_ws1p_norm_of_constants(two_point) -> None:
    space, family = two_point
    one = SampledFunction([1.0, 1.0])
    assert ws1p_norm(space, family, one, 2) == pytest.approx(ks_norm(space, family, one, 2))
    assert ws1p_norm(space, family, SampledFunction([0.0, 0.0]), 3) == 0.0


def test_poincare_worked_example(two_point) -> None:
    space, family = two_point
    record = poincare_report(space, family, SampledFunction([0.0, 1.0]), 2)
    values = record["values"]
    assert values["lhs"] == pytest.approx(math.sqrt(1 / 32), rel=1e-12)
    assert values["seminorm"] == pytest.approx(math.sqrt(5 / 32), abs=1e-4)
    assert values["derived_constant"] == pytest.approx(1.0 + math.sqrt(1.25), rel=1e-12)
    assert values["stated_constant"] == 2.0
    assert record["flags"] == {"ok_derived": True}
    assert record["report_only"] == {"ok_stated": True}


def test_poincare_constant_function(line3) -> None:
    space, family = line3
    record = poincare_report(space, family, SampledFunction([2.0, 2.0, 2.0]), 2)
    assert record["values"]["lhs"] == pytest.approx(0.0, abs=1e-12)
    assert record["flags"]["ok_derived"] and record["report_only"]["ok_stated"]


def test_poincare_needs_a_full_ball(two_point) -> None:
    space, _ = two_point
    family = BallFamily.from_balls(space, [("a", 0.0), ("b", 0.0)])
    with pytest.raises(MissingFullBall):
        poincare_report(space, family, SampledFunction([0.0, 1.0]), 2)


def test_seminorm_is_shift_invariant(line3) -> None:
    space, family = line3
    f = SampledFunction([0.1, 0.9, 0.4])
    base = ks1p_seminorm(space, family, f, 2).value
    shifted = ks1p_seminorm(space, family, f + 5.0, 2).value
    assert shifted == pytest.approx(base, rel=1e-6)


def test_equivalent_norm_with_own_norm(line3) -> None:
    space, family = line3
    rng = np.random.default_rng(4)
    sample = [SampledFunction(rng.uniform(-1, 1, 3)) for _ in range(4)] + [SampledFunction([0.0, 0.0, 0.0])]

    own = equivalent_norm_check(space, family, sample, 2, lambda f: ks_norm(space, family, f, 2))
    assert own["values"]["excluded"] == 1
    assert own["values"]["c_low"] == pytest.approx(1.0, rel=1e-12)
    assert own["values"]["c_high"] == pytest.approx(1.0, rel=1e-12)

    l2 = equivalent_norm_check(space, family, sample, 2, lambda f: lp_norm(space, f, 2))
    assert l2["flags"]["ratios_finite_positive"]
    assert 0 < l2["values"]["c_low"] <= l2["values"]["c_high"]


def test_equivalent_norm_rejects_a_non_norm(line3) -> None:
    space, family = line3
    sample = [SampledFunction([1.0, 0.0, 0.0])]
    with pytest.raises(ValidationError):
        equivalent_norm_check(space, family, sample, 2, lambda f: 0.0)


#***** grids *****


def test_multi_indices_order() -> None:
    assert [m.alpha for m in multi_indices(2, 1)] == [(0, 0), (0, 1), (1, 0)]
    assert len(multi_indices(2, 2)) == 6
    with pytest.raises(UsageError):
        MultiIndex((1, -1))


def test_derivative_of_affine_function_is_exact() -> None:
    grid, _ = _grid(1, 9)
    f = _on(grid, lambda x: 2.5 * x - 1.0)
    assert grid_weak_derivative(grid, f, 0).values.tolist() == f.values.tolist()
    assert grid_weak_derivative(grid, f, 1).values == pytest.approx(np.full(9, 2.5), abs=1e-12)


def test_derivatives_of_quadratic() -> None:
    grid, _ = _grid(1, 9)
    f = _on(grid, lambda x: 3.0 * x**2 + x)
    assert grid_weak_derivative(grid, f, 1).values == pytest.approx(6.0 * grid.coords[:, 0] + 1.0, abs=1e-12)
    assert grid_weak_derivative(grid, f, 2).values == pytest.approx(np.full(9, 6.0), abs=1e-10)


def test_mixed_derivative_in_two_dimensions() -> None:
    grid, _ = _grid(2, 5)
    f = _on(grid, lambda x, y: x * y - 0.5 * y)
    assert grid_weak_derivative(grid, f, (1, 1)).values == pytest.approx(np.ones(25), abs=1e-12)


def test_grid_too_small() -> None:
    grid, _ = _grid(1, 2)
    with pytest.raises(GridTooSmall):
        grid_weak_derivative(grid, SampledFunction([0.0, 1.0]), 1)


def test_sobolev_norms_of_trivial_functions() -> None:
    grid, family = _grid(1, 8)
    zero = SampledFunction(np.zeros(8))
    one = SampledFunction(np.ones(8))
    assert wkp_norm(grid, zero, 1, 2) == 0.0
    assert wskp_norm(grid, family, zero, 1, 2) == 0.0
    assert wkp_norm(grid, one, 1, 2) == pytest.approx(1.0, rel=1e-12)


def test_affine_wkp_norm() -> None:
    grid, _ = _grid(1, 8)
    f = _on(grid, lambda x: 2.0 * x + 1.0)
    expected = math.sqrt(lp_norm(grid.to_space(), f, 2) ** 2 + 4.0)
    assert wkp_norm(grid, f, 1, 2) == pytest.approx(expected, rel=1e-12)


def test_wsk2_inner_matches_norm_squared() -> None:
    grid, family = _grid(2, 5)
    space = grid.to_space()
    f = _on(grid, lambda x, y: np.sin(x) + x * y)
    g = _on(grid, lambda x, y: np.cos(2 * y))
    assert wsk2_inner(grid, family, f, f, 1) == pytest.approx(wskp_norm(grid, family, f, 1, 2) ** 2, rel=1e-12)
    assert wsk2_inner(grid, family, f, SampledFunction(np.zeros(25)), 1) == 0.0
    assert wsk2_inner(grid, family, f, g, 0) == pytest.approx(ks_inner(space, family, f, g), rel=1e-12)


@pytest.mark.parametrize(("dim", "n", "k"), [(1, 16, 1), (1, 16, 2), (2, 5, 1), (2, 5, 2)])
def test_euclid_embedding(dim, n, k) -> None:
    grid, family = _grid(dim, n)
    f = _on(grid, lambda *xs: np.exp(sum(xs)) - 1.5)
    record = euclid_embedding_report(grid, family, f, k, 2)
    assert record["flags"]["embedding_ok"]
    assert record["values"]["wskq"] <= record["values"]["wkq"]
