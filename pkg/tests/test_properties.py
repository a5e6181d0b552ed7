from __future__ import annotations

import math

import numpy as np
from hypothesis import given, settings
from hypothesis.strategies import integers, lists, sampled_from, tuples

from ksmetric import (
    GridSpec,
    SampledFunction,
    build_space,
    embedding_constant,
    enumerate_balls,
    greedy_5B,
    grid_weak_derivative,
    ks_inner,
    ks_norm,
    layer_cake,
    lip_constant,
    lp_norm,
    maximal_function,
    verify_covering,
    wskp_norm,
)
from ksmetric.harness.expressions import evaluate_expression


COORDS = [0.0, 0.2, 0.5, 0.6, 1.0]
SPACE = build_space(list("abcde"), {"type": "euclidean", "coords": [[c] for c in COORDS]}, [0.1, 0.3, 0.2, 0.25, 0.15])
FAMILY = enumerate_balls(SPACE)
EXPONENTS = [1.0, 1.5, 2.0, 3.0, math.inf]

GRID = GridSpec.unit_cube(2, 5)
GRID_FAMILY = enumerate_balls(GRID.to_space())


def _hundredths(low, high):
    return integers(low * 100, high * 100).map(lambda k: k / 100.0)


def _samples(low=-10, high=10):
    return lists(_hundredths(low, high), min_size=SPACE.n_points, max_size=SPACE.n_points).map(SampledFunction)


def _grid_samples(low=-10, high=10):
    return lists(_hundredths(low, high), min_size=GRID.n_nodes, max_size=GRID.n_nodes).map(SampledFunction)


quick = settings(max_examples=60, deadline=None)


@quick
@given(_samples(), _samples(), _hundredths(-5, 5), sampled_from(EXPONENTS))
def test_ks_norm_is_a_seminorm(f, g, a, p) -> None:
    nf, ng = ks_norm(SPACE, FAMILY, f, p), ks_norm(SPACE, FAMILY, g, p)
    assert math.isclose(ks_norm(SPACE, FAMILY, f * a, p), abs(a) * nf, rel_tol=1e-12, abs_tol=1e-15)
    assert ks_norm(SPACE, FAMILY, f + g, p) <= (nf + ng) * (1 + 1e-12) + 1e-15


@quick
@given(_samples(), sampled_from(EXPONENTS), sampled_from(EXPONENTS))
def test_ks_norm_is_dominated_by_lp(f, p, q) -> None:
    C = embedding_constant(SPACE, FAMILY, p, q)
    assert C <= 1.0 + 1e-12
    assert ks_norm(SPACE, FAMILY, f, p) <= C * lp_norm(SPACE, f, q) * (1 + 1e-10) + 1e-15


@quick
@given(_samples(), _samples())
def test_ks_inner_is_symmetric_and_matches_the_norm(f, g) -> None:
    assert math.isclose(ks_inner(SPACE, FAMILY, f, g), ks_inner(SPACE, FAMILY, g, f), rel_tol=1e-12, abs_tol=1e-12)
    assert math.isclose(ks_inner(SPACE, FAMILY, f, f), ks_norm(SPACE, FAMILY, f, 2) ** 2, rel_tol=1e-12, abs_tol=1e-15)


@quick
@given(_samples(), _samples())
def test_maximal_function_dominates_and_is_sublinear(f, g) -> None:
    mf, mg = maximal_function(SPACE, f).values, maximal_function(SPACE, g).values
    assert np.all(mf >= np.abs(f.values) * (1 - 1e-12))
    assert np.all(maximal_function(SPACE, f + g).values <= (mf + mg) * (1 + 1e-12) + 1e-12)


@quick
@given(_samples(0, 10), lists(_hundredths(0, 1), min_size=1, max_size=4))
def test_layer_cake_identity(f, psi) -> None:
    assert layer_cake(SPACE, f, psi)["flags"]["equal_ok"]


@quick
@given(lists(tuples(sampled_from(SPACE.point_ids), _hundredths(0, 1)), max_size=8))
def test_greedy_selection_is_a_valid_covering(balls) -> None:
    record = verify_covering(SPACE, balls, greedy_5B(SPACE, balls))
    assert all(record["flags"].values()), record


@quick
@given(_hundredths(-3, 3), _hundredths(-3, 3))
def test_affine_expressions(a, b) -> None:
    values = evaluate_expression(f"{a} * x1 + ({b})", SPACE.coords)
    assert np.allclose(values, a * np.asarray(COORDS) + b, rtol=1e-12, atol=1e-12)
    assert math.isclose(lip_constant(SPACE, SampledFunction(values)), abs(a), rel_tol=1e-9, abs_tol=1e-12)


@quick
@given(_grid_samples())
def test_mixed_grid_derivatives_commute(f) -> None:
    x_then_y = grid_weak_derivative(GRID, grid_weak_derivative(GRID, f, (1, 0)), (0, 1)).values
    y_then_x = grid_weak_derivative(GRID, grid_weak_derivative(GRID, f, (0, 1)), (1, 0)).values
    mixed = grid_weak_derivative(GRID, f, (1, 1)).values
    tol = 1e-12 * max(1.0, float(np.max(np.abs(f.values)))) / GRID.spacing**2
    assert np.allclose(x_then_y, y_then_x, rtol=0.0, atol=tol)
    assert np.allclose(mixed, x_then_y, rtol=0.0, atol=tol)


@quick
@given(_grid_samples(), sampled_from(EXPONENTS))
def test_wskp_norm_grows_with_the_order(f, p) -> None:
    norms = [wskp_norm(GRID, GRID_FAMILY, f, k, p) for k in range(3)]
    for lower, higher in zip(norms, norms[1:]):
        assert lower <= higher * (1 + 1e-12) + 1e-15
