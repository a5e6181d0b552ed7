from __future__ import annotations

import math

import numpy as np
import pytest

from ksmetric import (
    BallScheme,
    SampledFunction,
    ball_integral,
    build_space,
    default_radius_grid,
    enumerate_balls,
    load_space,
    save_space,
)
from ksmetric.errors import (
    BadRadiusGrid,
    EmptySpace,
    IndexOutOfRange,
    NegativeMass,
    NonMetric,
    ResolutionError,
    ValidationError,
    ZeroTotalMass,
)


def _line(coords, mass=None):
    ids = [f"p{i}" for i in range(len(coords))]
    mass = mass or [1.0 / len(coords)] * len(coords)
    return build_space(ids, {"type": "euclidean", "coords": [[c] for c in coords]}, mass)


def test_single_point_space() -> None:
    space = build_space(["x"], {"type": "matrix", "matrix": [[0.0]]}, [1.0])
    assert space.diameter() == 0.0
    assert space.doubling_constant() == 1.0
    assert math.isinf(space.min_positive_distance())
    assert space.is_probability


def test_two_points_on_a_line() -> None:
    space = _line([0.0, 1.0])
    assert space.dist[0, 1] == 1.0
    assert space.total_mass == 1.0
    assert space.metric_type == "euclidean"


def test_triangle_violation_names_the_triple() -> None:
    table = [[0.0, 1.0, 5.0], [1.0, 0.0, 1.0], [5.0, 1.0, 0.0]]
    with pytest.raises(NonMetric) as excinfo:
        build_space(["a", "b", "c"], {"type": "matrix", "matrix": table}, [1, 1, 1])
    assert excinfo.value.details["triple"] == ["a", "b", "c"]


@pytest.mark.parametrize(
    ("table", "fragment"),
    [
        ([[0.0, 1.0], [2.0, 0.0]], "!="),
        ([[0.0, 0.0], [0.0, 0.0]], "distance"),
        ([[1.0, 1.0], [1.0, 0.0]], "must be 0"),
    ],
)
def test_non_metric_tables(table, fragment) -> None:
    with pytest.raises(NonMetric, match=fragment):
        build_space(["a", "b"], {"type": "matrix", "matrix": table}, [1, 1])


def test_measure_errors() -> None:
    with pytest.raises(NegativeMass):
        _line([0.0, 1.0], [0.5, -0.5])
    with pytest.raises(ZeroTotalMass):
        _line([0.0, 1.0], [0.0, 0.0])
    with pytest.raises(EmptySpace):
        build_space([], {"type": "matrix", "matrix": []}, [])
    with pytest.raises(ValidationError):
        build_space(["a", "a"], {"type": "matrix", "matrix": [[0, 1], [1, 0]]}, [1, 1])


def test_diameter_matches_pair_scan() -> None:
    space = _line([0.0, 0.4, 1.0])
    assert space.diameter() == 1.0

    rng = np.random.default_rng(3)
    coords = rng.uniform(0, 1, (9, 2))
    cloud = build_space([str(i) for i in range(9)], {"type": "euclidean", "coords": coords}, [1] * 9)
    scan = max(float(np.linalg.norm(coords[i] - coords[j])) for i in range(9) for j in range(9))
    assert cloud.diameter() == pytest.approx(scan, rel=1e-12)


def test_doubling_constant_two_points(two_point) -> None:
    space, _ = two_point
    assert space.doubling_constant() == pytest.approx(2.0)


def test_doubling_constant_grid_is_at_least_one() -> None:
    space = _line(list(np.linspace(0, 1, 12)))
    D = space.doubling_constant()
    assert math.isfinite(D) and D >= 1.0


def test_normalized_space() -> None:
    space = _line([0.0, 1.0, 3.0], [1.0, 2.0, 1.0])
    assert not space.is_probability
    prob = space.normalized()
    assert prob.is_probability
    assert prob.mass.tolist() == [0.25, 0.5, 0.25]


def test_index_of() -> None:
    space = _line([0.0, 1.0])
    assert space.index_of("p1") == 1
    assert space.index_of(0) == 0
    with pytest.raises(ResolutionError):
        space.index_of("nope")


#***** balls *****


def test_single_point_family() -> None:
    space = build_space(["x"], {"type": "matrix", "matrix": [[0.0]]}, [1.0])
    family = enumerate_balls(space, BallScheme(radius_grid=(1.0,)))
    assert len(family) == 1
    assert family.weights.tolist() == [1.0]


def test_two_point_enumeration_collapses_duplicates() -> None:
    space = build_space(["a", "b"], {"type": "matrix", "matrix": [[0.0, 1.0], [1.0, 0.0]]}, [0.5, 0.5])
    family = enumerate_balls(space, BallScheme(radius_grid=(0.5, 1.0)))
    members = [set(m) for _, _, m in family.balls]
    assert members == [{"a"}, {"b"}, {"a", "b"}]
    assert len(family.collapsed) == 1
    assert family.collapsed[0]["center"] == "b"
    assert family.weights.tolist() == pytest.approx([4 / 7, 2 / 7, 1 / 7], rel=1e-12)
    assert family.has_full_ball and family.covers_singletons


@pytest.mark.parametrize(
    ("grid", "bound"),
    [((2.0,), "min"), ((0.1, 0.5), "max"), ((0.5, 0.2, 1.0), "increasing"), ((), "nonempty")],
)
def test_bad_radius_grids(two_point, grid, bound) -> None:
    space, _ = two_point
    with pytest.raises(BadRadiusGrid) as excinfo:
        enumerate_balls(space, BallScheme(radius_grid=grid))
    assert excinfo.value.details["bound"] == bound


def test_default_radius_grid_brackets_the_space() -> None:
    space = _line([0.0, 0.25, 1.0])
    grid = default_radius_grid(space)
    assert grid[0] < space.min_positive_distance()
    assert grid[-1] >= space.diameter()


def test_enumeration_is_deterministic_and_normalized(line3) -> None:
    space, family = line3
    again = enumerate_balls(space, BallScheme())
    assert np.array_equal(family.centers, again.centers)
    assert np.array_equal(family.weights, again.weights)
    assert abs(family.weights.sum() - 1.0) <= 1e-12
    assert np.array_equal(family.recompute_members(), family.members)


def test_uniform_weight_rule(line3) -> None:
    space, _ = line3
    family = enumerate_balls(space, BallScheme(weight_rule="uniform"))
    assert np.allclose(family.weights, 1.0 / len(family))


def test_ball_integral_examples(two_point) -> None:
    space, family = two_point
    f = SampledFunction([1.0, -1.0])
    assert ball_integral(space, family, 2, f) == 0.0
    assert ball_integral(space, family, 0, f) == 0.5
    assert ball_integral(space, family, 1, SampledFunction([0.0, 0.0])) == 0.0
    with pytest.raises(IndexOutOfRange):
        ball_integral(space, family, 3, f)


def test_function_alignment(two_point) -> None:
    space, family = two_point
    with pytest.raises(ValidationError):
        ball_integral(space, family, 0, SampledFunction([1.0, 2.0, 3.0]))
    with pytest.raises(ValidationError):
        SampledFunction([1.0, float("nan")])


def test_space_file_round_trip(tmp_path, line3) -> None:
    space, _ = line3
    path = tmp_path / "space.json"
    save_space(space, path)
    loaded = load_space(path)
    assert loaded.point_ids == space.point_ids
    assert np.array_equal(loaded.dist, space.dist)
    assert np.array_equal(loaded.mass, space.mass)
