from __future__ import annotations

import pytest

from ksmetric import BallFamily, BallScheme, build_space, enumerate_balls


@pytest.fixture
def two_point():
    """
    Points a, b at distance 1 with mass 1/2 each; balls {a}, {b}, {a, b} weighted 1/4, 1/4, 1/2.
    """
    space = build_space(["a", "b"], {"type": "matrix", "matrix": [[0.0, 1.0], [1.0, 0.0]]}, [0.5, 0.5])
    family = BallFamily.from_balls(space, [("a", 0.0), ("b", 0.0), ("a", 1.0)], [0.25, 0.25, 0.5])
    return space, family


@pytest.fixture
def line3():
    space = build_space(["a", "b", "c"], {"type": "euclidean", "coords": [[0.0], [0.5], [1.0]]}, [1 / 3] * 3)
    return space, enumerate_balls(space, BallScheme())
