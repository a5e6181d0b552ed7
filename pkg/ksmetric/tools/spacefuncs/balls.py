"""
tools.spacefuncs.balls

Ball-family enumeration and ball integrals.

    default_radius_grid() --> geometric radius ladder covering singletons and the full space
    enumerate_balls() --> BallFamily in Cantor-pairing order over (center, radius)
    ball_integral() --> integral of f over one ball
    ball_integrals() --> integrals of f over every ball, in family order
    recompute_members() --> exposed; membership rebuilt from (center, radius)
    to_dict() --> exposed; JSON-ready family description
"""

from __future__ import annotations

import logging

import numpy as np

from ...errors import BadRadiusGrid, UsageError, ValidationError

logger = logging.getLogger(__name__)

#smallest raw geometric weight before the ratio is raised
_MIN_RAW_WEIGHT = 1e-280

_WEIGHT_RULES = ("geometric", "uniform")


def _normalize_weights(raw):
    raw = np.asarray(raw, dtype=float)
    return raw / np.sum(raw)


def default_radius_grid(space) -> list:
    """
    r_j = r_min * 2**j with r_min half the smallest positive distance, up to the first r_j >= diameter.
    A single point gets [1.0].
    """

    if space.n_points == 1:
        return [1.0]
    r = space.min_positive_distance() / 2.0
    diam = space.diameter()
    grid = [r]
    while grid[-1] < diam:
        grid.append(grid[-1] * 2.0)
    return grid


def _check_radius_grid(space, grid) -> np.ndarray:
    grid = np.asarray(grid, dtype=float).reshape(-1)
    if grid.size == 0:
        raise BadRadiusGrid("radius grid is empty", details={"bound": "nonempty"})
    if not np.all(np.isfinite(grid)) or np.any(grid < 0):
        raise BadRadiusGrid("radii must be finite and nonnegative", details={"bound": "nonnegative"})
    if np.any(np.diff(grid) <= 0):
        raise BadRadiusGrid("radius grid must be strictly increasing", details={"bound": "increasing"})

    min_pos = space.min_positive_distance()
    if space.n_points > 1 and not grid[0] < min_pos:
        raise BadRadiusGrid(
            f"smallest radius {grid[0]} must be below the minimal positive distance {min_pos}",
            details={"bound": "min", "radius": float(grid[0]), "limit": min_pos},
        )
    diam = space.diameter()
    if not grid[-1] >= diam:
        raise BadRadiusGrid(
            f"largest radius {grid[-1]} must reach the diameter {diam}",
            details={"bound": "max", "radius": float(grid[-1]), "limit": diam},
        )
    return grid


def _raw_weights(count: int, rule: str, ratio: float) -> np.ndarray:
    if rule == "uniform":
        return np.ones(count)

    if count > 1 and ratio ** (count - 1) < _MIN_RAW_WEIGHT:
        raised = _MIN_RAW_WEIGHT ** (1.0 / (count - 1))
        logger.warning("geometric ratio %g underflows over %d balls; using %.6g", ratio, count, raised)
        ratio = raised
    return ratio ** np.arange(count, dtype=float)


def _diagonal_pairs(n_centers: int, n_radii: int):
    """
    (center, radius) index pairs ordered by the Cantor pairing (i + j)(i + j + 1)/2 + j.
    """
    for s in range(n_centers + n_radii - 1):
        for j in range(max(0, s - n_centers + 1), min(s, n_radii - 1) + 1):
            yield s - j, j


def enumerate_balls(space, scheme=None):
    """
    Enumerate closed balls B(center, radius) over the scheme's centers and radii.

    Pairs are visited in Cantor-pairing order; a ball whose member set was already produced
    is dropped (the first occurrence is kept, which for a fixed center is the smallest radius)
    and recorded in ``family.collapsed``. Weights follow the scheme's rule by position in the
    final list and are renormalized to sum 1.
    """

    from ...ballfamily import BallFamily, BallScheme

    if scheme is None:
        scheme = BallScheme()
    elif isinstance(scheme, dict):
        scheme = BallScheme.from_dict(scheme)

    if scheme.weight_rule not in _WEIGHT_RULES:
        raise UsageError(f"weight rule must be one of {_WEIGHT_RULES}, got '{scheme.weight_rule}'")
    if not 0 < scheme.ratio <= 1:
        raise UsageError(f"geometric ratio must lie in (0, 1], got {scheme.ratio}")

    grid = _check_radius_grid(space, default_radius_grid(space) if scheme.radius_grid is None else scheme.radius_grid)

    if scheme.center_order is None:
        center_order = np.arange(space.n_points)
    else:
        center_order = np.array([space.index_of(c) for c in scheme.center_order], dtype=int)
        if sorted(center_order.tolist()) != list(range(space.n_points)):
            raise ValidationError("center order must list every point exactly once")

    seen = {}
    centers, radii, collapsed = [], [], []
    ids = space.point_ids
    for i, j in _diagonal_pairs(len(center_order), len(grid)):
        c = int(center_order[i])
        row = space.dist[c] <= grid[j]
        key = np.packbits(row).tobytes()
        if key in seen:
            collapsed.append({"center": ids[c], "radius": float(grid[j]), "kept": seen[key]})
            continue
        seen[key] = len(centers)
        centers.append(c)
        radii.append(float(grid[j]))

    weights = _normalize_weights(_raw_weights(len(centers), scheme.weight_rule, scheme.ratio))
    logger.debug("enumerated %d balls (%d duplicates collapsed)", len(centers), len(collapsed))
    return BallFamily(space, centers, radii, weights, collapsed=collapsed)


def ball_integrals(space, family, f) -> np.ndarray:
    """
    All ball integrals sum_{x in B_r} f(x) mu({x}), rows reduced in a fixed order.
    """
    f.check_aligned(space)
    return (family.members * (f.values * space.mass)).sum(axis=1)


def ball_integral(space, family, r, f) -> float:
    """
    Integral of f over ball r.
    """
    r = family.check_index(r)
    f.check_aligned(space)
    return float((family.members[r] * (f.values * space.mass)).sum())


def recompute_members(self) -> np.ndarray:
    """
    Membership rebuilt from (center, radius) against the space's distance table.
    """
    return self.space.dist[self.centers] <= self.radii[:, None]


def to_dict(self) -> dict:
    return {
        "balls": [
            {"center": c, "radius": r, "members": list(m), "weight": float(w), "mass": float(bm)}
            for (c, r, m), w, bm in zip(self.balls, self.weights, self.ball_mass)
        ],
        "has_full_ball": self.has_full_ball,
        "covers_singletons": self.covers_singletons,
        "collapsed": self.collapsed,
    }
