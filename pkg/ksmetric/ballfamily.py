"""
Class representing an ordered, weighted family of closed balls.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

from .errors import IndexOutOfRange, ValidationError

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class BallScheme:
    """
    Parameters of the ball enumeration.

    :param radius_grid: strictly increasing radii; None selects the default geometric ladder.
    :type radius_grid: sequence of float, optional; default: None

    :param center_order: point ids in the order centers are enumerated; None keeps space order.
    :type center_order: sequence of str, optional; default: None

    :param weight_rule: "geometric" (raw weight ratio**position) or "uniform".
    :type weight_rule: str, optional; default: "geometric"

    :param ratio: the geometric ratio, in (0, 1].
    :type ratio: float, optional; default: 0.5
    """

    radius_grid: Optional[tuple] = None
    center_order: Optional[tuple] = None
    weight_rule: str = "geometric"
    ratio: float = 0.5

    def to_dict(self) -> dict:
        return {
            "radius_grid": None if self.radius_grid is None else [float(r) for r in self.radius_grid],
            "center_order": None if self.center_order is None else list(self.center_order),
            "weight_rule": self.weight_rule,
            "ratio": self.ratio,
        }

    @classmethod
    def from_dict(cls, data: Optional[dict]) -> "BallScheme":
        data = data or {}
        grid = data.get("radius_grid")
        order = data.get("center_order")
        return cls(
            radius_grid=None if grid is None else tuple(float(r) for r in grid),
            center_order=None if order is None else tuple(str(c) for c in order),
            weight_rule=data.get("weight_rule", "geometric"),
            ratio=float(data.get("ratio", 0.5)),
        )


class BallFamily:
    """
    Finite surrogate of the countable ball family {B_r} with weights tau_r summing to 1.
    Built by :func:`ksmetric.enumerate_balls` or :meth:`BallFamily.from_balls`.

    :param space: the ambient space.
    :type space: MetricMeasureSpace

    :param centers: center index of each ball.
    :type centers: array-like of int

    :param radii: radius of each ball.
    :type radii: array-like of float

    :param weights: positive weights, already normalized to sum 1.
    :type weights: array-like of float

    :param collapsed: (center, radius, kept ball) records of duplicates dropped during enumeration.
    :type collapsed: list of dict, optional; default: None
    """

    from .tools.spacefuncs.balls import recompute_members, to_dict

    def __init__(self, space, centers, radii, weights, collapsed=None):
        centers = np.asarray(centers, dtype=int).reshape(-1)
        radii = np.asarray(radii, dtype=float).reshape(-1)
        weights = np.asarray(weights, dtype=float).reshape(-1)

        if not (len(centers) == len(radii) == len(weights)):
            raise ValidationError("centers, radii and weights must have equal length")
        if len(centers) == 0:
            raise ValidationError("a ball family needs at least one ball")
        if np.any(centers < 0) or np.any(centers >= space.n_points):
            raise ValidationError("ball center out of range")
        if np.any(radii < 0) or not np.all(np.isfinite(radii)):
            raise ValidationError("radii must be finite and nonnegative")
        if np.any(weights <= 0) or not np.all(np.isfinite(weights)):
            raise ValidationError("ball weights must be positive and finite")

        #closed balls
        members = space.dist[centers] <= radii[:, None]

        for arr in (centers, radii, weights, members):
            arr.setflags(write=False)

        self._space = space
        self._centers = centers
        self._radii = radii
        self._weights = weights
        self._members = members
        self._ball_mass = (members * space.mass).sum(axis=1)
        self._ball_mass.setflags(write=False)
        self._collapsed = list(collapsed or [])

        counts = members.sum(axis=1)
        full = np.flatnonzero(counts == space.n_points)
        self._full_ball_index = int(full[0]) if full.size else None
        singletons = np.zeros(space.n_points, dtype=bool)
        singletons[centers[counts == 1]] = True
        self._covers_singletons = bool(singletons.all())

    @classmethod
    def from_balls(cls, space, balls: Sequence, weights=None) -> "BallFamily":
        """
        Explicit family from (center_id, radius) pairs, kept in the given order without collapsing.
        Weights default to uniform and are renormalized to sum 1.
        """
        from .tools.spacefuncs.balls import _normalize_weights

        centers = [space.index_of(c) for c, _ in balls]
        radii = [float(r) for _, r in balls]
        if weights is None:
            weights = np.full(len(centers), 1.0 / max(len(centers), 1))
        else:
            weights = np.asarray(weights, dtype=float)
            if abs(float(np.sum(weights)) - 1.0) > 1e-12:
                logger.warning("explicit ball weights sum to %.17g; renormalizing", float(np.sum(weights)))
            weights = _normalize_weights(weights)
        return cls(space, centers, radii, weights)

    def __len__(self):
        return len(self._centers)

    @property
    def space(self):
        return self._space

    @property
    def centers(self) -> np.ndarray:
        return self._centers

    @property
    def radii(self) -> np.ndarray:
        return self._radii

    @property
    def weights(self) -> np.ndarray:
        """
        tau_r per ball, summing to 1. Read-only.
        """
        return self._weights

    @property
    def members(self) -> np.ndarray:
        """
        Boolean membership matrix, one row per ball (the indicator chi_r). Read-only.
        """
        return self._members

    @property
    def ball_mass(self) -> np.ndarray:
        """
        mu(B_r) per ball.
        """
        return self._ball_mass

    @property
    def has_full_ball(self) -> bool:
        return self._full_ball_index is not None

    @property
    def full_ball_index(self) -> Optional[int]:
        """
        Index of the first ball containing every point, or None.
        """
        return self._full_ball_index

    @property
    def covers_singletons(self) -> bool:
        return self._covers_singletons

    @property
    def collapsed(self) -> list:
        return list(self._collapsed)

    @property
    def balls(self) -> list:
        """
        (center_id, radius, member ids) per ball, in family order.
        """
        ids = self._space.point_ids
        return [
            (ids[c], float(r), tuple(ids[i] for i in np.flatnonzero(row)))
            for c, r, row in zip(self._centers, self._radii, self._members)
        ]

    def check_index(self, r) -> int:
        if isinstance(r, bool) or not isinstance(r, (int, np.integer)) or not 0 <= r < len(self):
            raise IndexOutOfRange(f"ball index {r} out of range [0, {len(self)})", details={"index": r, "balls": len(self)})
        return int(r)

    def __repr__(self):
        return (
            f"BallFamily(balls={len(self)}, has_full_ball={self.has_full_ball}, "
            f"covers_singletons={self.covers_singletons})"
        )
