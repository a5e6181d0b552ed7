"""
Class representing a finite metric measure space.
"""
from __future__ import annotations

from typing import Optional, Sequence

import numpy as np

from .errors import EmptySpace, NegativeMass, ResolutionError, ValidationError, ZeroTotalMass


class MetricMeasureSpace:
    """
    A finite point set with a metric and an atomic measure. Instances are immutable; use
    :func:`ksmetric.build_space` to construct one from a metric spec.

    :param point_ids: ordered, unique point identifiers.
    :type point_ids: sequence of str

    :param dist: symmetric distance table aligned to ``point_ids``.
    :type dist: array-like, n x n

    :param mass: per-point measure atoms, all >= 0 with a positive finite total.
    :type mass: array-like, n

    :param coords: point coordinates when the metric is Euclidean.
    :type coords: array-like, n x dim, optional; default: None

    :param metric_type: "euclidean" or "matrix"; controls how the space is serialized.
    :type metric_type: str, optional; default: "matrix"
    """

    #exposed geometry and serialization, defined in tools/spacefuncs
    from .tools.spacefuncs.geometry import (
        diameter,
        min_positive_distance,
        doubling_constant,
        normalized,
    )
    from .tools.spacefuncs.instantiation import to_dict, validate_metric

    def __init__(
        self,
        point_ids: Sequence[str],
        dist,
        mass,
        coords=None,
        metric_type: str = "matrix",
        validate: bool = True,
    ):
        point_ids = tuple(str(p) for p in point_ids)
        if not point_ids:
            raise EmptySpace("a space needs at least one point")
        if len(set(point_ids)) != len(point_ids):
            raise ValidationError("point ids must be unique")

        n = len(point_ids)
        dist = np.array(dist, dtype=float)
        mass = np.array(mass, dtype=float).reshape(-1)
        if dist.shape != (n, n):
            raise ValidationError(f"distance table must be {n}x{n}, got {dist.shape}")
        if mass.shape != (n,):
            raise ValidationError(f"measure must have {n} entries, got {mass.shape[0]}")
        if not np.all(np.isfinite(dist)):
            raise ValidationError("distances must be finite")
        if not np.all(np.isfinite(mass)):
            raise ValidationError("mass atoms must be finite")

        negative = np.flatnonzero(mass < 0)
        if negative.size:
            raise NegativeMass(
                f"negative mass at point '{point_ids[negative[0]]}'",
                details={"point": point_ids[negative[0]], "mass": float(mass[negative[0]])},
            )
        total = float(np.sum(mass))
        if not total > 0:
            raise ZeroTotalMass("total mass must be positive")

        if coords is not None:
            coords = np.array(coords, dtype=float)
            if coords.ndim == 1:
                coords = coords[:, None]
            coords.setflags(write=False)

        dist.setflags(write=False)
        mass.setflags(write=False)

        self._point_ids = point_ids
        self._index = {pid: i for i, pid in enumerate(point_ids)}
        self._dist = dist
        self._mass = mass
        self._total_mass = total
        self._coords = coords
        self._metric_type = metric_type

        if validate:
            self.validate_metric()

    @property
    def point_ids(self) -> tuple:
        """
        Ordered point identifiers. Read-only.
        """
        return self._point_ids

    @property
    def n_points(self) -> int:
        return len(self._point_ids)

    @property
    def dist(self) -> np.ndarray:
        """
        The pairwise distance table. Read-only.
        """
        return self._dist

    @property
    def mass(self) -> np.ndarray:
        """
        Measure atoms mu({x}) aligned to the point ids. Read-only.
        """
        return self._mass

    @property
    def total_mass(self) -> float:
        return self._total_mass

    @property
    def coords(self) -> Optional[np.ndarray]:
        return self._coords

    @property
    def metric_type(self) -> str:
        return self._metric_type

    @property
    def is_probability(self) -> bool:
        return abs(self._total_mass - 1.0) <= 1e-12

    def index_of(self, point) -> int:
        """
        Resolve a point id (or an integer index) to its position.
        """
        if isinstance(point, (int, np.integer)) and not isinstance(point, bool):
            if 0 <= point < self.n_points:
                return int(point)
            raise ResolutionError(f"point index {point} out of range", details={"index": int(point)})
        key = str(point)
        if key not in self._index:
            raise ResolutionError(f"unknown point id '{key}'", details={"point": key})
        return self._index[key]

    def __len__(self):
        return self.n_points

    def __repr__(self):
        return f"MetricMeasureSpace(n_points={self.n_points}, total_mass={self._total_mass:g}, metric={self._metric_type})"
