"""
tools.spacefuncs.geometry

Geometric constants of a space. All functions are exposed as MetricMeasureSpace methods.

    diameter() --> largest pairwise distance
    min_positive_distance() --> smallest distance between distinct points
    doubling_constant() --> sup of mu(B(x,2r)) / mu(B(x,r)) over balls of positive mass
    normalized() --> copy of the space rescaled to total mass 1
"""

from __future__ import annotations

import math

import numpy as np


def diameter(self) -> float:
    """
    Max over all pairs of d(x, y); 0 for a single point.
    """
    return float(self.dist.max())


def min_positive_distance(self) -> float:
    """
    Smallest distance between distinct points; inf for a single point.
    """
    if self.n_points < 2:
        return math.inf
    off = self.dist[~np.eye(self.n_points, dtype=bool)]
    return float(off.min())


def doubling_constant(self) -> float:
    """
    Exact doubling constant of the atomic measure.

    Ball masses only change at the pairwise distances, so the ratio mu(B(x,2r)) / mu(B(x,r)) is
    maximized with r a pairwise distance or half of one. Balls of zero mass are skipped.
    Returns 1 for a single point.
    """

    n = self.n_points
    best = 1.0
    if n == 1:
        return best

    for c in range(n):
        order = np.argsort(self.dist[c], kind="stable")
        d_sorted = self.dist[c][order]
        cum_mass = np.cumsum(self.mass[order])

        steps = d_sorted[1:]
        radii = np.concatenate([steps, steps / 2.0])

        #cum_mass[k] is the mass of the k+1 nearest points; d_sorted[0] = 0 so counts are >= 1
        inner = cum_mass[np.searchsorted(d_sorted, radii, side="right") - 1]
        outer = cum_mass[np.searchsorted(d_sorted, 2.0 * radii, side="right") - 1]

        keep = inner > 0
        if keep.any():
            best = max(best, float(np.max(outer[keep] / inner[keep])))

    return best


def normalized(self):
    """
    Probability-mode copy of this space (masses divided by the total mass).
    """
    return type(self)(
        self.point_ids,
        self.dist,
        self.mass / self.total_mass,
        coords=self.coords,
        metric_type=self.metric_type,
        validate=False,
    )
