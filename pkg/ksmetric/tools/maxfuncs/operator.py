"""
tools.maxfuncs.operator

Hardy-Littlewood maximal operator over closed balls centered at points.

    maximal_function() --> Mf(x) = max over balls B containing x with mu(B) > 0 of the |f| average
    restricted_maximal() --> the same over radii < R
    distribution_function() --> mu({f > t})
"""

from __future__ import annotations

import math

import numpy as np

from ...errors import NoValidBall, UsageError
from ...functions import SampledFunction


def _maximal(space, f, radius_limit=None) -> np.ndarray:
    """
    Per-point maximum of ball averages of |f|, -inf where no positive-mass ball qualifies.

    For a center c the candidate balls are the prefixes of the points sorted by distance to c,
    cut at the end of each tie group; a point at sorted position j lies in every prefix ending at
    or after j, so its best average is a suffix maximum.
    """

    f.check_aligned(space)
    n = space.n_points
    weighted = np.abs(f.values) * space.mass
    out = np.full(n, -np.inf)
    positions = np.arange(n)

    for c in range(n):
        order = np.argsort(space.dist[c], kind="stable")
        d_sorted = space.dist[c][order]
        ends = np.flatnonzero(np.append(d_sorted[1:] != d_sorted[:-1], True))
        if radius_limit is not None:
            ends = ends[d_sorted[ends] < radius_limit]
        if ends.size == 0:
            continue

        ball_mass = np.cumsum(space.mass[order])[ends]
        ball_weight = np.cumsum(weighted[order])[ends]
        valid = ball_mass > 0
        avg = np.full(ends.size, -np.inf)
        avg[valid] = ball_weight[valid] / ball_mass[valid]
        suffix = np.maximum.accumulate(avg[::-1])[::-1]

        first = np.searchsorted(ends, positions, side="left")
        inside = first < ends.size
        best = np.full(n, -np.inf)
        best[inside] = suffix[first[inside]]
        out[order] = np.maximum(out[order], best)

    return out


def maximal_function(space, f, ball_source=None) -> SampledFunction:
    """
    ``ball_source`` is accepted for interface symmetry; the candidate set is always every closed ball
    centered at a point with radius in {0} and the pairwise distances, which realizes the supremum.
    """
    if ball_source not in (None, "all"):
        raise UsageError(f"unsupported ball source '{ball_source}'")
    values = _maximal(space, f)
    missing = np.flatnonzero(np.isneginf(values))
    if missing.size:
        pid = space.point_ids[missing[0]]
        raise NoValidBall(f"point '{pid}' lies in no ball of positive mass", details={"point": pid})
    return SampledFunction(values)


def restricted_maximal(space, f, R) -> SampledFunction:
    """
    Radii < R only; points without a positive-mass candidate ball get 0.
    """
    if not R > 0:
        raise UsageError(f"restriction radius must be positive, got {R}", details={"R": R})
    values = _maximal(space, f, radius_limit=float(R))
    values[np.isneginf(values)] = 0.0
    return SampledFunction(values)


def distribution_function(space, f, t) -> float:
    f.check_aligned(space)
    if math.isnan(t):
        raise UsageError("threshold t is NaN")
    return float(np.sum(space.mass[f.values > t]))
