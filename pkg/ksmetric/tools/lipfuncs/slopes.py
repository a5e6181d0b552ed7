"""
tools.lipfuncs.slopes

Difference quotients of sampled functions.

    lip_constant() --> max |f(x) - f(y)| / d(x, y) over pairs
    slope() --> local slope |grad f|(x) at neighborhood radius h
    feasible_envelope() --> canonical feasible gradient witness
    feasibility_residual() --> largest pair violation of a witness over positive-mass pairs
"""

from __future__ import annotations

import numpy as np

from ...errors import UsageError
from ...functions import GradientWitness


def _quotients(space, f) -> np.ndarray:
    """
    n x n matrix of |f(x) - f(y)| / d(x, y), zero on the diagonal.
    """
    f.check_aligned(space)
    n = space.n_points
    diff = np.abs(f.values[:, None] - f.values[None, :])
    safe = np.where(np.eye(n, dtype=bool), 1.0, space.dist)
    q = diff / safe
    np.fill_diagonal(q, 0.0)
    return q


def lip_constant(space, f) -> float:
    if space.n_points < 2:
        return 0.0
    return float(_quotients(space, f).max())


def slope(space, f, x, h) -> float:
    """
    max over y != x with d(x, y) <= h of |f(y) - f(x)| / d(x, y); 0 without such y.
    """
    if not h > 0:
        raise UsageError(f"neighborhood radius must be positive, got {h}", details={"h": h})
    f.check_aligned(space)
    i = space.index_of(x)
    near = (space.dist[i] <= h) & (np.arange(space.n_points) != i)
    if not near.any():
        return 0.0
    diff = np.abs(f.values[near] - f.values[i])
    return float(np.max(diff / space.dist[i][near]))


def feasible_envelope(space, f) -> GradientWitness:
    """
    g(x) = max_{y != x} |f(x) - f(y)| / d(x, y); feasible with residual 0.
    """
    if space.n_points < 2:
        return GradientWitness(np.zeros(space.n_points), 0.0)
    return GradientWitness(_quotients(space, f).max(axis=1), 0.0)


def feasibility_residual(space, f, g) -> float:
    """
    max over positive-mass pairs of (|f(x) - f(y)| - d(x, y) (g(x) + g(y)))_+.
    """
    g = np.asarray(g, dtype=float)
    active = np.flatnonzero(space.mass > 0)
    if active.size < 2:
        return 0.0
    i, j = np.triu_indices(active.size, 1)
    a, b = active[i], active[j]
    viol = np.abs(f.values[a] - f.values[b]) - space.dist[a, b] * (g[a] + g[b])
    return float(max(0.0, viol.max()))
