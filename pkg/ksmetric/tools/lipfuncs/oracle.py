"""
tools.lipfuncs.oracle

Brute-force grid search for the KS^{1,p} semi-norm on spaces of at most 3 points.

    ks1p_oracle() --> minimal feasible ||g||_KS^p over a grid in [0, 2 Lip(f)]^n, refined down to ``step``
"""

from __future__ import annotations

import logging
import math

import numpy as np

from ...errors import TooLarge, UsageError
from ..constants import get_constant
from ..typechecks import check_exponent
from .slopes import lip_constant

logger = logging.getLogger(__name__)

_MAX_POINTS = 3
_COARSE_CELLS = 100
_REFINE = 10
_MAX_RECENTER = 50
_FEASIBILITY = 1e-12


class _GridObjective:
    def __init__(self, space, family, f, p):
        self.active = np.flatnonzero(space.mass > 0)
        m = self.active.size
        i, j = np.triu_indices(m, 1)
        a, b = self.active[i], self.active[j]
        self.pair_i, self.pair_j = i, j
        self.bound = np.abs(f.values[a] - f.values[b]) / space.dist[a, b]
        self.A = family.members[:, self.active] * space.mass[self.active]
        self.tau = family.weights
        self.p = p
        self.m = m

    def best_on(self, axes):
        """
        Minimum of the objective over the feasible points of the product grid ``axes``;
        chunked over the first axis. Returns (value, point) or (inf, None).
        """
        best_value, best_point = math.inf, None
        rest = np.stack([ax.reshape(-1) for ax in np.meshgrid(*axes[1:], indexing="ij")], axis=1) if self.m > 1 else np.zeros((1, 0))
        for x0 in axes[0]:
            pts = np.hstack([np.full((rest.shape[0], 1), x0), rest])
            ok = np.all(pts[:, self.pair_i] + pts[:, self.pair_j] >= self.bound - _FEASIBILITY, axis=1)
            if not ok.any():
                continue
            pts = pts[ok]
            y = np.abs(pts @ self.A.T)
            if math.isinf(self.p):
                vals = y.max(axis=1)
            else:
                top = y.max(axis=1)
                safe = np.where(top > 0, top, 1.0)
                vals = top * ((self.tau * (y / safe[:, None]) ** self.p).sum(axis=1)) ** (1.0 / self.p)
            k = int(np.argmin(vals))
            if vals[k] < best_value:
                best_value, best_point = float(vals[k]), pts[k].copy()
        return best_value, best_point


def _axis(center, half_width, h, upper):
    lo = max(0.0, center - half_width)
    hi = min(upper, center + half_width)
    count = int(round((hi - lo) / h)) + 1
    return lo + h * np.arange(count)


def ks1p_oracle(space, family, f, p, step=None) -> float:
    """
    Exhaustive scan of [0, 2 Lip(f)]^m (m positive-mass points) at spacing 2 Lip(f)/100, then
    windows of +-2 previous spacings scanned at a tenth of the spacing, re-centered while the
    best point sits on a window edge, until the spacing reaches ``step`` (the packaged oracle step when None).
    """

    if space.n_points > _MAX_POINTS:
        raise TooLarge(f"oracle handles at most {_MAX_POINTS} points, got {space.n_points}", details={"points": space.n_points})
    if step is None:
        step = float(get_constant("oracle")["step"])
    if not step > 0:
        raise UsageError(f"oracle step must be positive, got {step}")
    p = check_exponent(p)
    f.check_aligned(space)

    lip = lip_constant(space, f)
    objective = _GridObjective(space, family, f, p)
    if lip == 0.0 or objective.m < 2 or not np.any(objective.bound > 0):
        return 0.0

    upper = 2.0 * lip
    h = max(step, upper / _COARSE_CELLS)
    axes = [_axis(upper / 2.0, upper / 2.0, h, upper) for _ in range(objective.m)]
    value, point = objective.best_on(axes)

    while h > step:
        prev, h = h, max(step, h / _REFINE)
        for _ in range(_MAX_RECENTER):
            axes = [_axis(c, 2.0 * prev, h, upper) for c in point]
            candidate, found = objective.best_on(axes)
            if found is None or candidate >= value:
                break
            value, point = candidate, found
            on_edge = any(
                (c <= ax[0] + 0.5 * h and ax[0] > 0.0) or (c >= ax[-1] - 0.5 * h and ax[-1] < upper)
                for c, ax in zip(point, axes)
            )
            if not on_edge:
                break
        logger.debug("oracle spacing %.3g: %.12g", h, value)
    return value
