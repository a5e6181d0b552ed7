"""
tools.sobolevfuncs.grid

Sobolev norms on uniform Euclidean grids with finite-difference derivatives.

    grid_weak_derivative() --> D^alpha f by repeated second-order differences per axis
    wkp_norm() --> (sum_{|alpha| <= k} ||D^alpha f||_L^q^q)^(1/q)
    wskp_norm() --> (sum_{|alpha| <= k} ||D^alpha f||_KS^p^p)^(1/p)
    wsk2_inner() --> sum_{|alpha| <= k} <D^alpha f, D^alpha g>_KS^2
    euclid_embedding_report() --> ||f||_WS^{k,q} <= ||f||_W^{k,q}
"""

from __future__ import annotations

import logging
import math

import numpy as np

from ...errors import GridTooSmall, UsageError
from ...functions import SampledFunction
from ...gridspec import MultiIndex, multi_indices
from ..constants import get_tolerance
from ..misc import leq, make_record
from ..normfuncs.norms import ks_inner, ks_norm, lp_norm
from ..typechecks import check_exponent, format_exponent

logger = logging.getLogger(__name__)


def _check_order(grid, order):
    if order < 0:
        raise UsageError(f"Sobolev order must be >= 0, got {order}")
    if order > 0 and grid.n_per_axis < 2 * order + 1:
        raise GridTooSmall(
            f"order {order} needs at least {2 * order + 1} nodes per axis, grid has {grid.n_per_axis}",
            details={"order": order, "n_per_axis": grid.n_per_axis},
        )


def grid_weak_derivative(grid, f, alpha) -> SampledFunction:
    """
    Central differences inside, second-order one-sided differences at the boundary (exact on
    quadratics), applied alpha_i times along axis i.
    """
    alpha = MultiIndex.coerce(alpha, grid.dim)
    _check_order(grid, alpha.order)
    if len(f.values) != grid.n_nodes:
        raise UsageError(f"function has {len(f.values)} values for {grid.n_nodes} grid nodes")

    arr = f.values.reshape(grid.shape)
    for axis, count in enumerate(alpha.alpha):
        for _ in range(count):
            arr = np.gradient(arr, grid.spacing, axis=axis, edge_order=2)
    return SampledFunction(np.ascontiguousarray(arr).reshape(-1))


def _derivatives(grid, f, k):
    _check_order(grid, k)
    return [grid_weak_derivative(grid, f, alpha) for alpha in multi_indices(grid.dim, k)]


def _combine(norms, r) -> float:
    norms = np.asarray(norms)
    if math.isinf(r):
        return float(norms.max())
    top = float(norms.max())
    if top == 0.0:
        return 0.0
    return top * float(np.sum((norms / top) ** r)) ** (1.0 / r)


def wkp_norm(grid, f, k, q) -> float:
    q = check_exponent(q, name="q")
    space = grid.to_space()
    return _combine([lp_norm(space, d, q) for d in _derivatives(grid, f, k)], q)


def wskp_norm(grid, family, f, k, p) -> float:
    p = check_exponent(p)
    space = grid.to_space()
    return _combine([ks_norm(space, family, d, p) for d in _derivatives(grid, f, k)], p)


def wsk2_inner(grid, family, f, g, k) -> float:
    space = grid.to_space()
    pairs = zip(_derivatives(grid, f, k), _derivatives(grid, g, k))
    return float(sum(ks_inner(space, family, df, dg) for df, dg in pairs))


def euclid_embedding_report(grid, family, f, k, q) -> dict:
    q = check_exponent(q, name="q")
    space = grid.to_space()
    if not space.is_probability:
        logger.warning("euclid_embedding_report expects probability mode (total mass %.6g)", space.total_mass)
    ws = wskp_norm(grid, family, f, k, q)
    w = wkp_norm(grid, f, k, q)
    return make_record(
        "euclid",
        inputs={"k": int(k), "q": format_exponent(q), "dim": grid.dim, "n_per_axis": grid.n_per_axis},
        values={"wskq": ws, "wkq": w},
        flags={"embedding_ok": leq(ws, w, get_tolerance("inequality"))},
        notes=["continuum measure replaced by the grid node measure"],
    )
