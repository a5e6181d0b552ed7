"""
Deterministic synthetic spaces and functions.

    gen_space() --> grid-1d, grid-2d, random-cloud or line-points space
    gen_function() --> random-uniform, random-nonnegative, random-lipschitz, polynomial or indicator samples
"""

from __future__ import annotations

import logging
import string

import numpy as np

from ..errors import BadExpression, SizeCap, UsageError
from ..functions import SampledFunction
from ..gridspec import GridSpec
from ..tools.constants import SIZE_CAP
from ..tools.lipfuncs.slopes import lip_constant
from ..tools.spacefuncs.instantiation import build_space
from .expressions import evaluate_expression

logger = logging.getLogger(__name__)

SPACE_KINDS = ("grid-1d", "grid-2d", "random-cloud", "line-points")
FUNCTION_KINDS = ("random-uniform", "random-nonnegative", "random-lipschitz", "polynomial", "indicator")


def _rng(seed) -> np.random.Generator:
    return np.random.default_rng(np.random.SeedSequence(int(seed)))


def _point_ids(n, letters=False) -> list:
    if letters and n <= len(string.ascii_lowercase):
        return list(string.ascii_lowercase[:n])
    width = len(str(n - 1))
    return ["p" + str(i).zfill(width) for i in range(n)]


def gen_space(kind, size, seed=0, probability=True):
    """
    ``size`` is the number of points, except for grid-2d where it is nodes per axis.

    - grid-1d / grid-2d: the unit-cube grid (uniform node masses)
    - line-points: 0 and 1 plus size-2 uniform points in between, equal masses
    - random-cloud: uniform points in [0, 1]^2 with masses drawn from [0.5, 1.5]
    """

    if kind not in SPACE_KINDS:
        raise UsageError(f"unknown space kind '{kind}', expected one of {SPACE_KINDS}")
    size = int(size)
    if size < 1:
        raise UsageError(f"space size must be >= 1, got {size}")
    total = size**2 if kind == "grid-2d" else size
    if total > SIZE_CAP:
        raise SizeCap(f"{kind} of size {size} has {total} points, cap is {SIZE_CAP}", details={"points": total, "cap": SIZE_CAP})

    if kind in ("grid-1d", "grid-2d"):
        dim = 1 if kind == "grid-1d" else 2
        return GridSpec.unit_cube(dim, size, probability).to_space()

    rng = _rng(seed)
    if kind == "line-points":
        inner = np.sort(rng.uniform(0.0, 1.0, max(size - 2, 0)))
        coords = np.array([0.0]) if size == 1 else np.concatenate([[0.0], inner, [1.0]])
        mass = np.ones(size)
        ids = _point_ids(size, letters=True)
    else:
        coords = rng.uniform(0.0, 1.0, (size, 2))
        mass = rng.uniform(0.5, 1.5, size)
        ids = _point_ids(size)

    if probability:
        mass = mass / mass.sum()
    logger.debug("generated %s space with %d points", kind, size)
    return build_space(ids, {"type": "euclidean", "coords": coords}, mass)


def _random_lipschitz(space, rng, L) -> np.ndarray:
    values = rng.uniform(-1.0, 1.0, space.n_points)
    measured = lip_constant(space, SampledFunction(values))
    if measured > 0:
        values = values * (L / measured)
    #rounding in the rescale can overshoot L by an ulp
    while lip_constant(space, SampledFunction(values)) > L:
        values = values * (1.0 - 1e-12)
    return values


def gen_function(kind, space, seed=0, **params) -> SampledFunction:
    """
    Parameters per kind: ``L`` (random-lipschitz, default 1), ``expr`` (polynomial),
    ``ids`` (indicator: point ids set to 1), ``low``/``high`` (random-uniform, default -1/1).
    """

    if kind not in FUNCTION_KINDS:
        raise UsageError(f"unknown function kind '{kind}', expected one of {FUNCTION_KINDS}")
    rng = _rng(seed)

    if kind == "random-uniform":
        values = rng.uniform(float(params.get("low", -1.0)), float(params.get("high", 1.0)), space.n_points)
    elif kind == "random-nonnegative":
        values = rng.uniform(0.0, float(params.get("high", 1.0)), space.n_points)
    elif kind == "random-lipschitz":
        L = float(params.get("L", 1.0))
        if not L >= 0:
            raise UsageError(f"Lipschitz bound must be >= 0, got {L}")
        values = _random_lipschitz(space, rng, L)
    elif kind == "polynomial":
        if space.coords is None:
            raise BadExpression("expressions need a space with coordinates")
        values = evaluate_expression(params.get("expr", ""), space.coords)
    else:
        ids = params.get("ids") or []
        if isinstance(ids, str):
            ids = [s for s in ids.split(",") if s]
        values = np.zeros(space.n_points)
        for pid in ids:
            values[space.index_of(pid)] = 1.0

    return SampledFunction(values)
