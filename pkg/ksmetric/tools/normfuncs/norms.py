"""
tools.normfuncs.norms

L^q and Kuelbs-Steadman norms.

    lp_norm() --> (sum |f|^q mu)^(1/q), or the max over positive-mass points at q = inf
    ks_norm() --> weighted l^p norm of the ball integrals; unweighted sup at p = inf
    ks_inner() --> KS^2 inner product
    embedding_constant() --> C(p, q) with ||f||_KS^p <= C ||f||_L^q
"""

from __future__ import annotations

import math

import numpy as np

from ..spacefuncs.balls import ball_integrals
from ...normparams import NormParams, exponent_of


def _weighted_power_mean(y, tau, p) -> float:
    """
    (sum tau |y|^p)^(1/p), scaled by max |y| so large exponents cannot overflow.
    """
    y = np.abs(y)
    top = float(y.max()) if y.size else 0.0
    if top == 0.0:
        return 0.0
    return top * float(np.sum(tau * (y / top) ** p)) ** (1.0 / p)


def lp_norm(space, f, q) -> float:
    q = exponent_of(q, name="q")
    f.check_aligned(space)
    absf = np.abs(f.values)
    if math.isinf(q):
        support = space.mass > 0
        return float(absf[support].max())
    return _weighted_power_mean(absf, space.mass, q)


def ks_norm(space, family, f, p) -> float:
    """
    ``p`` may be a NormParams; its family is used when ``family`` is None.
    """
    if family is None and isinstance(p, NormParams):
        family = p.family
    p = exponent_of(p)
    y = ball_integrals(space, family, f)
    if math.isinf(p):
        return float(np.abs(y).max())
    return _weighted_power_mean(y, family.weights, p)


def ks_inner(space, family, f, g) -> float:
    yf = ball_integrals(space, family, f)
    yg = ball_integrals(space, family, g)
    return float(np.sum(family.weights * yf * yg))


def embedding_constant(space, family, p, q) -> float:
    """
    Sharp C(p, q): max_r mu(B_r)^(1 - 1/q) for q < inf or p = inf; (sum tau mu(B_r)^p)^(1/p)
    for q = inf and p < inf.
    """
    p = exponent_of(p)
    q = exponent_of(q, name="q")
    masses = family.ball_mass
    if math.isinf(q) and not math.isinf(p):
        return _weighted_power_mean(masses, family.weights, p)
    exponent = 1.0 if math.isinf(q) else 1.0 - 1.0 / q
    return float(np.max(masses ** exponent))
