"""
tools.sobolevfuncs.metric

HK-Sobolev norm WS^{1,p} on a finite metric measure space.

    average() --> mu(X)^-1 sum f mu
    ws1p_parts() --> (||f||_KS^p, semi-norm result)
    ws1p_norm() --> ||f||_KS^p + ||f||_KS^{1,p}
    poincare_report() --> ||f - f_X||_KS^p against the semi-norm with the derived constant
    equivalent_norm_check() --> empirical equivalence of ||.||* = ||.||bullet + semi-norm with WS^{1,p}
"""

from __future__ import annotations

import logging
import math

import numpy as np

from ...errors import MissingFullBall, ValidationError, ZeroTotalMass
from ...functions import SampledFunction
from ..constants import get_tolerance
from ..lipfuncs.solver import SolverOptions, ks1p_seminorm
from ..misc import close, leq, make_record
from ..normfuncs.norms import _weighted_power_mean, ks_norm
from ..typechecks import check_exponent, format_exponent

logger = logging.getLogger(__name__)


def average(space, f) -> float:
    f.check_aligned(space)
    if not space.total_mass > 0:
        raise ZeroTotalMass("average needs positive total mass")
    return float(np.sum(f.values * space.mass)) / space.total_mass


def ws1p_parts(space, family, f, p, solver_opts=None):
    p = check_exponent(p)
    if p == 1:
        logger.warning("WS^{1,p} is defined for p > 1; computing p = 1 anyway")
    return ks_norm(space, family, f, p), ks1p_seminorm(space, family, f, p, solver_opts)


def ws1p_norm(space, family, f, p, solver_opts=None) -> float:
    ks, semi = ws1p_parts(space, family, f, p, solver_opts)
    return ks + semi.value


def poincare_constant(space, family, p) -> float:
    """
    diam (1 + tau_*^(-1/p) (sum tau mu(B)^p)^(1/p) / mu(X)) with tau_* the weight of the full ball;
    diam (1 + max mu(B) / mu(X)) at p = inf.
    """
    if not family.has_full_ball:
        raise MissingFullBall("the Poincare constant needs a ball containing every point")
    diam = space.diameter()
    if math.isinf(p):
        second = float(family.ball_mass.max())
    else:
        tau_full = float(family.weights[family.full_ball_index])
        second = tau_full ** (-1.0 / p) * _weighted_power_mean(family.ball_mass, family.weights, p)
    return diam * (1.0 + second / space.total_mass)


def poincare_report(space, family, f, p, solver_opts=None) -> dict:
    opts = solver_opts or SolverOptions.from_defaults()
    p = check_exponent(p)
    constant = poincare_constant(space, family, p)
    if not space.is_probability:
        logger.warning("poincare_report expects probability mode (total mass %.6g)", space.total_mass)

    centered = SampledFunction(f.values - average(space, f))
    lhs = ks_norm(space, family, centered, p)
    semi = ks1p_seminorm(space, family, f, p, opts).value
    stated_constant = 2.0 * space.diameter()

    #absolute slack for the rounding in f - f_X when f is constant on the support
    slack = 1e-12 * max(1.0, float(np.max(np.abs(f.values))) * space.total_mass)
    return make_record(
        "poincare",
        inputs={"p": format_exponent(p)},
        values={
            "lhs": lhs,
            "seminorm": semi,
            "derived_constant": constant,
            "stated_constant": stated_constant,
            "ratio": lhs / semi if semi > 0 else None,
        },
        flags={"ok_derived": leq(lhs, constant * semi * (1.0 + opts.tolerance), 0.0, abs_tol=slack)},
        report_only={"ok_stated": leq(lhs, stated_constant * semi * (1.0 + opts.tolerance), 0.0, abs_tol=slack)},
    )


def _check_norm_axioms(space, f_set, bullet_norm):
    rel = get_tolerance("inequality")
    norms = [float(bullet_norm(f)) for f in f_set]
    for f, value in zip(f_set, norms):
        if not math.isfinite(value) or value < 0:
            raise ValidationError(f"bullet norm returned {value}")
        nonzero = bool(np.any(f.values[space.mass > 0] != 0))
        if nonzero and value == 0:
            raise ValidationError("bullet norm vanishes on a nonzero function")
        if not close(float(bullet_norm(f * -2.5)), 2.5 * value, rel, abs_tol=1e-300):
            raise ValidationError("bullet norm is not absolutely homogeneous on the sample")
    for a, b, na, nb in zip(f_set, f_set[1:], norms, norms[1:]):
        if not leq(float(bullet_norm(a + b)), na + nb, rel):
            raise ValidationError("bullet norm violates the triangle inequality on the sample")
    return norms


def equivalent_norm_check(space, family, f_set, p, bullet_norm, solver_opts=None) -> dict:
    """
    Ratios ||f||* / ||f||_WS^{1,p} with ||f||* = bullet_norm(f) + semi-norm(f); zero functions excluded.
    """

    p = check_exponent(p)
    f_set = list(f_set)
    bullets = _check_norm_axioms(space, f_set, bullet_norm)

    ratios = []
    for f, bullet in zip(f_set, bullets):
        ks, semi = ws1p_parts(space, family, f, p, solver_opts)
        ws = ks + semi.value
        if ws == 0:
            continue
        ratios.append((bullet + semi.value) / ws)

    c_low = min(ratios) if ratios else None
    c_high = max(ratios) if ratios else None
    return make_record(
        "equivalent_norm",
        inputs={"p": format_exponent(p), "samples": len(f_set)},
        values={"c_low": c_low, "c_high": c_high, "ratios": ratios, "excluded": len(f_set) - len(ratios)},
        flags={"ratios_finite_positive": all(math.isfinite(r) and r > 0 for r in ratios)},
    )
