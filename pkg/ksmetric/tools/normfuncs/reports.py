"""
tools.normfuncs.reports

Inequality reports for the KS norms.

    holder_report() --> per-ball and L^p-majorized Hoelder checks; KS-level statement report-only
    inclusion_report() --> monotonicity in p, with the unweighted-sum constants report-only
"""

from __future__ import annotations

import logging
import math

import numpy as np

from ...errors import BadExponent
from ...normparams import NormParams, exponent_of
from ..constants import get_tolerance
from ..misc import leq, make_record
from ..typechecks import check_exponent, format_exponent
from .norms import _weighted_power_mean, ks_norm, lp_norm

logger = logging.getLogger(__name__)


def holder_report(space, family, f, g, p) -> dict:
    params = NormParams.from_exponent(exponent_of(p, lower_open=True), family)
    if math.isinf(params.p):
        raise BadExponent("holder_report needs a finite p > 1", details={"p": "inf"})
    p, q = params.p, params.q
    rel = get_tolerance("inequality")

    fg = f * g
    values = {
        "ks1_of_product": ks_norm(space, family, fg, 1),
        "ks_p_of_f": ks_norm(space, family, f, p),
        "ks_q_of_g": ks_norm(space, family, g, q),
        "lp_of_f": lp_norm(space, f, p),
        "lq_of_g": lp_norm(space, g, q),
    }

    #classical Hoelder on every ball
    weighted = fg.values * space.mass
    lhs = np.abs((family.members * weighted).sum(axis=1))
    rhs = np.array(
        [
            _weighted_power_mean(f.values[row], space.mass[row], p) * _weighted_power_mean(g.values[row], space.mass[row], q)
            for row in family.members
        ]
    )
    per_ball = lhs <= rhs + rel * np.maximum(lhs, rhs)
    failing = np.flatnonzero(~per_ball)

    ks_product = values["ks_p_of_f"] * values["ks_q_of_g"]
    stated_ok = leq(values["ks1_of_product"], ks_product, rel)
    if not stated_ok:
        logger.info(
            "KS-level Hoelder statement fails: %.6g > %.6g over %d balls",
            values["ks1_of_product"],
            ks_product,
            len(family),
        )

    values["per_ball_lhs_max"] = float(lhs.max())
    values["ks_product"] = ks_product
    if failing.size:
        values["failing_balls"] = failing.tolist()

    return make_record(
        "holder",
        inputs={"p": p, "q": format_exponent(q)},
        values=values,
        flags={
            "per_ball_ok": not failing.size,
            "lp_majorized_ok": leq(values["ks1_of_product"], values["lp_of_f"] * values["lq_of_g"], rel),
        },
        report_only={"stated_inequality_ok": stated_ok},
    )


def inclusion_report(space, family, f, p0, p1) -> dict:
    """
    Asserts ||f||_KS^p0 <= ||f||_KS^p1 for p0 <= p1 < inf; records the unweighted-sum
    constants c0 = (sum mu(B_k))^(-1/p0), c1 = (sum mu(B_k))^(-1/p1) and whether
    c0 ||f||_KS^p0 <= c1 ||f||_KS^p1.
    """

    p0 = check_exponent(p0, allow_inf=False, name="p0")
    p1 = check_exponent(p1, allow_inf=False, name="p1")
    if p0 > p1:
        raise BadExponent("inclusion_report needs p0 <= p1", details={"p0": p0, "p1": p1})
    rel = get_tolerance("inequality")

    n0 = ks_norm(space, family, f, p0)
    n1 = ks_norm(space, family, f, p1)
    mass_sum = float(np.sum(family.ball_mass))
    c0 = mass_sum ** (-1.0 / p0)
    c1 = mass_sum ** (-1.0 / p1)

    return make_record(
        "inclusion",
        inputs={"p0": p0, "p1": p1},
        values={"ks_p0": n0, "ks_p1": n1, "c0": c0, "c1": c1},
        flags={"monotone_ok": leq(n0, n1, rel)},
        report_only={"stated_inequality_ok": leq(c0 * n0, c1 * n1, rel)},
    )
