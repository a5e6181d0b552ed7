"""
tools.maxfuncs.reports

Boundedness reports for the maximal operator.

    weak_type_report() --> sup_t t mu({Mf > t}) / ||f||_L1 against D^3
    strong_type_report() --> ||Mf||_KS^p <= ||Mf||_L^p <= 2 (D^3 p/(p-1))^(1/p) ||f||_L^p
    ws_maximal_report() --> ||Mf||_WS^{1,p} / ||f||_WS^{1,p}, report-only
"""

from __future__ import annotations

import logging
import math

import numpy as np

from ...errors import BadExponent, NegativeInput
from ..constants import get_tolerance
from ..misc import leq, make_record
from ..normfuncs.norms import embedding_constant, ks_norm, lp_norm
from ..sobolevfuncs.metric import ws1p_parts
from ..typechecks import check_exponent, format_exponent
from .operator import distribution_function, maximal_function

logger = logging.getLogger(__name__)


def _check_nonnegative(space, f):
    f.check_aligned(space)
    if np.any(f.values < 0):
        pid = space.point_ids[int(np.flatnonzero(f.values < 0)[0])]
        raise NegativeInput(f"f must be nonnegative (f('{pid}') < 0)", details={"point": pid})


def _sup_tail(space, mf, t_grid=None) -> float:
    """
    sup_t t mu({Mf > t}); without a grid this is max_k v_k mu({Mf >= v_k}) over the distinct
    positive values v_k of Mf (left limits at the breakpoints).
    """
    if t_grid is not None:
        return max((float(t) * distribution_function(space, mf, float(t)) for t in t_grid), default=0.0)
    values = np.unique(mf.values[mf.values > 0])
    best = 0.0
    for v in values:
        best = max(best, float(v) * float(np.sum(space.mass[mf.values >= v])))
    return best


def weak_type_report(space, f, t_grid=None, family=None) -> dict:
    """
    Asserts sup_ratio <= D^3. With a ball family the same tail is also measured against
    ||f||_KS^1 (report-only).
    """
    _check_nonnegative(space, f)
    rel = get_tolerance("inequality")
    D = space.doubling_constant()
    mf = maximal_function(space, f)
    l1 = lp_norm(space, f, 1)

    tail = _sup_tail(space, mf, t_grid)
    sup_ratio = tail / l1 if l1 > 0 else 0.0
    c_bound = D**3

    values = {"sup_ratio": sup_ratio, "C_bound": c_bound, "doubling": D, "l1": l1, "sup_tail": tail}
    report_only = {}
    if family is not None:
        ks1 = ks_norm(space, family, f, 1)
        values["ks1"] = ks1
        values["ks1_ratio"] = tail / ks1 if ks1 > 0 else (0.0 if tail == 0 else math.inf)
        report_only["ks1_ok"] = leq(values["ks1_ratio"], c_bound, rel)

    return make_record(
        "weak_type",
        inputs={"t_grid": None if t_grid is None else [float(t) for t in t_grid]},
        values=values,
        flags={"weak_ok": leq(sup_ratio, c_bound, rel)},
        report_only=report_only,
    )


def marcinkiewicz_constant(D, p) -> float:
    if math.isinf(p):
        return 1.0
    return 2.0 * (D**3 * p / (p - 1.0)) ** (1.0 / p)


def strong_type_report(space, family, f, p) -> dict:
    p = check_exponent(p)
    if p <= 1:
        raise BadExponent("strong_type_report needs p > 1", details={"p": p})
    _check_nonnegative(space, f)
    rel = get_tolerance("inequality")
    if not space.is_probability:
        logger.warning("strong_type_report expects probability mode (total mass %.6g)", space.total_mass)

    D = space.doubling_constant()
    mf = maximal_function(space, f)
    ks_mf = ks_norm(space, family, mf, p)
    ks_f = ks_norm(space, family, f, p)
    lp_mf = lp_norm(space, mf, p)
    lp_f = lp_norm(space, f, p)
    c_emb = embedding_constant(space, family, p, p)
    c_max = marcinkiewicz_constant(D, p)

    chain = leq(ks_mf, c_emb * lp_mf, rel) and leq(lp_mf, c_max * lp_f, rel)
    return make_record(
        "strong_type",
        inputs={"p": format_exponent(p)},
        values={
            "ks_ratio": ks_mf / ks_f if ks_f > 0 else None,
            "ks_of_mf": ks_mf,
            "lp_of_mf": lp_mf,
            "lp_of_f": lp_f,
            "embedding_constant": c_emb,
            "C_p": c_max,
            "doubling": D,
        },
        flags={"lp_chain_ok": chain},
    )


def ws_maximal_report(space, family, f, p, solver_opts=None) -> dict:
    p = check_exponent(p)
    if p <= 1:
        raise BadExponent("ws_maximal_report needs p > 1", details={"p": p})
    mf = maximal_function(space, f)
    ks_f, semi_f = ws1p_parts(space, family, f, p, solver_opts)
    ks_mf, semi_mf = ws1p_parts(space, family, mf, p, solver_opts)
    ws_f = ks_f + semi_f.value
    ws_mf = ks_mf + semi_mf.value
    return make_record(
        "ws_maximal",
        inputs={"p": format_exponent(p)},
        values={
            "ws_ratio": ws_mf / ws_f if ws_f > 0 else None,
            "f": {"ks": ks_f, "seminorm": semi_f.value},
            "mf": {"ks": ks_mf, "seminorm": semi_mf.value},
        },
    )
