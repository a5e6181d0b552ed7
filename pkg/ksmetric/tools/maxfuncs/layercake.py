"""
tools.maxfuncs.layercake

    layer_cake() --> sum Psi(f) mu against the exact integral of psi(s) mu({f > s}) over [0, max f]
"""

from __future__ import annotations

import numpy as np
from numpy.polynomial import Polynomial

from ...errors import NegativeInput, UsageError
from ..misc import make_record


def layer_cake(space, f, psi) -> dict:
    """
    ``psi`` holds polynomial coefficients in ascending order (psi(s) = psi[0] + psi[1] s + ...);
    Psi is its antiderivative with Psi(0) = 0. mu({f > s}) is constant between consecutive
    distinct values of f, so the right-hand side is a finite sum of Psi differences.
    """

    f.check_aligned(space)
    coeffs = np.atleast_1d(np.asarray(psi, dtype=float))
    if coeffs.size == 0 or not np.all(np.isfinite(coeffs)):
        raise UsageError("psi needs at least one finite coefficient")
    if np.any(f.values < 0):
        pid = space.point_ids[int(np.flatnonzero(f.values < 0)[0])]
        raise NegativeInput(f"layer cake needs f >= 0 (f('{pid}') < 0)", details={"point": pid})

    Psi = Polynomial(coeffs).integ()
    lhs = float(np.sum(Psi(f.values) * space.mass))

    breaks = np.unique(np.concatenate([[0.0], f.values]))
    rhs = 0.0
    for lo, hi in zip(breaks[:-1], breaks[1:]):
        rhs += (Psi(hi) - Psi(lo)) * float(np.sum(space.mass[f.values > lo]))

    #equals max(1, |lhs|) when psi >= 0
    scale = max(1.0, float(np.sum(np.abs(Psi(f.values)) * space.mass)))
    return make_record(
        "layer_cake",
        inputs={"psi": coeffs.tolist()},
        values={"lhs": lhs, "rhs": float(rhs)},
        flags={"equal_ok": abs(lhs - rhs) <= 1e-12 * scale},
    )
