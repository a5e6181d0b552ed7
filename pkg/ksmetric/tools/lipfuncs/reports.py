"""
tools.lipfuncs.reports

Reports around the KS^{1,p} semi-norm.

    lip_membership_bound() --> semi-norm <= (Lip(f)/2) ||1||_KS^p
    minimizer_uniqueness_probe() --> spread of witnesses from random feasible starts
    seminorm_embedding_report() --> semi-norm <= C(p, q) ||envelope||_L^q
    lipschitz_density_report() --> McShane truncations of f on {envelope <= level}, report-only
"""

from __future__ import annotations

import logging
import math

import numpy as np

from ...functions import SampledFunction
from ..constants import get_tolerance
from ..misc import leq, make_record
from ..normfuncs.norms import embedding_constant, ks_norm, lp_norm
from ..typechecks import check_exponent, format_exponent
from .slopes import feasible_envelope, lip_constant
from .solver import SolverOptions, ks1p_seminorm, solve_from

logger = logging.getLogger(__name__)


def lip_membership_bound(space, family, f, p, solver_opts=None) -> dict:
    opts = solver_opts or SolverOptions.from_defaults()
    p = check_exponent(p)
    result = ks1p_seminorm(space, family, f, p, opts)
    lip = lip_constant(space, f)
    bound = 0.5 * lip * ks_norm(space, family, SampledFunction.constant(space.n_points), p)
    return make_record(
        "lipschitz_bound",
        inputs={"p": format_exponent(p)},
        values={"seminorm": result.value, "bound": bound, "lip": lip, "slack": bound - result.value},
        flags={"bound_ok": leq(result.value, bound, opts.tolerance, abs_tol=1e-15)},
    )


def minimizer_uniqueness_probe(space, family, f, p, n_restarts=5, solver_opts=None) -> dict:
    """
    Solve from ``n_restarts`` random feasible starts and report the largest sup-distance between
    witnesses on positive-mass points (ball-integral coordinates when singletons are missing).
    Asserted only for 1 < p < inf on families with every singleton.
    """

    opts = solver_opts or SolverOptions.from_defaults()
    p = check_exponent(p)
    env = feasible_envelope(space, f).values
    top = float(env.max()) if env.size else 0.0
    rng = np.random.default_rng(np.random.SeedSequence(int(opts.seed), spawn_key=(1,)))

    witnesses = []
    for _ in range(max(int(n_restarts), 1)):
        start = env + rng.uniform(0.0, max(top, 1.0), space.n_points)
        witnesses.append(solve_from(space, family, f, p, start, opts).witness.values)

    active = space.mass > 0
    if family.covers_singletons:
        coords = [w[active] for w in witnesses]
        basis = "points"
    else:
        coords = [(family.members * (w * space.mass)).sum(axis=1) for w in witnesses]
        basis = "ball-integrals"

    spread = 0.0
    for a in range(len(coords)):
        for b in range(a + 1, len(coords)):
            spread = max(spread, float(np.max(np.abs(coords[a] - coords[b]))) if coords[a].size else 0.0)

    magnitude = max(1.0, max(float(np.max(np.abs(c))) if c.size else 0.0 for c in coords))
    within = spread <= get_tolerance("uniqueness") * magnitude
    claimed = 1 < p < math.inf and family.covers_singletons

    flags, report_only = {}, {}
    (flags if claimed else report_only)["unique_ok"] = within
    return make_record(
        "uniqueness",
        inputs={"p": format_exponent(p), "restarts": int(n_restarts)},
        values={"max_pairwise_witness_distance": spread, "magnitude": magnitude, "coordinates": basis},
        flags=flags,
        report_only=report_only,
    )


def seminorm_embedding_report(space, family, f, p, q, solver_opts=None) -> dict:
    """
    Gradient embedding on the surrogate: semi-norm <= ||envelope||_KS^p <= C(p, q) ||envelope||_L^q.
    """

    opts = solver_opts or SolverOptions.from_defaults()
    p = check_exponent(p)
    q = check_exponent(q, name="q")
    result = ks1p_seminorm(space, family, f, p, opts)
    env = feasible_envelope(space, f).as_function()
    constant = embedding_constant(space, family, p, q)
    rhs = constant * lp_norm(space, env, q)
    return make_record(
        "seminorm_embedding",
        inputs={"p": format_exponent(p), "q": format_exponent(q)},
        values={
            "seminorm": result.value,
            "envelope_ks": ks_norm(space, family, env, p),
            "constant": constant,
            "rhs": rhs,
        },
        flags={"embedding_ok": leq(result.value, rhs, opts.tolerance, abs_tol=1e-15)},
    )


def _mcshane(space, f, good, constant) -> np.ndarray:
    """
    Largest `constant`-Lipschitz extension below f from the points in ``good``.
    """
    cand = f.values[good][None, :] + constant * space.dist[:, good]
    return cand.min(axis=1)


def lipschitz_density_report(space, family, f, p, levels=None, solver_opts=None) -> dict:
    """
    For each level lam: good set G = {x : mu(x) > 0, envelope(x) <= lam}, the McShane extension h
    of f|G with constant 2 lam, mu({f != h}) and ||f - h||_WS^{1,p}. Measurements only.
    """

    opts = solver_opts or SolverOptions.from_defaults()
    p = check_exponent(p)
    env = feasible_envelope(space, f).values
    positive = space.mass > 0
    if levels is None:
        levels = np.unique(env[positive]).tolist()

    rows = []
    for lam in levels:
        lam = float(lam)
        good = positive & (env <= lam)
        if not good.any():
            rows.append({"level": lam, "good_mass": 0.0})
            continue
        h = _mcshane(space, f, good, 2.0 * lam)
        diff = SampledFunction(f.values - h)
        bad = positive & (np.abs(diff.values) > 1e-12 * (1.0 + np.abs(f.values)))
        ks = ks_norm(space, family, diff, p)
        semi = ks1p_seminorm(space, family, diff, p, opts).value
        rows.append(
            {
                "level": lam,
                "good_mass": float(space.mass[good].sum()),
                "bad_mass": float(space.mass[bad].sum()),
                "lip_h": lip_constant(space, SampledFunction(h)),
                "ws_distance": ks + semi,
            }
        )

    return make_record(
        "lipschitz_density",
        inputs={"p": format_exponent(p), "levels": [float(v) for v in levels]},
        values={"levels": rows},
        report_only={
            "lip_h_ok": all(leq(r["lip_h"], 2.0 * r["level"], 1e-10) for r in rows if "lip_h" in r),
            "bad_set_ok": all(
                leq(r["bad_mass"], float(space.mass[positive & (env > r["level"])].sum()), 1e-12)
                for r in rows
                if "bad_mass" in r
            ),
        },
    )
