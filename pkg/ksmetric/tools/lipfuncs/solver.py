"""
tools.lipfuncs.solver

The KS^{1,p} semi-norm as a convex program over gradient witnesses:

    minimize ||g||_KS^p  subject to  g >= 0,  g(x) + g(y) >= |f(x) - f(y)| / d(x, y)

for every pair of positive-mass points. Zero-mass points are mu-null and get g = 0.

    ks1p_seminorm() --> SeminormResult (value, witness, diagnostics)
    solve_from() --> one solver run from a given feasible start
    SolverOptions --> tolerance, iteration cap, restarts, seed, method

Two methods are available. "active-set" (default) is a proximal Newton iteration whose
quadratic subproblems are solved exactly by a primal active-set method warm-started at the
current feasible iterate; the proximal weight grows every outer step, so polyhedral cases
(p = 1, p = inf via an epigraph variable) converge like the proximal point method.
"subgradient" is a projected subgradient method with a Polyak-type step and the per-pair
repair projection.
"""

from __future__ import annotations

import logging
import math
from dataclasses import asdict, dataclass, field, replace

import numpy as np

from ...errors import SolverFailure, UsageError
from ...functions import GradientWitness, SampledFunction
from ..constants import get_constant
from ..normfuncs.norms import _weighted_power_mean, ks_norm
from ..typechecks import check_exponent, format_exponent
from .slopes import feasibility_residual, lip_constant

logger = logging.getLogger(__name__)

_METHODS = ("active-set", "subgradient")

#proximal weight schedule
_ETA_GROWTH = 10.0
_ETA_STOP = 1e6
_ETA_MAX = 1e8

#armijo parameters
_ARMIJO = 1e-4
_MIN_STEP = 1e-10

#subgradient stall window
_STALL = 500


@dataclass(frozen=True)
class SolverOptions:
    """
    :param tolerance: relative stopping tolerance on the iterate (active-set) or objective (subgradient).
    :type tolerance: float, optional; default: 1e-6

    :param max_iters: outer iteration cap per start.
    :type max_iters: int, optional; default: 50000

    :param restarts: random feasible starts in addition to the envelope start.
    :type restarts: int, optional; default: 0

    :param seed: seed for the random starts.
    :type seed: int, optional; default: 0

    :param method: "active-set" or "subgradient".
    :type method: str, optional; default: "active-set"
    """

    tolerance: float = 1e-6
    max_iters: int = 50_000
    restarts: int = 0
    seed: int = 0
    method: str = "active-set"

    def __post_init__(self):
        if self.method not in _METHODS:
            raise UsageError(f"solver method must be one of {_METHODS}, got '{self.method}'")
        if not self.tolerance > 0:
            raise UsageError("solver tolerance must be positive")
        if self.max_iters < 1 or self.restarts < 0:
            raise UsageError("max_iters must be >= 1 and restarts >= 0")

    @classmethod
    def from_defaults(cls, **overrides) -> "SolverOptions":
        opts = get_constant("solver")
        opts.update({k: v for k, v in overrides.items() if v is not None})
        return cls(**opts)

    def to_dict(self) -> dict:
        return asdict(self)


@dataclass(frozen=True, eq=False)
class SeminormResult:
    value: float
    witness: GradientWitness
    iterations: int = 0
    converged: bool = True
    method: str = "active-set"
    starts: int = 1
    diagnostics: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        return {
            "value": self.value,
            "witness": self.witness.to_dict(),
            "iterations": self.iterations,
            "converged": self.converged,
            "method": self.method,
            "starts": self.starts,
            "diagnostics": dict(self.diagnostics),
        }


class _WitnessProblem:
    """
    The scaled program: variables are g / c_max at positive-mass points (plus an epigraph
    variable t at p = inf), constraints M z >= b, objective normalized to 1 at the reference point.
    """

    def __init__(self, space, family, f, p):
        self.space = space
        self.p = p
        self.epigraph = math.isinf(p)
        self.active = np.flatnonzero(space.mass > 0)
        m = self.active.size
        self.m = m

        i, j = np.triu_indices(m, 1)
        a, b = self.active[i], self.active[j]
        c = np.abs(f.values[a] - f.values[b]) / space.dist[a, b]
        keep = c > 0
        self.pair_i, self.pair_j = i[keep], j[keep]
        self.pair_bound = c[keep]
        self.scale = float(self.pair_bound.max()) if self.pair_bound.size else 0.0

        self.A = family.members[:, self.active] * space.mass[self.active]
        self.tau = family.weights
        self.n_vars = m + (1 if self.epigraph else 0)
        self.reference = 1.0

        if self.scale == 0.0:
            self.M = np.zeros((0, self.n_vars))
            self.b = np.zeros(0)
            return

        n_pairs = self.pair_i.size
        rows = np.arange(n_pairs)
        pairs = np.zeros((n_pairs, self.n_vars))
        pairs[rows, self.pair_i] = 1.0
        pairs[rows, self.pair_j] = 1.0
        blocks = [pairs, np.eye(m, self.n_vars)]
        bounds = [self.pair_bound / self.scale, np.zeros(m)]
        if self.epigraph:
            blocks.append(np.hstack([-self.A, np.ones((self.A.shape[0], 1))]))
            bounds.append(np.zeros(self.A.shape[0]))
        self.M = np.vstack(blocks)
        self.b = np.concatenate(bounds)

    #***** scaled witness <-> variables *****

    def start_from(self, g_active) -> np.ndarray:
        g_active = self.repair(np.maximum(np.asarray(g_active, dtype=float), 0.0))
        if self.epigraph:
            return np.append(g_active, float(np.max(self.A @ g_active)))
        return g_active

    def repair(self, g_active) -> np.ndarray:
        """
        Raise both endpoints of every violated pair by half the largest violation they take part in.
        """
        if self.pair_i.size == 0:
            return g_active
        bound = self.pair_bound / self.scale
        viol = bound - (g_active[self.pair_i] + g_active[self.pair_j])
        bad = viol > 0
        if not bad.any():
            return g_active
        lift = np.zeros_like(g_active)
        np.maximum.at(lift, self.pair_i[bad], viol[bad] / 2.0)
        np.maximum.at(lift, self.pair_j[bad], viol[bad] / 2.0)
        return g_active + lift

    def witness(self, z) -> np.ndarray:
        g = np.zeros(self.space.n_points)
        g[self.active] = self.repair(np.maximum(z[: self.m], 0.0)) * self.scale
        return g

    #***** objective: sum tau (A g)^p, tau . A g, or t *****

    def _raw(self, z) -> float:
        if self.epigraph:
            return float(z[-1])
        y = np.maximum(self.A @ z[: self.m], 0.0)
        if self.p == 1:
            return float(self.tau @ y)
        return float(self.tau @ y**self.p)

    def set_reference(self, z):
        value = self._raw(z)
        self.reference = value if value > 0 else 1.0
        return value

    def value(self, z) -> float:
        return self._raw(z) / self.reference

    def grad(self, z) -> np.ndarray:
        out = np.zeros(self.n_vars)
        if self.epigraph:
            out[-1] = 1.0
        elif self.p == 1:
            out[: self.m] = self.A.T @ self.tau
        else:
            y = np.maximum(self.A @ z[: self.m], 0.0)
            out[: self.m] = self.p * (self.A.T @ (self.tau * y ** (self.p - 1.0)))
        return out / self.reference

    def hess(self, z) -> np.ndarray:
        out = np.zeros((self.n_vars, self.n_vars))
        if self.epigraph or self.p == 1:
            return out
        y = np.maximum(self.A @ z[: self.m], 0.0)
        top = float(y.max())
        if top == 0.0:
            return out
        #cap the curvature of near-empty ball integrals when p < 2
        y_eff = np.maximum(y, 1e-6 * top)
        weights = self.tau * y_eff ** (self.p - 2.0)
        out[: self.m, : self.m] = self.p * (self.p - 1.0) * (self.A.T * weights) @ self.A
        return out / self.reference

    #***** the norm itself, for the subgradient method *****

    def norm_and_subgradient(self, g_active):
        y = np.maximum(self.A @ g_active, 0.0)
        if self.epigraph:
            r = int(np.argmax(y))
            return float(y[r]), self.A[r].copy()
        if self.p == 1:
            return float(self.tau @ y), self.A.T @ self.tau
        value = _weighted_power_mean(y, self.tau, self.p)
        if value == 0.0:
            return 0.0, np.zeros(self.m)
        sub = self.A.T @ (self.tau * (y / value) ** (self.p - 1.0))
        return value, sub


def _solve(K, rhs) -> np.ndarray:
    try:
        sol = np.linalg.solve(K, rhs)
        if np.all(np.isfinite(sol)):
            return sol
    except np.linalg.LinAlgError:
        pass
    return np.linalg.lstsq(K, rhs, rcond=None)[0]


def _active_set_qp(H, q, M, b, u0, max_steps):
    """
    min 1/2 u'Hu + q'u  s.t.  M u >= b, from the feasible point u0 (primal active set).
    Returns (u, steps, optimal).
    """

    N = u0.size
    u = u0.copy()
    work = []
    for steps in range(1, max_steps + 1):
        g = H @ u + q
        if work:
            k = len(work)
            Mw = M[work]
            K = np.zeros((N + k, N + k))
            K[:N, :N] = H
            K[:N, N:] = -Mw.T
            K[N:, :N] = Mw
            sol = _solve(K, np.concatenate([-g, np.zeros(k)]))
            step, lam = sol[:N], sol[N:]
        else:
            step, lam = _solve(H, -g), np.zeros(0)

        size = float(np.max(np.abs(step)))
        if size <= 1e-12 * (1.0 + float(np.max(np.abs(u)))):
            if lam.size == 0 or lam.min() >= -1e-10 * (1.0 + float(np.max(np.abs(lam)))):
                return u, steps, True
            work.pop(int(np.argmin(lam)))
            continue

        Mp = M @ step
        blocking = Mp < -1e-12 * size
        blocking[work] = False
        alpha, hit = 1.0, None
        if blocking.any():
            idx = np.flatnonzero(blocking)
            slack = np.maximum(M[idx] @ u - b[idx], 0.0)
            ratios = slack / -Mp[idx]
            k = int(np.argmin(ratios))
            if ratios[k] < 1.0:
                alpha, hit = float(ratios[k]), int(idx[k])
        u = u + alpha * step
        if hit is not None:
            work.append(hit)
    return u, max_steps, False


def _proximal_newton(problem, z0, opts):
    z = z0.copy()
    phi = problem.value(z)
    eta = 1.0
    N = problem.n_vars
    qp_cap = 50 * (N + problem.b.size)
    qp_steps = 0
    for it in range(1, opts.max_iters + 1):
        grad = problem.grad(z)
        H = problem.hess(z) + np.eye(N) / eta
        u, used, _ = _active_set_qp(H, grad - H @ z, problem.M, problem.b, z, qp_cap)
        qp_steps += used

        d = u - z
        slope = float(grad @ d)
        step = 0.0
        if slope < 0:
            step = 1.0
            while step >= _MIN_STEP:
                cand = z + step * d
                phi_c = problem.value(cand)
                if phi_c <= phi + _ARMIJO * step * slope:
                    break
                step *= 0.5
            else:
                step = 0.0
        moved = step * float(np.max(np.abs(d))) if d.size else 0.0
        if step > 0:
            z, phi = cand, phi_c

        if eta >= _ETA_STOP and moved <= opts.tolerance * max(1.0, float(np.max(np.abs(z)))):
            return z, it, True, {"qp_steps": qp_steps}
        eta = min(eta * _ETA_GROWTH, _ETA_MAX)
    return z, opts.max_iters, False, {"qp_steps": qp_steps}


def _projected_subgradient(problem, z0, opts):
    g = z0[: problem.m].copy()
    value, sub = problem.norm_and_subgradient(g)
    best, best_value = g.copy(), value
    if value == 0.0:
        return problem.start_from(best), 0, True, {}

    gamma = 0.1 * value
    stall = 0
    for it in range(1, opts.max_iters + 1):
        norm2 = float(sub @ sub)
        if norm2 == 0.0:
            return problem.start_from(best), it, True, {}
        step = (value - best_value + gamma / it) / norm2
        g = problem.repair(np.maximum(g - step * sub, 0.0))
        value, sub = problem.norm_and_subgradient(g)
        if value < best_value * (1.0 - opts.tolerance):
            stall = 0
        else:
            stall += 1
        if value < best_value:
            best, best_value = g.copy(), value
        if stall >= _STALL:
            return problem.start_from(best), it, True, {}
    return problem.start_from(best), opts.max_iters, False, {}


def _run(problem, z0, opts):
    if opts.method == "subgradient":
        return _projected_subgradient(problem, z0, opts)
    return _proximal_newton(problem, z0, opts)


def _result(space, family, f, p, problem, z, iterations, converged, opts, starts, extra):
    g = problem.witness(z)
    value = ks_norm(space, family, SampledFunction(g), p)
    residual = feasibility_residual(space, f, g)
    diagnostics = {"scale": problem.scale, "pairs": int(problem.pair_i.size), "p": format_exponent(p)}
    diagnostics.update(extra)
    return SeminormResult(
        value=value,
        witness=GradientWitness(g, residual),
        iterations=iterations,
        converged=converged,
        method=opts.method,
        starts=starts,
        diagnostics=diagnostics,
    )


def _envelope_start(space, problem, f):
    from .slopes import feasible_envelope

    env = feasible_envelope(space, f).values[problem.active]
    return env / problem.scale


def solve_from(space, family, f, p, start, opts=None) -> SeminormResult:
    """
    Single run from ``start`` (witness values per point, made feasible by the repair pass).
    """

    opts = opts or SolverOptions.from_defaults()
    p = check_exponent(p)
    f.check_aligned(space)
    problem = _WitnessProblem(space, family, f, p)
    if problem.scale == 0.0:
        return _result(space, family, f, p, problem, np.zeros(problem.n_vars), 0, True, opts, 1, {})

    problem.set_reference(problem.start_from(_envelope_start(space, problem, f)))
    z0 = problem.start_from(np.asarray(start, dtype=float)[problem.active] / problem.scale)
    z, its, converged, extra = _run(problem, z0, opts)
    result = _result(space, family, f, p, problem, z, its, converged, opts, 1, extra)
    if not converged:
        raise SolverFailure(
            f"solver did not converge within {opts.max_iters} iterations",
            result=result,
            details=result.diagnostics,
        )
    return result


def ks1p_seminorm(space, family, f, p, solver_opts=None) -> SeminormResult:
    """
    inf ||g||_KS^p over feasible gradient witnesses g, from the envelope start plus
    ``restarts`` random feasible starts. The constant witness Lip(f)/2 is always a candidate.
    """

    opts = solver_opts or SolverOptions.from_defaults()
    p = check_exponent(p)
    f.check_aligned(space)
    problem = _WitnessProblem(space, family, f, p)
    if problem.scale == 0.0:
        return _result(space, family, f, p, problem, np.zeros(problem.n_vars), 0, True, opts, 1, {})

    envelope = _envelope_start(space, problem, f)
    z_env = problem.start_from(envelope)
    start_value = problem.set_reference(z_env)
    if start_value == 0.0:
        return _result(space, family, f, p, problem, z_env, 0, True, opts, 1, {"chosen": "envelope"})

    rng = np.random.default_rng(np.random.SeedSequence(int(opts.seed)))
    starts = [z_env] + [problem.start_from(envelope + rng.uniform(0.0, 1.0, problem.m)) for _ in range(opts.restarts)]

    best = None
    for k, z0 in enumerate(starts):
        z, its, converged, extra = _run(problem, z0, opts)
        result = _result(space, family, f, p, problem, z, its, converged, opts, len(starts), extra)
        if not converged:
            raise SolverFailure(
                f"solver did not converge within {opts.max_iters} iterations (start {k})",
                result=result,
                details=result.diagnostics,
            )
        logger.debug("start %d: value %.12g after %d iterations", k, result.value, its)
        if best is None or result.value < best.value:
            best = result

    lip = lip_constant(space, f)
    constant = np.full(space.n_points, lip / 2.0)
    constant_value = ks_norm(space, family, SampledFunction(constant), p)
    if constant_value < best.value:
        logger.warning("constant witness %.12g beats solver value %.12g", constant_value, best.value)
        diagnostics = dict(best.diagnostics, chosen="constant")
        return replace(
            best,
            value=constant_value,
            witness=GradientWitness(constant, feasibility_residual(space, f, constant)),
            diagnostics=diagnostics,
        )
    return replace(best, diagnostics=dict(best.diagnostics, chosen="solver"))
