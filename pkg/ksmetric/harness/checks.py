"""
Registry of named property checks.

Each check pairs a generator, which draws JSON-serializable inputs from a per-(check, trial)
random stream, with an evaluator that rebuilds everything from those inputs alone. A record
can therefore be replayed from its inputs without the generator.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

from ..ballfamily import BallFamily, BallScheme
from ..errors import InternalError, UsageError
from ..functions import SampledFunction
from ..gridspec import GridSpec
from ..tools.lipfuncs.oracle import ks1p_oracle
from ..tools.lipfuncs.reports import (
    lip_membership_bound,
    lipschitz_density_report,
    minimizer_uniqueness_probe,
    seminorm_embedding_report,
)
from ..tools.lipfuncs.slopes import feasible_envelope, lip_constant
from ..tools.lipfuncs.solver import ks1p_seminorm
from ..tools.maxfuncs.covering import greedy_5B, verify_covering
from ..tools.maxfuncs.layercake import layer_cake
from ..tools.maxfuncs.operator import maximal_function, restricted_maximal
from ..tools.maxfuncs.reports import strong_type_report, weak_type_report, ws_maximal_report
from ..tools.misc import close, leq, make_record
from ..tools.normfuncs.norms import embedding_constant, ks_inner, ks_norm, lp_norm
from ..tools.normfuncs.reports import holder_report, inclusion_report
from ..tools.sobolevfuncs.grid import euclid_embedding_report, grid_weak_derivative, wsk2_inner, wskp_norm
from ..tools.sobolevfuncs.metric import equivalent_norm_check, poincare_report
from ..tools.spacefuncs.balls import ball_integral, ball_integrals, enumerate_balls
from ..tools.spacefuncs.instantiation import build_space, space_from_dict
from ..tools.typechecks import check_exponent, format_exponent
from .expressions import evaluate_expression
from .generators import gen_function, gen_space

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Check:
    """
    :param name: registry key, also the record's ``check`` field.
    :type name: str

    :param generate: (rng, config) -> JSON-serializable inputs.
    :type generate: callable

    :param evaluate: (inputs, config) -> record with "values", "flags" and "report_only".
    :type evaluate: callable
    """

    name: str
    generate: Callable
    evaluate: Callable


_REGISTRY: dict = {}


def register(name, generate):
    def wrap(evaluate):
        if name in _REGISTRY:
            raise InternalError(f"check '{name}' registered twice")
        _REGISTRY[name] = Check(name, generate, evaluate)
        return evaluate

    return wrap


def check_names() -> list:
    return sorted(_REGISTRY)


def get_check(name) -> Check:
    if name not in _REGISTRY:
        raise UsageError(f"unknown check '{name}'", details={"known": check_names()})
    return _REGISTRY[name]


#***** input helpers *****


def _pick(rng, seq):
    seq = list(seq)
    return seq[int(rng.integers(len(seq)))]


def _seed(rng) -> int:
    return int(rng.integers(0, 2**31 - 1))


def _sizes(config, cap=None) -> list:
    sizes = [s for s in config.space_sizes if cap is None or s <= cap]
    return sizes or [min(config.space_sizes)]


def _space_input(rng, config, kinds=("line-points", "random-cloud"), sizes=None) -> dict:
    kind = _pick(rng, kinds)
    size = int(_pick(rng, sizes or config.space_sizes))
    return gen_space(kind, size, _seed(rng), probability=config.probability_mode).to_dict()


def _grid_input(rng, config, probability=None) -> dict:
    dim = _pick(rng, (1, 2))
    n = int(_pick(rng, config.grid_sizes if dim == 1 else config.grid2d_sizes))
    probability = config.probability_mode if probability is None else probability
    return GridSpec.unit_cube(dim, n, probability).to_dict()


def _values(rng, n, low=-1.0, high=1.0) -> list:
    return rng.uniform(low, high, n).tolist()


def _n_points(space_dict) -> int:
    return len(space_dict["points"])


def _n_nodes(grid_dict) -> int:
    return int(grid_dict["n_per_axis"]) ** int(grid_dict["dim"])


def _basic(rng, config, kinds=("line-points", "random-cloud"), sizes=None, functions=1, low=-1.0, high=1.0) -> dict:
    space = _space_input(rng, config, kinds, sizes)
    inputs = {"space": space, "scheme": config.scheme().to_dict()}
    n = _n_points(space)
    for k in range(functions):
        inputs["fg"[k] if functions <= 2 else f"f{k}"] = _values(rng, n, low, high)
    return inputs


def _space_family(inputs):
    space = space_from_dict(inputs["space"])
    return space, enumerate_balls(space, BallScheme.from_dict(inputs.get("scheme")))


def _grid_family(inputs):
    grid = GridSpec.from_dict(inputs["grid"])
    space = grid.to_space()
    return grid, space, enumerate_balls(space, BallScheme.from_dict(inputs.get("scheme")))


def _finite_exponents(config, lower_open=False) -> list:
    out = [p for p in config.exponents if math.isfinite(p) and (p > 1 or not lower_open)]
    return out or [2.0]


def _two_point(f_values):
    space = build_space(["a", "b"], {"type": "matrix", "matrix": [[0.0, 1.0], [1.0, 0.0]]}, [0.5, 0.5])
    family = BallFamily.from_balls(space, [("a", 0.0), ("b", 0.0), ("a", 1.0)], [0.25, 0.25, 0.5])
    return space, family, SampledFunction(f_values)


def _outcome(values=None, flags=None, report_only=None, notes=None) -> dict:
    return make_record(None, values=values, flags=flags, report_only=report_only, notes=notes)


#***** space *****


@register("ball_family", lambda rng, config: {"space": _space_input(rng, config), "scheme": config.scheme().to_dict()})
def _ball_family(inputs, config):
    space = space_from_dict(inputs["space"])
    scheme = BallScheme.from_dict(inputs["scheme"])
    family = enumerate_balls(space, scheme)
    again = enumerate_balls(space, scheme)
    rows = {row.tobytes() for row in family.members}
    return _outcome(
        values={"balls": len(family), "collapsed": len(family.collapsed), "weight_sum": float(family.weights.sum())},
        flags={
            "weights_sum_to_one": abs(float(family.weights.sum()) - 1.0) <= config.tolerance("identity"),
            "weights_positive": bool(np.all(family.weights > 0)),
            "members_recomputed": np.array_equal(family.recompute_members(), family.members),
            "no_duplicates": len(rows) == len(family),
            "deterministic": np.array_equal(family.centers, again.centers)
            and np.array_equal(family.radii, again.radii)
            and np.array_equal(family.weights, again.weights),
            "has_full_ball": family.has_full_ball,
            "covers_singletons": family.covers_singletons,
        },
    )


def _gen_linearity(rng, config):
    inputs = _basic(rng, config, functions=2)
    inputs["a"], inputs["b"] = (float(v) for v in rng.uniform(-3.0, 3.0, 2))
    return inputs


@register("ball_integral_linearity", _gen_linearity)
def _ball_integral_linearity(inputs, config):
    space, family = _space_family(inputs)
    f, g = SampledFunction(inputs["f"]), SampledFunction(inputs["g"])
    a, b = inputs["a"], inputs["b"]
    ident = config.tolerance("identity")

    lhs = ball_integrals(space, family, f * a + g * b)
    rhs = a * ball_integrals(space, family, f) + b * ball_integrals(space, family, g)
    scale = abs(a) * ball_integrals(space, family, abs(f)) + abs(b) * ball_integrals(space, family, abs(g))
    single = [ball_integral(space, family, r, f) for r in (0, len(family) - 1)]
    vector = ball_integrals(space, family, f)[[0, -1]]
    return _outcome(
        values={"max_error": float(np.max(np.abs(lhs - rhs)))},
        flags={
            "linear": bool(np.all(np.abs(lhs - rhs) <= ident * scale)),
            "single_matches_all": all(close(s, v, ident) for s, v in zip(single, vector)),
        },
    )


def _doubling_by_masks(space) -> float:
    radii = np.unique(np.concatenate([space.dist.ravel(), space.dist.ravel() / 2.0]))
    best = 1.0
    for c in range(space.n_points):
        for r in radii[radii > 0]:
            inner = float(space.mass[space.dist[c] <= r].sum())
            if inner > 0:
                best = max(best, float(space.mass[space.dist[c] <= 2.0 * r].sum()) / inner)
    return best


@register("doubling", lambda rng, config: {"space": _space_input(rng, config)})
def _doubling(inputs, config):
    space = space_from_dict(inputs["space"])
    D = space.doubling_constant()
    brute = _doubling_by_masks(space)
    return _outcome(
        values={"doubling": D, "by_masks": brute, "diameter": space.diameter()},
        flags={"matches_masks": close(D, brute, config.tolerance("identity")), "at_least_one": D >= 1.0},
    )


#***** ksnorm *****


def _gen_axioms(rng, config):
    inputs = _basic(rng, config, functions=2)
    inputs["a"] = float(rng.uniform(-5.0, 5.0))
    inputs["p"] = format_exponent(_pick(rng, config.exponents))
    return inputs


@register("ks_norm_axioms", _gen_axioms)
def _ks_norm_axioms(inputs, config):
    space, family = _space_family(inputs)
    f, g = SampledFunction(inputs["f"]), SampledFunction(inputs["g"])
    a, p = inputs["a"], check_exponent(inputs["p"])
    rel = config.tolerance("inequality")

    nf, ng = ks_norm(space, family, f, p), ks_norm(space, family, g, p)
    n_af = ks_norm(space, family, f * a, p)
    n_sum = ks_norm(space, family, f + g, p)
    nonzero = bool(np.any(f.values[space.mass > 0] != 0))
    return _outcome(
        values={"ks_f": nf, "ks_g": ng, "ks_af": n_af, "ks_sum": n_sum},
        flags={
            "homogeneous": close(n_af, abs(a) * nf, rel),
            "triangle": leq(n_sum, nf + ng, rel),
            "definite": nf > 0 or not (nonzero and family.covers_singletons),
            "zero": ks_norm(space, family, f * 0.0, p) == 0.0,
        },
    )


def _gen_inclusion(rng, config):
    inputs = _basic(rng, config)
    finite = _finite_exponents(config)
    inputs["p0"], inputs["p1"] = sorted([_pick(rng, finite), _pick(rng, finite)])
    return inputs


@register("inclusion", _gen_inclusion)
def _inclusion(inputs, config):
    space, family = _space_family(inputs)
    return inclusion_report(space, family, SampledFunction(inputs["f"]), inputs["p0"], inputs["p1"])


@register("ks_embedding", lambda rng, config: _basic(rng, config))
def _ks_embedding(inputs, config):
    space, family = _space_family(inputs)
    f = SampledFunction(inputs["f"])
    rel = config.tolerance("inequality")

    failing, largest = [], 0.0
    for p in config.exponents:
        for q in config.exponents:
            c = embedding_constant(space, family, p, q)
            largest = max(largest, c)
            if not leq(ks_norm(space, family, f, p), c * lp_norm(space, f, q), rel):
                failing.append([format_exponent(p), format_exponent(q)])

    flags = {"embedding_ok": not failing}
    report_only = {}
    (flags if space.is_probability else report_only)["constant_at_most_one"] = largest <= 1.0 + config.tolerance("identity")
    return _outcome(values={"largest_constant": largest, "failing_pairs": failing}, flags=flags, report_only=report_only)


@register("ks_inner", lambda rng, config: _basic(rng, config, functions=2))
def _ks_inner(inputs, config):
    space, family = _space_family(inputs)
    f, g = SampledFunction(inputs["f"]), SampledFunction(inputs["g"])
    ident = config.tolerance("identity")

    ff = ks_inner(space, family, f, f)
    nonzero = bool(np.any(f.values[space.mass > 0] != 0))
    return _outcome(
        values={"fg": ks_inner(space, family, f, g), "ff": ff},
        flags={
            "symmetric": close(ks_inner(space, family, f, g), ks_inner(space, family, g, f), ident),
            "matches_norm": close(ff, ks_norm(space, family, f, 2) ** 2, ident),
            "positive": ff > 0 if nonzero and family.covers_singletons else ff >= 0,
        },
    )


def _gen_holder(rng, config):
    inputs = _basic(rng, config, functions=2)
    inputs["p"] = _pick(rng, _finite_exponents(config, lower_open=True))
    return inputs


@register("holder", _gen_holder)
def _holder(inputs, config):
    space, family = _space_family(inputs)
    return holder_report(space, family, SampledFunction(inputs["f"]), SampledFunction(inputs["g"]), inputs["p"])


@register("holder_counterexample", lambda rng, config: {"f": [1.0, -1.0], "p": 2.0})
def _holder_counterexample(inputs, config):
    space, family, f = _two_point(inputs["f"])
    record = holder_report(space, family, f, f, inputs["p"])
    ident = config.tolerance("identity")
    values = record["values"]
    return _outcome(
        values=values,
        flags=dict(
            record["flags"],
            ks1_reproduced=close(values["ks1_of_product"], 0.75, ident),
            product_reproduced=close(values["ks_product"], 0.125, ident),
            statement_refuted=not record["report_only"]["stated_inequality_ok"],
        ),
    )


#***** lipschitz *****


def _gen_seminorm(rng, config, sizes=None, exponents=None):
    inputs = _basic(rng, config, sizes=sizes)
    inputs["p"] = format_exponent(_pick(rng, exponents or config.solver_exponents))
    return inputs


def _gen_invariance(rng, config):
    inputs = _basic(rng, config, functions=2)
    inputs["p"] = format_exponent(_pick(rng, config.solver_exponents))
    inputs["c"] = float(rng.uniform(-5.0, 5.0))
    inputs["a"] = float(rng.uniform(-3.0, 3.0))
    return inputs


def _solver_tol(config, reference) -> float:
    return max(config.tolerance("solver_floor"), config.tolerance("solver_relative") * abs(reference))


@register("seminorm_invariance", _gen_invariance)
def _seminorm_invariance(inputs, config):
    space, family = _space_family(inputs)
    f, g = SampledFunction(inputs["f"]), SampledFunction(inputs["g"])
    p, a, c = check_exponent(inputs["p"]), inputs["a"], inputs["c"]
    opts = config.solver_options()

    def semi(h):
        return ks1p_seminorm(space, family, h, p, opts).value

    s_f, s_g = semi(f), semi(g)
    s_shift, s_scaled, s_sum = semi(f + c), semi(f * a), semi(f + g)
    s_const = semi(SampledFunction.constant(space.n_points, c))
    env = ks_norm(space, family, feasible_envelope(space, f).as_function(), p)
    return _outcome(
        values={"f": s_f, "g": s_g, "shifted": s_shift, "scaled": s_scaled, "sum": s_sum, "envelope": env},
        flags={
            "shift_invariant": abs(s_shift - s_f) <= _solver_tol(config, s_f),
            "homogeneous": abs(s_scaled - abs(a) * s_f) <= _solver_tol(config, abs(a) * s_f),
            "triangle": s_sum <= s_f + s_g + 2.0 * _solver_tol(config, s_f + s_g),
            "below_envelope": s_f <= env * (1.0 + config.tolerance("feasibility")),
            "constant_zero": s_const == 0.0,
        },
    )


def _gen_lipschitz(rng, config):
    space = _space_input(rng, config)
    L = float(rng.uniform(0.5, 3.0))
    f = gen_function("random-lipschitz", space_from_dict(space), _seed(rng), L=L)
    p = _pick(rng, config.exponents)
    return {"space": space, "scheme": config.scheme().to_dict(), "f": f.values.tolist(), "L": L, "p": format_exponent(p)}


@register("lipschitz_bound", _gen_lipschitz)
def _lipschitz_bound(inputs, config):
    space, family = _space_family(inputs)
    f = SampledFunction(inputs["f"])
    record = lip_membership_bound(space, family, f, inputs["p"], config.solver_options())
    record["flags"]["generator_bound"] = lip_constant(space, f) <= inputs["L"]
    return record


@register("uniqueness", lambda rng, config: _gen_seminorm(rng, config, sizes=_sizes(config, 8)))
def _uniqueness(inputs, config):
    space, family = _space_family(inputs)
    return minimizer_uniqueness_probe(
        space, family, SampledFunction(inputs["f"]), inputs["p"], config.uniqueness_restarts, config.solver_options()
    )


def _gen_oracle(rng, config):
    return _gen_seminorm(rng, config, sizes=(2, 3))


@register("seminorm_oracle", _gen_oracle)
def _seminorm_oracle(inputs, config):
    space, family = _space_family(inputs)
    f = SampledFunction(inputs["f"])
    solved = ks1p_seminorm(space, family, f, inputs["p"], config.solver_options()).value
    oracle = ks1p_oracle(space, family, f, inputs["p"], step=config.oracle_step)
    bound = max(config.tolerance("oracle_floor"), config.tolerance("solver_relative") * oracle)
    return _outcome(
        values={"solver": solved, "oracle": oracle, "difference": solved - oracle},
        flags={"agree": abs(solved - oracle) <= bound},
    )


@register("seminorm_worked_example", lambda rng, config: {"f": [0.0, 1.0], "p": 2.0})
def _seminorm_worked_example(inputs, config):
    space, family, f = _two_point(inputs["f"])
    expected = math.sqrt(5.0 / 32.0)
    solved = ks1p_seminorm(space, family, f, inputs["p"], config.solver_options())
    oracle = ks1p_oracle(space, family, f, inputs["p"], step=config.oracle_step)
    floor = config.tolerance("oracle_floor")
    return _outcome(
        values={"solver": solved.value, "oracle": oracle, "expected": expected, "witness": solved.witness.values},
        flags={"solver_matches": abs(solved.value - expected) <= floor, "oracle_matches": abs(oracle - expected) <= floor},
    )


def _gen_embedding(rng, config):
    inputs = _gen_seminorm(rng, config)
    inputs["q"] = format_exponent(_pick(rng, config.exponents))
    return inputs


@register("seminorm_embedding", _gen_embedding)
def _seminorm_embedding(inputs, config):
    space, family = _space_family(inputs)
    return seminorm_embedding_report(
        space, family, SampledFunction(inputs["f"]), inputs["p"], inputs["q"], config.solver_options()
    )


@register("lipschitz_density", lambda rng, config: _gen_seminorm(rng, config, sizes=_sizes(config, 8)))
def _lipschitz_density(inputs, config):
    space, family = _space_family(inputs)
    f = SampledFunction(inputs["f"])
    env = feasible_envelope(space, f).values[space.mass > 0]
    levels = np.unique(np.quantile(env, [0.25, 0.5, 0.75, 1.0])).tolist() if env.size else []
    return lipschitz_density_report(space, family, f, inputs["p"], levels, config.solver_options())


#***** sobolev *****


@register("poincare", lambda rng, config: _gen_seminorm(rng, config))
def _poincare(inputs, config):
    space, family = _space_family(inputs)
    return poincare_report(space, family, SampledFunction(inputs["f"]), inputs["p"], config.solver_options())


def _gen_equivalent(rng, config):
    space = _space_input(rng, config, sizes=_sizes(config, 8))
    n = _n_points(space)
    return {
        "space": space,
        "scheme": config.scheme().to_dict(),
        "functions": [_values(rng, n) for _ in range(5)],
        "p": format_exponent(_pick(rng, config.solver_exponents)),
    }


@register("equivalent_norm", _gen_equivalent)
def _equivalent_norm(inputs, config):
    space, family = _space_family(inputs)
    p = check_exponent(inputs["p"])
    f_set = [SampledFunction(v) for v in inputs["functions"]]
    opts = config.solver_options()

    l2 = equivalent_norm_check(space, family, f_set, p, lambda h: lp_norm(space, h, 2.0), opts)
    own = equivalent_norm_check(space, family, f_set, p, lambda h: ks_norm(space, family, h, p), opts)
    ident = config.tolerance("identity")
    return _outcome(
        values={"c_low": l2["values"]["c_low"], "c_high": l2["values"]["c_high"], "ratios": l2["values"]["ratios"]},
        flags={
            "ratios_finite_positive": l2["flags"]["ratios_finite_positive"],
            "own_norm_ratio_one": all(abs(r - 1.0) <= ident for r in own["values"]["ratios"]),
        },
    )


def _smooth_expression(rng, dim) -> str:
    terms = []
    for _ in range(3):
        a, b, c = rng.uniform(-1.0, 1.0), rng.uniform(0.5, 3.0), rng.uniform(-1.0, 1.0)
        axis = int(rng.integers(1, dim + 1))
        func = _pick(rng, ("sin", "cos"))
        terms.append(f"{a:.6f}*{func}({b:.6f}*x{axis} + {c:.6f})")
    if dim == 2:
        terms.append(f"{rng.uniform(-1.0, 1.0):.6f}*x1*x2")
    return " + ".join(terms)


def _gen_euclid(rng, config):
    grid = _grid_input(rng, config, probability=True)
    return {
        "grid": grid,
        "scheme": config.scheme().to_dict(),
        "expr": _smooth_expression(rng, grid["dim"]),
        "k": int(rng.integers(0, 3)),
        "q": format_exponent(_pick(rng, config.exponents)),
    }


def _derivative_exact(grid, expr, alpha, expected) -> bool:
    f = SampledFunction(evaluate_expression(expr, grid.coords))
    got = grid_weak_derivative(grid, f, alpha).values
    order = sum(alpha)
    scale = max(1.0, float(np.max(np.abs(f.values))) / grid.spacing**order)
    return bool(np.all(np.abs(got - expected) <= 1e-12 * scale))


@register("euclid", _gen_euclid)
def _euclid(inputs, config):
    grid, space, family = _grid_family(inputs)
    k = int(inputs["k"])
    f = SampledFunction(evaluate_expression(inputs["expr"], grid.coords))
    record = euclid_embedding_report(grid, family, f, k, inputs["q"])

    x1 = grid.coords[:, 0]
    first = (1,) + (0,) * (grid.dim - 1)
    second = (2,) + (0,) * (grid.dim - 1)
    exact = _derivative_exact(grid, "2.5*x1 - 1", first, 2.5) and _derivative_exact(grid, "3*x1^2 + x1", second, 6.0)
    exact = exact and _derivative_exact(grid, "3*x1^2 + x1", first, 6.0 * x1 + 1.0)
    if grid.dim == 2:
        exact = exact and _derivative_exact(grid, "x1*x2 - 0.5*x2", (1, 1), 1.0)

    inner = wsk2_inner(grid, family, f, f, k)
    squared = wskp_norm(grid, family, f, k, 2) ** 2
    record["values"].update({"wsk2_inner": inner, "wsk2_squared": squared})
    record["flags"].update(
        {"derivatives_exact": exact, "inner_matches_norm": close(inner, squared, config.tolerance("identity"))}
    )
    return record


#***** maximal *****


def _gen_maximal(rng, config):
    inputs = _basic(rng, config, functions=2)
    inputs["a"] = float(rng.uniform(-3.0, 3.0))
    inputs["R"] = sorted(float(v) for v in rng.uniform(0.01, 1.5, 2))
    return inputs


@register("maximal_properties", _gen_maximal)
def _maximal_properties(inputs, config):
    space, _ = _space_family(inputs)
    f, g = SampledFunction(inputs["f"]), SampledFunction(inputs["g"])
    a, (r1, r2) = inputs["a"], inputs["R"]
    ident = config.tolerance("identity")

    def all_leq(x, y):
        return all(leq(u, v, ident) for u, v in zip(x, y))

    mf, mg = maximal_function(space, f).values, maximal_function(space, g).values
    m_sum = maximal_function(space, f + g).values
    m_af = maximal_function(space, f * a).values
    m_mono = maximal_function(space, abs(f) + abs(g)).values
    positive = space.mass > 0
    restricted_1 = restricted_maximal(space, f, r1).values
    restricted_2 = restricted_maximal(space, f, r2).values
    beyond = restricted_maximal(space, f, 2.0 * space.diameter() + 1.0).values
    return _outcome(
        values={"max_mf": float(mf.max()), "R": [r1, r2]},
        flags={
            "sublinear": all_leq(m_sum, mf + mg),
            "homogeneous": all(close(u, abs(a) * v, ident) for u, v in zip(m_af, mf)),
            "monotone": all_leq(mf, m_mono),
            "dominates": all_leq(np.abs(f.values[positive]), mf[positive]),
            "restricted_monotone": bool(np.all(restricted_1 <= restricted_2)),
            "restricted_limit": np.array_equal(beyond, mf),
        },
    )


def _gen_covering(rng, config):
    space = _space_input(rng, config, kinds=("random-cloud",))
    ids = [p["id"] for p in space["points"]]
    count = int(rng.integers(1, 9))
    radii = rng.uniform(0.0, 0.6, count)
    radii[rng.uniform(size=count) < 0.1] = 0.0
    return {"space": space, "balls": [[_pick(rng, ids), float(r)] for r in radii]}


@register("covering", _gen_covering)
def _covering(inputs, config):
    space = space_from_dict(inputs["space"])
    balls = [(c, r) for c, r in inputs["balls"]]
    selection = greedy_5B(space, balls)
    return verify_covering(space, balls, selection)


def _gen_layer_cake(rng, config):
    inputs = _basic(rng, config, low=0.0, high=2.0)
    degree = int(rng.integers(0, 4))
    inputs["psi"] = rng.uniform(0.0, 1.0, degree + 1).tolist()
    return inputs


@register("layer_cake", _gen_layer_cake)
def _layer_cake(inputs, config):
    space = space_from_dict(inputs["space"])
    return layer_cake(space, SampledFunction(inputs["f"]), inputs["psi"])


def _gen_grid_nonnegative(rng, config, with_p=False):
    grid = _grid_input(rng, config)
    inputs = {"grid": grid, "scheme": config.scheme().to_dict(), "f": _values(rng, _n_nodes(grid), 0.0, 1.0)}
    if with_p:
        inputs["p"] = format_exponent(_pick(rng, config.solver_exponents))
    return inputs


@register("weak_type", _gen_grid_nonnegative)
def _weak_type(inputs, config):
    _, space, family = _grid_family(inputs)
    return weak_type_report(space, SampledFunction(inputs["f"]), family=family)


@register("strong_type", lambda rng, config: _gen_grid_nonnegative(rng, config, with_p=True))
def _strong_type(inputs, config):
    _, space, family = _grid_family(inputs)
    return strong_type_report(space, family, SampledFunction(inputs["f"]), inputs["p"])


def _gen_ws_maximal(rng, config):
    inputs = _basic(rng, config, sizes=_sizes(config, 8), low=0.0, high=1.0)
    inputs["p"] = format_exponent(_pick(rng, config.solver_exponents))
    return inputs


@register("ws_maximal", _gen_ws_maximal)
def _ws_maximal(inputs, config):
    space, family = _space_family(inputs)
    return ws_maximal_report(space, family, SampledFunction(inputs["f"]), inputs["p"], config.solver_options())
