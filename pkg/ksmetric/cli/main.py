"""Click-based command line interface for ksmetric."""

from __future__ import annotations

from typing import Optional

from contextlib import redirect_stdout
from io import StringIO
import logging
from pathlib import Path
import sys

import click

from ksmetric.errors import (
    InternalError,
    KSMetricError,
    PropertyFailure,
    SizeCap,
    UsageError,
    ValidationError,
)
from ksmetric.gridspec import GridSpec
from ksmetric.harness.config import SuiteConfig
from ksmetric.harness.emit import emit_report
from ksmetric.harness.generators import FUNCTION_KINDS, SPACE_KINDS, gen_function, gen_space
from ksmetric.harness.suite import Report, replay_record, run_suite
from ksmetric.tools.constants import SIZE_CAP
from ksmetric.tools.lipfuncs.oracle import ks1p_oracle
from ksmetric.tools.lipfuncs.slopes import lip_constant
from ksmetric.tools.lipfuncs.solver import SolverOptions, ks1p_seminorm
from ksmetric.tools.maxfuncs.covering import greedy_5B, verify_covering
from ksmetric.tools.maxfuncs.layercake import layer_cake
from ksmetric.tools.maxfuncs.operator import maximal_function, restricted_maximal
from ksmetric.tools.normfuncs.norms import ks_norm, lp_norm
from ksmetric.tools.sobolevfuncs.metric import poincare_report, ws1p_parts
from ksmetric.tools.spacefuncs.balls import ball_integrals
from ksmetric.tools.spacefuncs.instantiation import load_function, save_function, save_space
from ksmetric.tools.typechecks import format_exponent

from .io import (
    CaptureHandler,
    build_family,
    load_function_arg,
    load_space_arg,
    parse_exponent_option,
    parse_floats,
    read_balls,
    write_json,
)
from .output import CLIContext, emit_error, emit_success, schema_name

_KNOWN_COMMANDS = {
    "validate",
    "grid",
    "gen",
    "norm",
    "seminorm",
    "wsnorm",
    "poincare",
    "maximal",
    "cover",
    "layercake",
    "verify",
    "replay",
    "report",
}
_FORMATS = ["json", "csv", "svg"]
_PATH = click.Path(dir_okay=False, path_type=Path)


@click.group(context_settings={"help_option_names": ["-h", "--help"]})
@click.option("--json", "json_output", is_flag=True, help="Output machine-readable JSON.")
@click.option("--verbose", is_flag=True, help="Enable debug logging (stderr, or diagnostics with --json).")
@click.option("--seed", type=int, help="Seed for generators, solver restarts and the suite.")
@click.option(
    "--probability-mode/--raw-measure",
    "probability",
    default=None,
    help="Normalize total mass to 1 (default) or keep the measure as given.",
)
@click.pass_context
def cli(ctx: click.Context, json_output: bool, verbose: bool, seed: Optional[int], probability: Optional[bool]):
    """Kuelbs-Steadman and HK-Sobolev norms on finite metric measure spaces."""

    ctx.obj = CLIContext(
        json_output=json_output,
        verbose=verbose,
        seed=seed,
        probability=probability,
    )


def _probability(ctx_cfg: CLIContext) -> bool:
    return True if ctx_cfg.probability is None else ctx_cfg.probability


def _run_command(ctx_cfg: CLIContext, command_name: str, action):
    package_logger = logging.getLogger("ksmetric")
    previous_level = package_logger.level
    level = logging.DEBUG if ctx_cfg.verbose else logging.INFO
    if ctx_cfg.json_output:
        handler = CaptureHandler()
        handler.setLevel(level)
    else:
        handler = logging.StreamHandler(sys.stderr)
        handler.setLevel(logging.DEBUG if ctx_cfg.verbose else logging.WARNING)
        handler.setFormatter(logging.Formatter("%(levelname)s %(name)s: %(message)s"))
    package_logger.addHandler(handler)
    package_logger.setLevel(level)

    def _captured() -> list[str]:
        return list(handler.lines) if ctx_cfg.json_output else []

    try:
        payload = action() or {}
        diagnostics = _captured()
        if diagnostics:
            payload.setdefault("diagnostics", [])
            payload["diagnostics"].extend(diagnostics)
            payload.setdefault("warnings", [])
            summary = f"{len(diagnostics)} internal diagnostic line(s) captured"
            if summary not in payload["warnings"]:
                payload["warnings"].append(summary)
        emit_success(ctx_cfg, command_name, payload)
    except KSMetricError as exc:
        _attach_diagnostics(exc, _captured())
        emit_error(ctx_cfg, command_name, exc, exc.exit_code)
        raise SystemExit(exc.exit_code) from exc
    except (FileNotFoundError, IsADirectoryError) as exc:
        wrapped = UsageError(str(exc))
        _attach_diagnostics(wrapped, _captured())
        emit_error(ctx_cfg, command_name, wrapped, wrapped.exit_code)
        raise SystemExit(wrapped.exit_code) from exc
    except (AssertionError, ValueError, TypeError, KeyError) as exc:
        wrapped = ValidationError(str(exc))
        _attach_diagnostics(wrapped, _captured())
        emit_error(ctx_cfg, command_name, wrapped, wrapped.exit_code)
        raise SystemExit(wrapped.exit_code) from exc
    except click.ClickException:
        raise
    except Exception as exc:
        wrapped = InternalError(str(exc))
        _attach_diagnostics(wrapped, _captured())
        emit_error(ctx_cfg, command_name, wrapped, wrapped.exit_code)
        raise SystemExit(wrapped.exit_code) from exc
    finally:
        package_logger.removeHandler(handler)
        package_logger.setLevel(previous_level)


def _attach_diagnostics(exc: Exception, diagnostics: list[str]) -> None:
    if diagnostics:
        setattr(exc, "_cli_diagnostics", diagnostics)


def _context_from_args(args: list[str]) -> CLIContext:
    return CLIContext(
        json_output="--json" in args,
        verbose="--verbose" in args,
    )


def _infer_command_from_args(args: list[str]) -> str:
    for idx, token in enumerate(args):
        if token.startswith("-"):
            continue
        if token in _KNOWN_COMMANDS:
            if token == "gen":
                for sub in args[idx + 1 :]:
                    if not sub.startswith("-"):
                        return f"gen {sub}"
            return token

    for token in args:
        if not token.startswith("-"):
            return token

    return "cli"


def _json_help_response(args: list[str], ctx_cfg: CLIContext) -> int:
    captured = StringIO()
    command = _infer_command_from_args(args)
    try:
        with redirect_stdout(captured):
            cli.main(args=args, prog_name="ksmetric", standalone_mode=False)
    except SystemExit as exc:
        if isinstance(exc.code, int) and exc.code != 0:
            wrapped = UsageError("help rendering failed")
            emit_error(ctx_cfg, command, wrapped, exc.code)
            return exc.code
    except click.ClickException as exc:
        wrapped = UsageError(exc.format_message())
        emit_error(ctx_cfg, command, wrapped, exc.exit_code)
        return exc.exit_code

    help_text = captured.getvalue().rstrip()
    payload = {
        "message": f"{command} help",
        "data": {"help": help_text},
        "data_schema": schema_name(command, "help"),
    }
    emit_success(ctx_cfg, command, payload)
    return 0


#***** shared options *****


def _space_option(func):
    return click.option("--space", "space_path", type=_PATH, required=True, help="Space JSON file.")(func)


def _function_options(func):
    options = [
        click.option("--fn", "--f", "function_path", type=_PATH, help="Function JSON file."),
        click.option("--values", type=str, help="Comma-separated values, one per point."),
        click.option("--expr", type=str, help="Expression in x1..xD (see README)."),
    ]
    for option in reversed(options):
        func = option(func)
    return func


def _family_options(func):
    options = [
        click.option("--balls", "balls_path", type=_PATH, help="Explicit ball family file."),
        click.option(
            "--weight-rule",
            type=click.Choice(["geometric", "uniform"]),
            default="geometric",
            show_default=True,
        ),
        click.option("--ratio", type=float, default=0.5, show_default=True, help="Geometric weight ratio."),
        click.option("--radius-grid", type=str, help="Comma-separated increasing radii."),
    ]
    for option in reversed(options):
        func = option(func)
    return func


def _solver_options(func):
    options = [
        click.option("--tol", type=float, help="Solver tolerance."),
        click.option("--max-iters", type=int, help="Iteration cap per start."),
        click.option("--restarts", type=int, help="Random feasible starts besides the envelope."),
        click.option("--method", type=click.Choice(["active-set", "subgradient"]), help="Solver method."),
    ]
    for option in reversed(options):
        func = option(func)
    return func


def _load_inputs(ctx_cfg, space_path, function_path, values, expr):
    space = load_space_arg(space_path, probability=_probability(ctx_cfg))
    f = load_function_arg(space, path=function_path, values=values, expr=expr)
    return space, f


def _make_options(ctx_cfg, tol, max_iters, restarts, method) -> SolverOptions:
    return SolverOptions.from_defaults(
        tolerance=tol,
        max_iters=max_iters,
        restarts=restarts,
        method=method,
        seed=ctx_cfg.seed,
    )


#***** space commands *****


@cli.command("validate")
@_space_option
@click.option("--fn", "--f", "function_path", type=_PATH, help="Also check that a function file aligns with the space.")
@click.pass_obj
def validate_command(ctx_cfg: CLIContext, space_path: Path, function_path: Optional[Path]):
    """Check the metric axioms and the measure of a space file."""

    def _action():
        space = load_space_arg(space_path, probability=False)
        data = {
            "points": space.n_points,
            "metric_type": space.metric_type,
            "total_mass": space.total_mass,
            "is_probability": space.is_probability,
            "diameter": space.diameter(),
            "min_positive_distance": space.min_positive_distance(),
            "doubling_constant": space.doubling_constant(),
        }
        if function_path is not None:
            f = load_function(function_path, space=space)
            data["function_values"] = len(f)
        return {
            "message": f"space is valid ({space.n_points} points)",
            "input": str(space_path),
            "data": data,
            "data_schema": "ksmetric.cli.validate.data.v1",
            "table": list(data.items()),
        }

    _run_command(ctx_cfg, "validate", _action)


@cli.command("grid")
@click.option("--dim", type=int, required=True, help="Number of axes.")
@click.option("--n", "n_per_axis", type=int, required=True, help="Nodes per axis.")
@click.option("--domain", type=click.Choice(["unit-cube"]), default="unit-cube", show_default=True)
@click.option("--mode", type=click.Choice(["probability", "raw"]), help="Node masses; defaults to the global mode.")
@click.option("--out", "output_path", type=_PATH, required=True, help="Output space file.")
@click.pass_obj
def grid_command(ctx_cfg: CLIContext, dim: int, n_per_axis: int, domain: str, mode: Optional[str], output_path: Path):
    """Write a uniform grid as a space file plus a sidecar grid descriptor."""

    def _action():
        probability = (mode == "probability") if mode else _probability(ctx_cfg)
        if dim < 1 or n_per_axis < 1:
            raise UsageError("--dim and --n must be >= 1")
        if n_per_axis**dim > SIZE_CAP:
            raise SizeCap(f"grid has {n_per_axis**dim} nodes, cap is {SIZE_CAP}")
        grid = GridSpec.unit_cube(dim, n_per_axis, probability)
        save_space(grid.to_space(), output_path)
        sidecar = output_path.with_suffix(".grid.json")
        write_json(sidecar, dict(grid.to_dict(), domain=domain))
        return {
            "message": f"wrote {grid.n_nodes}-node grid",
            "output": str(output_path),
            "changes": {"nodes": grid.n_nodes},
            "data": {"grid": grid.to_dict(), "descriptor": str(sidecar)},
            "data_schema": "ksmetric.cli.grid.data.v1",
        }

    _run_command(ctx_cfg, "grid", _action)


@cli.group("gen")
def gen_group():
    """Generate synthetic spaces and functions."""


@gen_group.command("space")
@click.option("--kind", type=click.Choice(list(SPACE_KINDS)), required=True)
@click.option("--size", type=int, required=True, help="Points (nodes per axis for grid-2d).")
@click.option("--out", "output_path", type=_PATH, required=True)
@click.pass_obj
def gen_space_command(ctx_cfg: CLIContext, kind: str, size: int, output_path: Path):
    """Generate a space file."""

    def _action():
        seed = ctx_cfg.seed or 0
        space = gen_space(kind, size, seed, probability=_probability(ctx_cfg))
        save_space(space, output_path)
        return {
            "message": f"generated {kind} space with {space.n_points} points",
            "output": str(output_path),
            "changes": {"points": space.n_points},
            "data": {"kind": kind, "size": size, "seed": seed, "points": space.n_points},
            "data_schema": "ksmetric.cli.gen_space.data.v1",
        }

    _run_command(ctx_cfg, "gen space", _action)


@gen_group.command("function")
@click.option("--kind", type=click.Choice(list(FUNCTION_KINDS)), required=True)
@_space_option
@click.option("--L", "lip", type=float, help="Lipschitz bound for random-lipschitz.")
@click.option("--expr", type=str, help="Expression for polynomial.")
@click.option("--ids", type=str, help="Comma-separated point ids for indicator.")
@click.option("--out", "output_path", type=_PATH, required=True)
@click.pass_obj
def gen_function_command(
    ctx_cfg: CLIContext,
    kind: str,
    space_path: Path,
    lip: Optional[float],
    expr: Optional[str],
    ids: Optional[str],
    output_path: Path,
):
    """Generate a function file on a space."""

    def _action():
        seed = ctx_cfg.seed or 0
        space = load_space_arg(space_path, probability=_probability(ctx_cfg))
        params = {k: v for k, v in {"L": lip, "expr": expr, "ids": ids}.items() if v is not None}
        f = gen_function(kind, space, seed, **params)
        save_function(f, output_path)
        return {
            "message": f"generated {kind} function on {space.n_points} points",
            "input": str(space_path),
            "output": str(output_path),
            "changes": {"values": len(f)},
            "data": {"kind": kind, "seed": seed, "lip_constant": lip_constant(space, f)},
            "data_schema": "ksmetric.cli.gen_function.data.v1",
        }

    _run_command(ctx_cfg, "gen function", _action)


#***** norm commands *****


@cli.command("norm")
@_space_option
@_function_options
@_family_options
@click.option("--p", "p_text", default="2", show_default=True, help="Exponent in [1, inf].")
@click.pass_obj
def norm_command(ctx_cfg: CLIContext, space_path, function_path, values, expr, balls_path, weight_rule, ratio, radius_grid, p_text):
    """KS^p and L^p norms of a function."""

    def _action():
        space, f = _load_inputs(ctx_cfg, space_path, function_path, values, expr)
        family = build_family(space, balls_path=balls_path, weight_rule=weight_rule, ratio=ratio, radius_grid=radius_grid)
        p = parse_exponent_option(p_text)
        data = {
            "p": format_exponent(p),
            "ks_norm": ks_norm(space, family, f, p),
            "lp_norm": lp_norm(space, f, p),
            "balls": len(family),
            "has_full_ball": family.has_full_ball,
            "covers_singletons": family.covers_singletons,
            "ball_integrals": ball_integrals(space, family, f).tolist(),
        }
        return {
            "message": f"KS^{format_exponent(p)} norm {data['ks_norm']:.10g}",
            "input": str(space_path),
            "data": data,
            "data_schema": "ksmetric.cli.norm.data.v1",
            "table": [(k, data[k]) for k in ("p", "ks_norm", "lp_norm", "balls", "covers_singletons")],
        }

    _run_command(ctx_cfg, "norm", _action)


@cli.command("seminorm")
@_space_option
@_function_options
@_family_options
@_solver_options
@click.option("--p", "p_text", default="2", show_default=True)
@click.option("--oracle", "with_oracle", is_flag=True, help="Also run the grid oracle (at most 3 points).")
@click.option("--witness-out", type=_PATH, help="Write the gradient witness as a function file.")
@click.pass_obj
def seminorm_command(
    ctx_cfg: CLIContext,
    space_path,
    function_path,
    values,
    expr,
    balls_path,
    weight_rule,
    ratio,
    radius_grid,
    tol,
    max_iters,
    restarts,
    method,
    p_text,
    with_oracle,
    witness_out,
):
    """KS^{1,p} semi-norm with its minimizing gradient witness."""

    def _action():
        space, f = _load_inputs(ctx_cfg, space_path, function_path, values, expr)
        family = build_family(space, balls_path=balls_path, weight_rule=weight_rule, ratio=ratio, radius_grid=radius_grid)
        p = parse_exponent_option(p_text)
        result = ks1p_seminorm(space, family, f, p, _make_options(ctx_cfg, tol, max_iters, restarts, method))
        data = result.to_dict()
        data["p"] = format_exponent(p)
        data["lip_constant"] = lip_constant(space, f)
        if with_oracle:
            data["oracle"] = ks1p_oracle(space, family, f, p)
        if witness_out is not None:
            save_function(result.witness.as_function(), witness_out)
        table = [("value", result.value), ("converged", result.converged), ("iterations", result.iterations)]
        if with_oracle:
            table.append(("oracle", data["oracle"]))
        return {
            "message": f"KS^(1,{format_exponent(p)}) semi-norm {result.value:.10g}",
            "input": str(space_path),
            "output": str(witness_out) if witness_out else None,
            "data": data,
            "data_schema": "ksmetric.cli.seminorm.data.v1",
            "table": table,
        }

    _run_command(ctx_cfg, "seminorm", _action)


@cli.command("wsnorm")
@_space_option
@_function_options
@_family_options
@_solver_options
@click.option("--p", "p_text", default="2", show_default=True)
@click.pass_obj
def wsnorm_command(
    ctx_cfg: CLIContext, space_path, function_path, values, expr, balls_path, weight_rule, ratio, radius_grid, tol, max_iters, restarts, method, p_text
):
    """WS^{1,p} norm: KS^p norm plus KS^{1,p} semi-norm."""

    def _action():
        space, f = _load_inputs(ctx_cfg, space_path, function_path, values, expr)
        family = build_family(space, balls_path=balls_path, weight_rule=weight_rule, ratio=ratio, radius_grid=radius_grid)
        p = parse_exponent_option(p_text)
        ks, semi = ws1p_parts(space, family, f, p, _make_options(ctx_cfg, tol, max_iters, restarts, method))
        data = {"p": format_exponent(p), "ks_norm": ks, "seminorm": semi.value, "ws_norm": ks + semi.value}
        return {
            "message": f"WS^(1,{format_exponent(p)}) norm {data['ws_norm']:.10g}",
            "input": str(space_path),
            "data": data,
            "data_schema": "ksmetric.cli.wsnorm.data.v1",
            "table": list(data.items()),
        }

    _run_command(ctx_cfg, "wsnorm", _action)


@cli.command("poincare")
@_space_option
@_function_options
@_family_options
@_solver_options
@click.option("--p", "p_text", default="2", show_default=True)
@click.pass_obj
def poincare_command(
    ctx_cfg: CLIContext, space_path, function_path, values, expr, balls_path, weight_rule, ratio, radius_grid, tol, max_iters, restarts, method, p_text
):
    """Poincare inequality with the derived and the 2 diam constants."""

    def _action():
        space, f = _load_inputs(ctx_cfg, space_path, function_path, values, expr)
        family = build_family(space, balls_path=balls_path, weight_rule=weight_rule, ratio=ratio, radius_grid=radius_grid)
        p = parse_exponent_option(p_text)
        record = poincare_report(space, family, f, p, _make_options(ctx_cfg, tol, max_iters, restarts, method))
        return {
            "message": "poincare inequality " + ("holds" if record["flags"]["ok_derived"] else "FAILS") + " with the derived constant",
            "input": str(space_path),
            "data": record,
            "data_schema": "ksmetric.cli.poincare.data.v1",
            "table": list(record["values"].items()) + list(record["flags"].items()) + list(record["report_only"].items()),
        }

    _run_command(ctx_cfg, "poincare", _action)


#***** maximal commands *****


@cli.command("maximal")
@_space_option
@_function_options
@click.option("--restrict", "radius", type=float, help="Only balls of radius < R.")
@click.option("--out", "output_path", type=_PATH, help="Write Mf as a function file.")
@click.pass_obj
def maximal_command(ctx_cfg: CLIContext, space_path, function_path, values, expr, radius, output_path):
    """Hardy-Littlewood maximal function."""

    def _action():
        space, f = _load_inputs(ctx_cfg, space_path, function_path, values, expr)
        mf = maximal_function(space, f) if radius is None else restricted_maximal(space, f, radius)
        if output_path is not None:
            save_function(mf, output_path)
        by_point = dict(zip(space.point_ids, mf.values.tolist()))
        return {
            "message": f"maximal function on {space.n_points} points" + ("" if radius is None else f" (radius < {radius})"),
            "input": str(space_path),
            "output": str(output_path) if output_path else None,
            "data": {"values": mf.values.tolist(), "by_point": by_point, "restrict": radius},
            "data_schema": "ksmetric.cli.maximal.data.v1",
            "table": list(by_point.items())[:20],
        }

    _run_command(ctx_cfg, "maximal", _action)


@cli.command("cover")
@_space_option
@click.option("--balls", "balls_path", type=_PATH, required=True, help="Ball list file.")
@click.option("--out", "output_path", type=_PATH, help="Write the selection as JSON.")
@click.pass_obj
def cover_command(ctx_cfg: CLIContext, space_path, balls_path, output_path):
    """Greedy disjoint subfamily whose 5-fold dilations cover the input balls."""

    def _action():
        space = load_space_arg(space_path, probability=_probability(ctx_cfg))
        balls, _ = read_balls(balls_path)
        selection = greedy_5B(space, balls)
        record = verify_covering(space, balls, selection)
        chosen = [list(balls[i]) for i in selection.selected]
        if output_path is not None:
            write_json(
                output_path,
                dict(selection.to_dict(), balls=[{"center": c, "radius": r} for c, r in chosen], flags=record["flags"]),
            )
        return {
            "message": f"selected {len(chosen)} of {len(balls)} ball(s)",
            "input": str(space_path),
            "output": str(output_path) if output_path else None,
            "data": {"selection": selection.to_dict(), "balls": chosen, "flags": record["flags"]},
            "data_schema": "ksmetric.cli.cover.data.v1",
            "table": [("selected", chosen)] + list(record["flags"].items()),
        }

    _run_command(ctx_cfg, "cover", _action)


@cli.command("layercake")
@_space_option
@_function_options
@click.option("--psi", required=True, help="Coefficients of psi in ascending order, comma-separated.")
@click.pass_obj
def layercake_command(ctx_cfg: CLIContext, space_path, function_path, values, expr, psi):
    """Layer-cake identity for a polynomial psi."""

    def _action():
        space, f = _load_inputs(ctx_cfg, space_path, function_path, values, expr)
        record = layer_cake(space, f, parse_floats(psi, "--psi"))
        return {
            "message": "layer cake " + ("holds" if record["flags"]["equal_ok"] else "FAILS"),
            "input": str(space_path),
            "data": record,
            "data_schema": "ksmetric.cli.layercake.data.v1",
            "table": list(record["values"].items()) + list(record["flags"].items()),
        }

    _run_command(ctx_cfg, "layercake", _action)


#***** harness commands *****


def _summary_table(summary: dict) -> list:
    rows = [("records", summary["records"]), ("passed", summary["passed"]), ("failed", summary["failed"])]
    for name, stats in sorted(summary["ratios"].items()):
        rows.append((f"{name} {stats['field']} max", stats["max"]))
    return rows


@cli.command("verify")
@click.option("--config", "config_path", type=_PATH, help="JSON suite configuration.")
@click.option("--trials", type=int, help="Trials for every check.")
@click.option("--check", "checks", multiple=True, help="Run only this check (repeatable).")
@click.option("--out", "out_dir", type=click.Path(file_okay=False, path_type=Path), default=Path("ksmetric-report"), show_default=True)
@click.option("--format", "formats", multiple=True, type=click.Choice(_FORMATS), help="Report formats (repeatable).")
@click.option("--timings", is_flag=True, help="Record wall-clock time per record.")
@click.pass_obj
def verify_command(ctx_cfg: CLIContext, config_path, trials, checks, out_dir, formats, timings):
    """Run the randomized property suite and write the report."""

    def _action():
        overrides = {
            "seed": ctx_cfg.seed,
            "trials": trials,
            "checks": list(checks) or None,
            "probability_mode": ctx_cfg.probability,
            "formats": list(formats) or None,
            "record_timings": True if timings else None,
            "out_dir": str(out_dir),
        }
        if config_path is not None:
            config = SuiteConfig.from_file(config_path, **overrides)
        else:
            config = SuiteConfig.from_defaults(**overrides)
        report = run_suite(config)
        written = emit_report(report, out_dir, config.formats)
        summary = report.summary()
        if not report.passed:
            raise PropertyFailure(
                f"{summary['failed']} of {summary['records']} record(s) failed",
                details={"counterexamples": summary["counterexamples"], "output": written},
            )
        return {
            "message": f"all {summary['records']} record(s) passed",
            "output": str(out_dir),
            "changes": {"files": len(written)},
            "data": {"summary": summary, "files": written},
            "data_schema": "ksmetric.cli.verify.data.v1",
            "table": _summary_table(summary),
        }

    _run_command(ctx_cfg, "verify", _action)


@cli.command("replay")
@click.option("--report", "report_path", type=_PATH, required=True, help="report.json from verify.")
@click.option("--record", "record_id", required=True, help="Record id, e.g. holder/0007.")
@click.pass_obj
def replay_command(ctx_cfg: CLIContext, report_path, record_id):
    """Re-evaluate one record of a report."""

    def _action():
        record = replay_record(Report.load(report_path), record_id)
        if not record["passed"]:
            failing = sorted(k for k, v in record["asserted"].items() if not v)
            raise PropertyFailure(f"{record_id} fails: {', '.join(failing)}", details={"record": record})
        return {
            "message": f"{record_id} passes",
            "input": str(report_path),
            "data": {"record": record},
            "data_schema": "ksmetric.cli.replay.data.v1",
            "table": list(record["asserted"].items()),
        }

    _run_command(ctx_cfg, "replay", _action)


@cli.command("report")
@click.option("--report", "report_path", type=_PATH, required=True, help="report.json from verify.")
@click.option("--out", "out_dir", type=click.Path(file_okay=False, path_type=Path), required=True)
@click.option("--format", "formats", multiple=True, type=click.Choice(_FORMATS))
@click.pass_obj
def report_command(ctx_cfg: CLIContext, report_path, out_dir, formats):
    """Re-render CSV and SVG (or JSON) from an existing JSON report."""

    def _action():
        report = Report.load(report_path)
        written = emit_report(report, out_dir, list(formats) or ["csv", "svg"])
        summary = report.summary()
        return {
            "message": f"rendered {len(written)} file(s) for {summary['records']} record(s)",
            "input": str(report_path),
            "output": str(out_dir),
            "changes": {"files": len(written)},
            "data": {"summary": summary, "files": written},
            "data_schema": "ksmetric.cli.report.data.v1",
            "table": _summary_table(summary),
        }

    _run_command(ctx_cfg, "report", _action)


def main(argv: Optional[list[str]] = None) -> int:
    args = list(sys.argv[1:] if argv is None else argv)
    ctx_cfg = _context_from_args(args)

    if ctx_cfg.json_output and ("--help" in args or "-h" in args):
        return _json_help_response(args, ctx_cfg)

    try:
        cli.main(args=args, prog_name="ksmetric", standalone_mode=False)
        return 0
    except SystemExit as exc:
        if isinstance(exc.code, int):
            return exc.code
        return 1
    except click.ClickException as exc:
        if ctx_cfg.json_output:
            wrapped = UsageError(exc.format_message())
            emit_error(ctx_cfg, _infer_command_from_args(args), wrapped, exc.exit_code)
        else:
            exc.show()
        return exc.exit_code
    except KSMetricError as exc:
        if ctx_cfg.json_output:
            emit_error(ctx_cfg, _infer_command_from_args(args), exc, exc.exit_code)
        else:
            click.echo(f"error: {exc}", err=True)
        return exc.exit_code
    except Exception as exc:
        wrapped = InternalError(str(exc))
        if ctx_cfg.json_output:
            emit_error(ctx_cfg, _infer_command_from_args(args), wrapped, wrapped.exit_code)
            return wrapped.exit_code
        raise


if __name__ == "__main__":
    raise SystemExit(main())
