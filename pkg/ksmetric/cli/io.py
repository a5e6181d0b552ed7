"""I/O and parsing helpers for the ksmetric CLI."""

from __future__ import annotations

from typing import Optional

import json
import logging
from pathlib import Path

from ksmetric.ballfamily import BallFamily, BallScheme
from ksmetric.errors import KSMetricError, UsageError, ValidationError
from ksmetric.functions import SampledFunction
from ksmetric.harness.expressions import evaluate_expression
from ksmetric.tools.spacefuncs.balls import enumerate_balls
from ksmetric.tools.spacefuncs.instantiation import load_function, load_space
from ksmetric.tools.typechecks import parse_exponent


def parse_floats(text: str, what: str = "values") -> list[float]:
    """Parse a comma-separated list of numbers."""

    parts = [part.strip() for part in text.split(",") if part.strip()]
    if not parts:
        raise UsageError(f"{what} must be a comma-separated list of numbers")
    try:
        return [float(part) for part in parts]
    except ValueError as exc:
        raise UsageError(f"{what} '{text}' must contain numbers only") from exc


def parse_exponent_option(text: str, name: str = "p") -> float:
    try:
        return parse_exponent(text)
    except KSMetricError as exc:
        raise UsageError(f"--{name}: {exc}") from exc


def load_space_arg(path: Path, *, probability: bool):
    """Load a space file; probability mode rescales its masses to total 1."""

    if not path.exists():
        raise UsageError(f"space file not found: {path}")
    space = load_space(path)
    if probability and not space.is_probability:
        return space.normalized()
    return space


def load_function_arg(space, *, path: Optional[Path], values: Optional[str], expr: Optional[str]) -> SampledFunction:
    """Exactly one of --fn, --values and --expr."""

    given = [x for x in (path, values, expr) if x is not None]
    if len(given) != 1:
        raise UsageError("pass exactly one of --fn, --values or --expr")
    if path is not None:
        if not path.exists():
            raise UsageError(f"function file not found: {path}")
        return load_function(path, space=space)
    if values is not None:
        return SampledFunction(parse_floats(values)).check_aligned(space)
    if space.coords is None:
        raise UsageError("--expr needs a space with coordinates")
    return SampledFunction(evaluate_expression(expr, space.coords))


def _read_json(path: Path):
    if not path.exists():
        raise UsageError(f"file not found: {path}")
    try:
        return json.loads(path.read_text(encoding="utf-8"))
    except json.JSONDecodeError as exc:
        raise ValidationError(f"{path} is not valid JSON: {exc}") from exc


def _ball_entry(entry) -> tuple[str, float]:
    if isinstance(entry, dict):
        return str(entry["center"]), float(entry["radius"])
    center, radius = entry
    return str(center), float(radius)


def read_balls(path: Path) -> tuple[list, Optional[list]]:
    """
    Ball list file: [{"center": id, "radius": r}, ...], optionally wrapped as
    {"balls": [...], "weights": [...]}. [center_id, radius] pairs are accepted as entries too.
    """

    data = _read_json(path)
    if isinstance(data, list):
        data = {"balls": data}
    try:
        balls = [_ball_entry(entry) for entry in data["balls"]]
    except (KeyError, TypeError, ValueError) as exc:
        raise ValidationError(
            f"{path} must list {{\"center\": id, \"radius\": r}} entries or [center_id, radius] pairs"
        ) from exc
    return balls, data.get("weights")


def build_family(space, *, balls_path: Optional[Path], weight_rule: str, ratio: float, radius_grid: Optional[str]):
    """Explicit family from a ball file, otherwise the enumerated one."""

    if balls_path is not None:
        balls, weights = read_balls(balls_path)
        return BallFamily.from_balls(space, balls, weights)
    grid = tuple(parse_floats(radius_grid, "radius grid")) if radius_grid else None
    return enumerate_balls(space, BallScheme(radius_grid=grid, weight_rule=weight_rule, ratio=ratio))


def write_json(path: Path, data) -> str:
    from ksmetric.tools.spacefuncs.instantiation import _write_json

    return str(_write_json(path, data))


class CaptureHandler(logging.Handler):
    """Collects formatted log records for the JSON envelope's diagnostics list."""

    def __init__(self):
        super().__init__(level=logging.DEBUG)
        self.lines: list[str] = []
        self.setFormatter(logging.Formatter("%(levelname)s %(name)s: %(message)s"))

    def emit(self, record):
        self.lines.append(self.format(record))
