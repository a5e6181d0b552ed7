"""
Suite configuration: packaged defaults, an optional JSON file, then explicit overrides.
"""

from __future__ import annotations

import json
import logging
from dataclasses import asdict, dataclass, field, replace
from typing import Optional

from ..ballfamily import BallScheme
from ..errors import IoFailure, UsageError, ValidationError
from ..tools.constants import get_constant
from ..tools.lipfuncs.solver import SolverOptions
from ..tools.typechecks import check_exponent, format_exponent

logger = logging.getLogger(__name__)


def _suite_defaults() -> dict:
    suite = get_constant("suite")
    balls = get_constant("balls")
    return dict(
        suite,
        weight_rule=balls["weight_rule"],
        weight_ratio=balls["weight_ratio"],
        tolerances=get_constant("tolerances"),
        solver=get_constant("solver"),
    )


@dataclass(frozen=True)
class SuiteConfig:
    """
    Everything a suite run depends on. Two runs with equal configs produce byte-identical
    reports; ``out_dir`` and ``formats`` only say where they go.

    :param seed: root seed, split per (check, trial).
    :type seed: int

    :param trials: trials per check name.
    :type trials: dict

    :param checks: subset of check names to run; None runs every registered check.
    :type checks: list of str, optional; default: None
    """

    seed: int = 42
    trials: dict = field(default_factory=dict)
    space_sizes: tuple = (3, 5, 8, 12)
    grid_sizes: tuple = (16, 32, 64, 256)
    grid2d_sizes: tuple = (5, 8, 12, 32)
    exponents: tuple = (1.0, 1.5, 2.0, 4.0, float("inf"))
    solver_exponents: tuple = (1.5, 2.0, 4.0)
    weight_rule: str = "geometric"
    weight_ratio: float = 0.5
    probability_mode: bool = True
    tolerances: dict = field(default_factory=dict)
    solver: dict = field(default_factory=dict)
    oracle_step: float = 1e-3
    uniqueness_restarts: int = 5
    formats: tuple = ("json", "csv", "svg")
    record_timings: bool = False
    checks: Optional[tuple] = None
    out_dir: Optional[str] = None

    def __post_init__(self):
        object.__setattr__(self, "exponents", tuple(check_exponent(p) for p in self.exponents))
        object.__setattr__(self, "solver_exponents", tuple(check_exponent(p) for p in self.solver_exponents))
        for name in ("space_sizes", "grid_sizes", "grid2d_sizes", "formats"):
            object.__setattr__(self, name, tuple(getattr(self, name)))
        if self.checks is not None:
            object.__setattr__(self, "checks", tuple(sorted(set(self.checks))))
        if any(int(v) < 0 for v in self.trials.values()):
            raise UsageError("trial counts must be >= 0")
        if not self.space_sizes or min(self.space_sizes) < 1:
            raise UsageError("space_sizes must be a nonempty list of positive sizes")
        unknown = set(self.formats) - {"json", "csv", "svg"}
        if unknown:
            raise UsageError(f"unknown report formats: {sorted(unknown)}")

    @classmethod
    def from_defaults(cls, **overrides) -> "SuiteConfig":
        return cls._from_mapping(_suite_defaults()).with_overrides(**overrides)

    @classmethod
    def from_file(cls, path, **overrides) -> "SuiteConfig":
        """
        Defaults updated with the JSON object in ``path`` (nested "trials", "tolerances" and
        "solver" maps are merged key by key), then with ``overrides``.
        """
        try:
            with open(path, "r", encoding="utf-8") as f:
                data = json.load(f)
        except FileNotFoundError:
            raise
        except OSError as exc:
            raise IoFailure(f"cannot read config '{path}': {exc}") from exc
        except json.JSONDecodeError as exc:
            raise ValidationError(f"config '{path}' is not valid JSON: {exc}") from exc
        if not isinstance(data, dict):
            raise ValidationError(f"config '{path}' must hold a JSON object")

        merged = _suite_defaults()
        for key, value in data.items():
            if key in ("trials", "tolerances", "solver") and isinstance(value, dict):
                merged[key] = dict(merged[key], **value)
            else:
                merged[key] = value
        return cls._from_mapping(merged).with_overrides(**overrides)

    @classmethod
    def _from_mapping(cls, data: dict) -> "SuiteConfig":
        known = {f for f in cls.__dataclass_fields__}
        extra = sorted(set(data) - known)
        if extra:
            raise ValidationError(f"unknown config keys: {extra}", details={"keys": extra})
        return cls(**data)

    def with_overrides(self, **overrides) -> "SuiteConfig":
        """
        None values are ignored. An integer ``trials`` sets every check's count.
        """
        overrides = {k: v for k, v in overrides.items() if v is not None}
        if isinstance(overrides.get("trials"), int):
            count = overrides.pop("trials")
            from .checks import check_names

            overrides["trials"] = {name: count for name in check_names()}
        return replace(self, **overrides) if overrides else self

    def trials_for(self, name: str) -> int:
        return int(self.trials.get(name, 0))

    def tolerance(self, name: str) -> float:
        return float(self.tolerances[name])

    def solver_options(self, **overrides) -> SolverOptions:
        return SolverOptions(**dict(self.solver, **overrides))

    def scheme(self) -> BallScheme:
        return BallScheme(weight_rule=self.weight_rule, ratio=self.weight_ratio)

    def to_dict(self) -> dict:
        """
        Reproducibility snapshot; output location and formats are left out.
        """
        data = asdict(self)
        data.pop("out_dir")
        data.pop("formats")
        data["exponents"] = [format_exponent(p) for p in self.exponents]
        data["solver_exponents"] = [format_exponent(p) for p in self.solver_exponents]
        for name in ("space_sizes", "grid_sizes", "grid2d_sizes"):
            data[name] = list(data[name])
        if self.checks is not None:
            data["checks"] = list(self.checks)
        return data

    @classmethod
    def from_snapshot(cls, data: dict) -> "SuiteConfig":
        merged = _suite_defaults()
        merged.update(data)
        return cls._from_mapping(merged)
