"""
Real-valued samples on the points of a space.
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import ValidationError


def _as_values(values) -> np.ndarray:
    arr = np.array(values, dtype=float).reshape(-1) if np.ndim(values) else np.array([values], dtype=float)
    if not np.all(np.isfinite(arr)):
        raise ValidationError("function values must be finite")
    arr.setflags(write=False)
    return arr


@dataclass(frozen=True, eq=False)
class SampledFunction:
    """
    Real values on the points of a space, aligned to ``space.point_ids``.

    :param values: one finite real per point.
    :type values: array-like of float
    """

    values: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "values", _as_values(self.values))

    def __len__(self):
        return len(self.values)

    def __add__(self, other):
        if isinstance(other, SampledFunction):
            return SampledFunction(self.values + other.values)
        return SampledFunction(self.values + float(other))

    __radd__ = __add__

    def __sub__(self, other):
        if isinstance(other, SampledFunction):
            return SampledFunction(self.values - other.values)
        return SampledFunction(self.values - float(other))

    def __mul__(self, other):
        if isinstance(other, SampledFunction):
            return SampledFunction(self.values * other.values)
        return SampledFunction(self.values * float(other))

    __rmul__ = __mul__

    def __neg__(self):
        return SampledFunction(-self.values)

    def __abs__(self):
        return SampledFunction(np.abs(self.values))

    @classmethod
    def constant(cls, n_points: int, c: float = 1.0) -> "SampledFunction":
        return cls(np.full(int(n_points), float(c)))

    def check_aligned(self, space):
        """
        Raise ValidationError unless there is exactly one value per point of ``space``.
        """
        if len(self.values) != space.n_points:
            raise ValidationError(
                f"function has {len(self.values)} values but the space has {space.n_points} points",
                details={"values": len(self.values), "points": space.n_points},
            )
        return self

    def to_dict(self) -> dict:
        from .tools.constants import FORMAT_VERSION

        return {"format_version": FORMAT_VERSION, "values": self.values.tolist()}


@dataclass(frozen=True, eq=False)
class GradientWitness:
    """
    Nonnegative values g with |f(x) - f(y)| <= d(x, y) (g(x) + g(y)) on positive-mass pairs.
    ``feasibility_residual`` is the largest remaining violation.
    """

    values: np.ndarray
    feasibility_residual: float = field(default=0.0)

    def __post_init__(self):
        values = _as_values(self.values)
        if np.any(values < 0):
            raise ValidationError("witness values must be nonnegative")
        object.__setattr__(self, "values", values)
        object.__setattr__(self, "feasibility_residual", float(self.feasibility_residual))

    def __len__(self):
        return len(self.values)

    def as_function(self) -> SampledFunction:
        return SampledFunction(self.values)

    def to_dict(self) -> dict:
        from .tools.constants import FORMAT_VERSION

        return {
            "format_version": FORMAT_VERSION,
            "values": self.values.tolist(),
            "feasibility_residual": self.feasibility_residual,
        }
