"""
Euclidean grid descriptors and multi-indices.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import cached_property
from typing import Optional

import numpy as np

from .errors import UsageError, ValidationError


@dataclass(frozen=True)
class MultiIndex:
    """
    :param alpha: nonnegative derivative counts, one per axis.
    :type alpha: tuple of int
    """

    alpha: tuple

    def __post_init__(self):
        alpha = tuple(int(a) for a in self.alpha)
        if any(a < 0 for a in alpha):
            raise UsageError(f"multi-index entries must be >= 0, got {alpha}")
        object.__setattr__(self, "alpha", alpha)

    @property
    def order(self) -> int:
        return sum(self.alpha)

    @property
    def dim(self) -> int:
        return len(self.alpha)

    @classmethod
    def coerce(cls, alpha, dim: int) -> "MultiIndex":
        if not isinstance(alpha, MultiIndex):
            alpha = cls(tuple(alpha) if np.ndim(alpha) else (alpha,))
        if alpha.dim != dim:
            raise UsageError(f"multi-index {alpha.alpha} does not match grid dimension {dim}")
        return alpha

    def __str__(self):
        return "(" + ",".join(str(a) for a in self.alpha) + ")"


def multi_indices(dim: int, k: int) -> list:
    """
    All multi-indices with |alpha| <= k, ordered by order then lexicographically.
    """
    out = [a for a in itertools.product(range(k + 1), repeat=dim) if sum(a) <= k]
    out.sort(key=lambda a: (sum(a), a))
    return [MultiIndex(a) for a in out]


@dataclass(frozen=True)
class GridSpec:
    """
    Uniform grid on the box origin + [0, spacing (n_per_axis - 1)]^dim, nodes in C order.

    :param dim: number of axes.
    :type dim: int

    :param n_per_axis: nodes per axis.
    :type n_per_axis: int

    :param spacing: node spacing h.
    :type spacing: float

    :param origin: lower corner of the box; zeros by default.
    :type origin: tuple of float, optional

    :param probability: uniform node masses 1/N when True, h**dim when False.
    :type probability: bool, optional; default: True

    :param cell_mass: explicit per-node masses, overriding ``probability``.
    :type cell_mass: tuple of float, optional
    """

    dim: int
    n_per_axis: int
    spacing: float
    origin: Optional[tuple] = None
    probability: bool = True
    cell_mass: Optional[tuple] = field(default=None, compare=False)

    def __post_init__(self):
        if self.dim < 1 or self.n_per_axis < 1:
            raise ValidationError("grid needs dim >= 1 and n_per_axis >= 1")
        if not self.spacing > 0:
            raise ValidationError(f"grid spacing must be positive, got {self.spacing}")
        origin = tuple(float(v) for v in (self.origin or (0.0,) * self.dim))
        if len(origin) != self.dim:
            raise ValidationError("grid origin must have one entry per axis")
        object.__setattr__(self, "origin", origin)
        if self.cell_mass is not None:
            masses = tuple(float(v) for v in self.cell_mass)
            if len(masses) != self.n_nodes or any(v < 0 for v in masses):
                raise ValidationError("cell masses must be nonnegative, one per node")
            object.__setattr__(self, "cell_mass", masses)

    @classmethod
    def unit_cube(cls, dim: int, n: int, probability: bool = True) -> "GridSpec":
        spacing = 1.0 / (n - 1) if n > 1 else 1.0
        return cls(dim=dim, n_per_axis=n, spacing=spacing, probability=probability)

    @property
    def n_nodes(self) -> int:
        return self.n_per_axis**self.dim

    @property
    def shape(self) -> tuple:
        return (self.n_per_axis,) * self.dim

    @property
    def upper(self) -> tuple:
        return tuple(o + self.spacing * (self.n_per_axis - 1) for o in self.origin)

    @cached_property
    def coords(self) -> np.ndarray:
        idx = np.indices(self.shape).reshape(self.dim, -1).T
        return np.asarray(self.origin) + self.spacing * idx

    @cached_property
    def masses(self) -> np.ndarray:
        if self.cell_mass is not None:
            return np.asarray(self.cell_mass)
        if self.probability:
            return np.full(self.n_nodes, 1.0 / self.n_nodes)
        return np.full(self.n_nodes, self.spacing**self.dim)

    def node_ids(self) -> list:
        width = len(str(self.n_per_axis - 1))
        return ["n" + "_".join(str(i).zfill(width) for i in idx) for idx in itertools.product(range(self.n_per_axis), repeat=self.dim)]

    @cached_property
    def space(self):
        from .tools.spacefuncs.instantiation import build_space

        return build_space(self.node_ids(), {"type": "euclidean", "coords": self.coords}, self.masses)

    def to_space(self):
        return self.space

    def to_dict(self) -> dict:
        from .tools.constants import FORMAT_VERSION

        data = {
            "format_version": FORMAT_VERSION,
            "dim": self.dim,
            "n_per_axis": self.n_per_axis,
            "spacing": self.spacing,
            "origin": list(self.origin),
            "probability": self.probability,
        }
        if self.cell_mass is not None:
            data["cell_mass"] = list(self.cell_mass)
        return data

    @classmethod
    def from_dict(cls, data: dict) -> "GridSpec":
        try:
            return cls(
                dim=int(data["dim"]),
                n_per_axis=int(data["n_per_axis"]),
                spacing=float(data["spacing"]),
                origin=tuple(data.get("origin") or ()) or None,
                probability=bool(data.get("probability", True)),
                cell_mass=tuple(data["cell_mass"]) if data.get("cell_mass") is not None else None,
            )
        except (KeyError, TypeError) as exc:
            raise ValidationError(f"grid descriptor is missing field {exc}") from exc
