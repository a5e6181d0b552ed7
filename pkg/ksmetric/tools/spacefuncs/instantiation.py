"""
tools.spacefuncs.instantiation

Building, validating and (de)serializing spaces and sampled functions.

    build_space() --> validated MetricMeasureSpace from ids, a metric spec and masses
    validate_metric() --> exposed; exhaustive metric-axiom check
    to_dict() --> exposed; JSON-ready space description
    space_from_dict() / function_from_dict() --> inverse of to_dict
    load_space() / save_space() / load_function() / save_function() --> file round-trip
"""

from __future__ import annotations

import json
import logging
from pathlib import Path

import numpy as np
from scipy.spatial.distance import cdist

from ...errors import IoFailure, NonMetric, ValidationError
from ..constants import FORMAT_VERSION, SIZE_CAP

logger = logging.getLogger(__name__)

_METRIC_TYPES = ("euclidean", "matrix")


def build_space(point_ids, metric_spec, mass, *, validate=True):
    """
    Build a validated space.

    metric_spec is {"type": "matrix", "matrix": [[...]]} or {"type": "euclidean", "coords": [[...]]}.
    """

    from ...metricspace import MetricMeasureSpace

    point_ids = list(point_ids)
    kind = str(metric_spec.get("type", "")).lower()
    if kind not in _METRIC_TYPES:
        raise ValidationError(f"metric type must be one of {_METRIC_TYPES}, got '{kind}'")

    if kind == "euclidean":
        if metric_spec.get("coords") is None:
            raise ValidationError("euclidean metric needs coordinates")
        coords = np.array(metric_spec["coords"], dtype=float)
        if coords.ndim == 1:
            coords = coords[:, None]
        if coords.shape[0] != len(point_ids):
            raise ValidationError(f"{coords.shape[0]} coordinates for {len(point_ids)} points")
        if not np.all(np.isfinite(coords)):
            raise ValidationError("coordinates must be finite")
        dist = cdist(coords, coords) if len(point_ids) else np.zeros((0, 0))
        return MetricMeasureSpace(point_ids, dist, mass, coords=coords, metric_type="euclidean", validate=validate)

    if metric_spec.get("matrix") is None:
        raise ValidationError("matrix metric needs a distance table")
    coords = metric_spec.get("coords")
    return MetricMeasureSpace(point_ids, metric_spec["matrix"], mass, coords=coords, metric_type="matrix", validate=validate)


def validate_metric(self):
    """
    Check zero diagonal, symmetry, positivity and (for explicit tables) the triangle inequality
    over every triple. Raises NonMetric naming the offending points.
    """

    dist = self.dist
    ids = self.point_ids
    n = self.n_points

    if n > SIZE_CAP:
        logger.warning("validating %d points (above the %d-point cap)", n, SIZE_CAP)

    diag = np.flatnonzero(np.diag(dist) != 0)
    if diag.size:
        x = ids[diag[0]]
        raise NonMetric(f"d({x},{x}) must be 0", details={"pair": [x, x]})

    asym = np.argwhere(dist != dist.T)
    if asym.size:
        i, j = (int(v) for v in asym[0])
        raise NonMetric(f"d({ids[i]},{ids[j]}) != d({ids[j]},{ids[i]})", details={"pair": [ids[i], ids[j]]})

    off = ~np.eye(n, dtype=bool)
    bad = np.argwhere(off & (dist <= 0))
    if bad.size:
        i, j = (int(v) for v in bad[0])
        raise NonMetric(
            f"distinct points {ids[i]} and {ids[j]} are at distance {dist[i, j]}",
            details={"pair": [ids[i], ids[j]]},
        )

    #euclidean tables are metrics by construction
    if self.metric_type == "euclidean" or n < 3:
        return

    tol = 1e-12 * float(dist.max())
    found = None
    for y in range(n):
        #violation of d(x,z) <= d(x,y) + d(y,z) with y as the middle point
        viol = np.argwhere(dist > dist[:, y : y + 1] + dist[y : y + 1, :] + tol)
        if viol.size:
            x, z = (int(v) for v in viol[0])
            triple = (x, y, z)
            if found is None or triple < found:
                found = triple
    if found is not None:
        x, y, z = found
        raise NonMetric(
            f"triangle inequality fails: d({ids[x]},{ids[z]}) = {dist[x, z]} > "
            f"d({ids[x]},{ids[y]}) + d({ids[y]},{ids[z]}) = {dist[x, y] + dist[y, z]}",
            details={"triple": [ids[x], ids[y], ids[z]]},
        )


def to_dict(self) -> dict:
    """
    JSON-ready description in the versioned space-file format.
    """

    points = []
    for i, pid in enumerate(self.point_ids):
        entry = {"id": pid}
        if self.coords is not None:
            entry["coords"] = self.coords[i].tolist()
        points.append(entry)

    metric = {"type": self.metric_type}
    if self.metric_type == "matrix":
        metric["matrix"] = self.dist.tolist()

    return {
        "format_version": FORMAT_VERSION,
        "points": points,
        "metric": metric,
        "measure": self.mass.tolist(),
    }


def _check_version(data: dict, what: str):
    version = data.get("format_version", FORMAT_VERSION)
    if version != FORMAT_VERSION:
        raise ValidationError(f"unsupported {what} format_version {version}", details={"format_version": version})


def space_from_dict(data: dict, *, validate=True):
    _check_version(data, "space")
    try:
        points = data["points"]
        metric = dict(data["metric"])
        mass = data["measure"]
    except (KeyError, TypeError) as exc:
        raise ValidationError(f"space file is missing field {exc}") from exc

    ids = [p["id"] for p in points]
    if metric.get("type") == "euclidean" and "coords" not in metric:
        metric["coords"] = [p.get("coords") for p in points]
        if any(c is None for c in metric["coords"]):
            raise ValidationError("euclidean space file needs coords on every point")
    elif all("coords" in p for p in points) and points:
        metric.setdefault("coords", [p["coords"] for p in points])
    return build_space(ids, metric, mass, validate=validate)


def function_from_dict(data: dict, space=None):
    from ...functions import SampledFunction

    _check_version(data, "function")
    if "values" not in data:
        raise ValidationError("function file is missing field 'values'")
    f = SampledFunction(data["values"])
    if space is not None:
        f.check_aligned(space)
    return f


def _read_json(path) -> dict:
    path = Path(path)
    try:
        with open(path, "r") as fh:
            return json.load(fh)
    except FileNotFoundError as exc:
        raise IoFailure(f"file not found: {path}") from exc
    except json.JSONDecodeError as exc:
        raise ValidationError(f"{path} is not valid JSON: {exc}") from exc
    except OSError as exc:
        raise IoFailure(f"cannot read {path}: {exc}") from exc


def _write_json(path, data: dict):
    from ..misc import dumps

    path = Path(path)
    try:
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(dumps(data))
    except OSError as exc:
        raise IoFailure(f"cannot write {path}: {exc}") from exc
    return path


def load_space(path, *, validate=True):
    return space_from_dict(_read_json(path), validate=validate)


def save_space(space, path):
    return _write_json(path, space.to_dict())


def load_function(path, space=None):
    return function_from_dict(_read_json(path), space=space)


def save_function(f, path):
    return _write_json(path, f.to_dict())
