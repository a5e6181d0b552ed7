"""
Report files.

    emit_report() --> report.json (source of truth), report.csv (one flattened row per record),
                      ratios.svg (histograms of the weak, strong and WS ratios)
"""

from __future__ import annotations

import csv
import io
import json
import logging
from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402

from ..errors import IoFailure, UsageError
from ..tools.misc import dumps, jsonable
from .suite import RATIO_FIELDS, Report, ratio_values

logger = logging.getLogger(__name__)

FILENAMES = {"json": "report.json", "csv": "report.csv", "svg": "ratios.svg"}


def _flatten(prefix, value, out):
    if isinstance(value, dict):
        for k in sorted(value):
            _flatten(f"{prefix}.{k}" if prefix else str(k), value[k], out)
    elif isinstance(value, list):
        out[prefix] = json.dumps(value, sort_keys=True, separators=(",", ":"))
    else:
        out[prefix] = value


def csv_rows(report) -> tuple:
    """
    (columns, rows); reproducers are left to the JSON report.
    """
    rows = []
    for record in report.records:
        row = {}
        _flatten("", {k: v for k, v in jsonable(record).items() if k != "reproducer"}, row)
        row["has_reproducer"] = "reproducer" in record
        rows.append(row)
    columns = sorted({c for row in rows for c in row})
    lead = [c for c in ("id", "check", "trial", "passed") if c in columns]
    return lead + [c for c in columns if c not in lead], rows


def render_csv(report) -> str:
    columns, rows = csv_rows(report)
    buffer = io.StringIO()
    writer = csv.DictWriter(buffer, fieldnames=columns or ["id"], lineterminator="\n")
    writer.writeheader()
    for row in rows:
        writer.writerow(row)
    return buffer.getvalue()


def render_svg(report) -> str:
    plt.rcParams["svg.hashsalt"] = "ksmetric"
    fig, axes = plt.subplots(1, len(RATIO_FIELDS), figsize=(4 * len(RATIO_FIELDS), 3.2))
    for ax, (name, key) in zip(axes, sorted(RATIO_FIELDS.items())):
        values = ratio_values(report.records, name, key)
        if values:
            ax.hist(values, bins=20, color="#4c72b0")
        else:
            ax.text(0.5, 0.5, "no records", ha="center", va="center", transform=ax.transAxes)
        ax.set_title(f"{name}: {key} (n={len(values)})", fontsize=9)
        ax.set_xlabel(key)
    fig.tight_layout()

    buffer = io.StringIO()
    fig.savefig(buffer, format="svg", metadata={"Date": None})
    plt.close(fig)
    return buffer.getvalue()


_RENDERERS = {"json": lambda report: dumps(report.to_dict()), "csv": render_csv, "svg": render_svg}


def emit_report(report, out_dir, formats=("json", "csv", "svg")) -> dict:
    """
    Write the requested formats into ``out_dir`` and return {format: path}.
    """

    if not isinstance(report, Report):
        report = Report.from_dict(report)
    unknown = [f for f in formats if f not in _RENDERERS]
    if unknown:
        raise UsageError(f"unknown report formats: {unknown}")

    out_dir = Path(out_dir)
    written = {}
    try:
        out_dir.mkdir(parents=True, exist_ok=True)
        for fmt in formats:
            path = out_dir / FILENAMES[fmt]
            path.write_text(_RENDERERS[fmt](report), encoding="utf-8")
            written[fmt] = str(path)
            logger.debug("wrote %s", path)
    except OSError as exc:
        raise IoFailure(f"cannot write report to {out_dir}: {exc}", details={"out_dir": str(out_dir)}) from exc
    return written
