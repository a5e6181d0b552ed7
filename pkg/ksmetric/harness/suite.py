"""
Suite runner.

    run_suite() --> Report over every selected check and trial, ordered by (check, trial)
    replay_record() --> re-evaluate one record from its inlined inputs
"""

from __future__ import annotations

import json
import logging
import statistics
import time
from dataclasses import dataclass, field
from pathlib import Path

from ..errors import IoFailure, KSMetricError, ResolutionError, ValidationError
from ..tools.misc import check_rng, digest, jsonable
from .checks import check_names, get_check
from .config import SuiteConfig

logger = logging.getLogger(__name__)

REPORT_VERSION = 1

#values summarized as distributions in the report summary and the SVG histograms
RATIO_FIELDS = {
    "weak_type": "sup_ratio",
    "strong_type": "ks_ratio",
    "ws_maximal": "ws_ratio",
}


def _record_id(check: str, trial: int) -> str:
    return f"{check}/{trial:04d}"


def evaluate_inputs(name, inputs, config, trial=0) -> dict:
    """
    Evaluate one check on fixed inputs. Library errors become a failed record.
    """

    check = get_check(name)
    started = time.perf_counter()
    try:
        outcome = check.evaluate(inputs, config)
    except (KSMetricError, ValueError, ArithmeticError) as exc:
        logger.warning("%s raised %s: %s", _record_id(name, trial), type(exc).__name__, exc)
        outcome = {
            "values": {"error": str(exc), "error_type": type(exc).__name__},
            "flags": {"completed": False},
            "report_only": {},
        }
    elapsed = time.perf_counter() - started

    asserted = {k: bool(v) for k, v in outcome.get("flags", {}).items()}
    record = {
        "id": _record_id(name, trial),
        "check": name,
        "trial": int(trial),
        "inputs_digest": digest(inputs),
        "values": jsonable(outcome.get("values", {})),
        "asserted": asserted,
        "report_only": {k: bool(v) for k, v in outcome.get("report_only", {}).items()},
        "passed": all(asserted.values()),
    }
    if outcome.get("notes"):
        record["notes"] = list(outcome["notes"])
    if not record["passed"]:
        record["reproducer"] = {"check": name, "trial": int(trial), "inputs": jsonable(inputs)}
    if config.record_timings:
        record["elapsed_s"] = elapsed
    return record


def run_trial(name, trial, config) -> dict:
    inputs = get_check(name).generate(check_rng(config.seed, name, trial), config)
    return evaluate_inputs(name, inputs, config, trial)


@dataclass
class Report:
    """
    :param config: the configuration snapshot the records were produced under.
    :type config: dict

    :param records: one dict per (check, trial), ordered by check name then trial.
    :type records: list of dict
    """

    config: dict = field(default_factory=dict)
    records: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(r["passed"] for r in self.records)

    @property
    def failures(self) -> list:
        return [r for r in self.records if not r["passed"]]

    def record(self, record_id: str) -> dict:
        for r in self.records:
            if r["id"] == record_id:
                return r
        raise ResolutionError(f"no record '{record_id}' in report", details={"record": record_id})

    def summary(self) -> dict:
        checks = {}
        for r in self.records:
            entry = checks.setdefault(r["check"], {"trials": 0, "passed": 0, "failed": 0, "report_only": {}})
            entry["trials"] += 1
            entry["passed" if r["passed"] else "failed"] += 1
            for flag, ok in r["report_only"].items():
                counts = entry["report_only"].setdefault(flag, [0, 0])
                counts[0] += int(ok)
                counts[1] += 1

        for entry in checks.values():
            entry["report_only"] = {
                flag: {"satisfied": hit, "measured": total, "rate": hit / total}
                for flag, (hit, total) in sorted(entry["report_only"].items())
            }

        ratios = {}
        for name, key in sorted(RATIO_FIELDS.items()):
            values = ratio_values(self.records, name, key)
            if values:
                ratios[name] = {
                    "field": key,
                    "count": len(values),
                    "min": min(values),
                    "median": statistics.median(values),
                    "max": max(values),
                }

        return {
            "records": len(self.records),
            "passed": sum(r["passed"] for r in self.records),
            "failed": len(self.failures),
            "ok": self.passed,
            "checks": checks,
            "ratios": ratios,
            "counterexamples": [r["id"] for r in self.failures],
        }

    def to_dict(self) -> dict:
        return {
            "report_version": REPORT_VERSION,
            "config": self.config,
            "summary": self.summary(),
            "records": self.records,
        }

    @classmethod
    def from_dict(cls, data: dict) -> "Report":
        if not isinstance(data, dict) or "records" not in data:
            raise ValidationError("report is missing 'records'")
        return cls(config=dict(data.get("config") or {}), records=list(data["records"]))

    @classmethod
    def load(cls, path) -> "Report":
        path = Path(path)
        try:
            data = json.loads(path.read_text(encoding="utf-8"))
        except FileNotFoundError:
            raise
        except json.JSONDecodeError as exc:
            raise ValidationError(f"{path} is not valid JSON: {exc}") from exc
        except OSError as exc:
            raise IoFailure(f"cannot read {path}: {exc}") from exc
        return cls.from_dict(data)


def ratio_values(records, check, key) -> list:
    out = []
    for r in records:
        if r["check"] == check:
            value = r["values"].get(key)
            if isinstance(value, (int, float)) and not isinstance(value, bool):
                out.append(float(value))
    return out


def selected_checks(config) -> list:
    names = check_names()
    if config.checks is None:
        return names
    for name in config.checks:
        get_check(name)
    return [n for n in names if n in config.checks]


def run_suite(config=None) -> Report:
    """
    Failures are recorded, never raised; the caller decides the exit status from ``Report.passed``.
    """

    config = config or SuiteConfig.from_defaults()
    records = []
    for name in selected_checks(config):
        count = config.trials_for(name)
        logger.info("running %s (%d trials)", name, count)
        for trial in range(count):
            records.append(run_trial(name, trial, config))
    report = Report(config=config.to_dict(), records=records)
    logger.info("suite finished: %d records, %d failed", len(records), len(report.failures))
    return report


def replay_record(report, record_id, config=None) -> dict:
    """
    Re-evaluate ``record_id``. Failed records replay from their inlined reproducer; passing ones
    regenerate their inputs from the report's configuration snapshot.
    """

    if not isinstance(report, Report):
        report = Report.load(report)
    original = report.record(record_id)
    config = config or SuiteConfig.from_snapshot(report.config)

    if "reproducer" in original:
        inputs = original["reproducer"]["inputs"]
    else:
        inputs = get_check(original["check"]).generate(check_rng(config.seed, original["check"], original["trial"]), config)
    replayed = evaluate_inputs(original["check"], inputs, config, original["trial"])
    if replayed["inputs_digest"] != original["inputs_digest"]:
        logger.warning("replayed inputs of %s differ from the recorded digest", record_id)
    return replayed
