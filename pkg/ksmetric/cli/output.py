"""
Result envelopes for the ksmetric CLI.

Every command answers with one envelope: a JSON object under ``--json``, otherwise a message line,
an optional quantity table and warnings.

    emit_success() --> ok envelope from an action payload
    emit_error() --> failed envelope with one typed error entry
"""

from __future__ import annotations

from typing import Optional

from dataclasses import dataclass
from datetime import datetime, timezone
import json

import click
from tabulate import tabulate

from ksmetric.tools.misc import jsonable

SCHEMA_VERSION = "1.0.0"

#envelope fields in output order
ENVELOPE_FIELDS = (
    "ok",
    "command",
    "schema_version",
    "schema",
    "data_schema",
    "generated_at",
    "message",
    "input",
    "output",
    "changes",
    "warnings",
    "data",
    "diagnostics",
    "errors",
)


@dataclass
class CLIContext:
    """
    Global options shared by every command.

    :param json_output: print envelopes as JSON.
    :type json_output: bool

    :param seed: seed for generators, solver restarts and the suite.
    :type seed: int, optional

    :param probability: normalize total mass to 1; None means the default (True).
    :type probability: bool, optional
    """

    json_output: bool
    verbose: bool
    seed: Optional[int] = None
    probability: Optional[bool] = None


def schema_name(command: str, kind: str) -> str:
    """
    ``ksmetric.cli.<command>.<kind>.v1``; spaces and dashes in the command become underscores.
    """
    slug = command.strip().replace(" ", "_").replace("-", "_")
    return f"ksmetric.cli.{slug}.{kind}.v1"


def _utc_now() -> str:
    return datetime.now(timezone.utc).isoformat(timespec="seconds")


def _envelope(command: str, ok: bool, **fields) -> dict:
    envelope = {
        "ok": ok,
        "command": command,
        "schema_version": SCHEMA_VERSION,
        "generated_at": _utc_now(),
        "input": None,
        "output": None,
        "changes": {},
        "warnings": [],
        "data": None,
        "diagnostics": [],
        "errors": [],
    }
    envelope.update(fields)
    return {key: envelope.get(key) for key in ENVELOPE_FIELDS}


def _format_cell(value):
    if isinstance(value, float):
        return f"{value:.10g}"
    if isinstance(value, (list, dict)):
        text = json.dumps(jsonable(value))
        return text if len(text) <= 60 else text[:57] + "..."
    return value


def _print_human(envelope: dict, rows) -> None:
    click.echo(envelope["message"])
    for key in ("input", "output"):
        if envelope[key]:
            click.echo(f"{key}: {envelope[key]}")
    if rows:
        click.echo(tabulate([(name, _format_cell(v)) for name, v in rows], headers=["quantity", "value"], tablefmt="simple"))
    for warning in envelope["warnings"]:
        click.echo(f"warning: {warning}")


def emit_success(ctx: CLIContext, command: str, payload: Optional[dict] = None) -> None:
    """
    ``payload`` may set message, input, output, changes, warnings, data, diagnostics, the two
    schema names and ``table``, a list of (quantity, value) rows shown only in human mode.
    """

    payload = payload or {}
    envelope = _envelope(
        command,
        True,
        schema=payload.get("schema", schema_name(command, "success")),
        data_schema=payload.get("data_schema", schema_name(command, "data")),
        message=payload.get("message", f"{command} completed"),
        input=payload.get("input"),
        output=payload.get("output"),
        changes=payload.get("changes", {}),
        warnings=payload.get("warnings", []),
        data=payload.get("data"),
        diagnostics=payload.get("diagnostics", []),
    )
    if ctx.json_output:
        click.echo(json.dumps(jsonable(envelope), indent=2))
    else:
        _print_human(envelope, payload.get("table"))


def emit_error(ctx: CLIContext, command: str, error: Exception, exit_code: int) -> None:
    entry = {"type": type(error).__name__, "message": str(error), "exit_code": exit_code}
    details = getattr(error, "details", None)
    if details:
        entry["details"] = jsonable(details)

    envelope = _envelope(
        command,
        False,
        schema=schema_name(command, "error"),
        data_schema=None,
        message=str(error),
        diagnostics=getattr(error, "_cli_diagnostics", []),
        errors=[entry],
    )
    if ctx.json_output:
        click.echo(json.dumps(envelope, indent=2))
    else:
        click.echo(f"error: {error}", err=True)
