"""Canonical JSON and CSV emission for run records.

Infinite values serialize as the string "inf" so the JSON stays strictly
valid; parse_record restores them.  JSON output sorts keys, giving
byte-identical text for equal payloads.
"""

from __future__ import annotations

import csv
import dataclasses
import io
import json
import math
from enum import Enum
from typing import Any

from .errors import FormatError


def to_jsonable(obj: Any) -> Any:
    """Recursively convert package objects to JSON-ready structures."""
    if obj is None or isinstance(obj, (bool, int, str)):
        return obj
    if isinstance(obj, float):
        if math.isinf(obj):
            return "inf" if obj > 0 else "-inf"
        return obj
    if isinstance(obj, Enum):
        return obj.value
    if isinstance(obj, (frozenset, set)):
        return sorted(to_jsonable(x) for x in obj)
    if isinstance(obj, (list, tuple)):
        return [to_jsonable(x) for x in obj]
    if isinstance(obj, dict):
        return {str(k): to_jsonable(v) for k, v in obj.items()}
    if dataclasses.is_dataclass(obj):
        return {f.name: to_jsonable(getattr(obj, f.name)) for f in dataclasses.fields(obj)}
    raise FormatError(f"cannot serialize value of type {type(obj).__name__}")


def revive_infinities(obj: Any) -> Any:
    """Inverse of the "inf" encoding applied by to_jsonable."""
    if obj == "inf":
        return math.inf
    if obj == "-inf":
        return -math.inf
    if isinstance(obj, list):
        return [revive_infinities(x) for x in obj]
    if isinstance(obj, dict):
        return {k: revive_infinities(v) for k, v in obj.items()}
    return obj


def emit_json(record: Any) -> str:
    """Canonical JSON text: sorted keys, two-space indent, trailing newline."""
    return json.dumps(to_jsonable(record), sort_keys=True, indent=2) + "\n"


def parse_record(text: str) -> Any:
    """Parse emitted JSON, restoring infinite values."""
    return revive_infinities(json.loads(text))


def _csv_text(header: list[str], rows: list[list[Any]]) -> str:
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(header)
    for row in rows:
        writer.writerow(row)
    return buffer.getvalue()


def _cell(value: Any) -> Any:
    if isinstance(value, float) and math.isinf(value):
        return "inf" if value > 0 else "-inf"
    return value


def cost_report_csv(payload: dict) -> str:
    rows: list[list[Any]] = []
    for i, cost in enumerate(payload["level1_costs"]):
        rows.append([i, 1, _cell(cost)])
    for j, cost in enumerate(payload["level2_costs"]):
        rows.append([j, 2, _cell(cost)])
    return _csv_text(["player", "level", "cost"], rows)


def bound_checks_csv(payload: dict) -> str:
    rows = [
        [c["name"], _cell(c["lhs"]), _cell(c["rhs"]), c["relation"], c["holds"], c["context"]]
        for c in payload["checks"]
    ]
    return _csv_text(["name", "lhs", "rhs", "relation", "holds", "context"], rows)


def poa_sweep_csv(payload: dict) -> str:
    rows = []
    for value, record in zip(payload["values"], payload["records"]):
        inner = record["payload"]
        rows.append(
            [
                payload["parameter"],
                value,
                _cell(inner["poa"]),
                _cell(inner["optimum_cost"]),
                _cell(inner["worst_ne_cost"]),
                inner["ne_count"],
            ]
        )
    return _csv_text(
        ["parameter", "value", "poa", "optimum_cost", "worst_ne_cost", "ne_count"], rows
    )


def emit_csv(mode: str, payload: dict) -> str:
    """CSV for tabular payloads only; other modes raise FormatError."""
    if mode == "cost":
        return cost_report_csv(payload)
    if mode == "bounds":
        return bound_checks_csv(payload)
    if mode == "sweep":
        records = payload.get("records", [])
        if records and "poa" in records[0].get("payload", {}):
            return poa_sweep_csv(payload)
        raise FormatError("csv sweeps are only defined over price-of-anarchy runs")
    raise FormatError(f"mode {mode!r} has no tabular csv form; use json")
