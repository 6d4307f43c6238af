"""Versioned JSON run artifacts with a byte-stable canonical writer.

Rerunning an experiment with the same configuration must produce an
identical file, so floats are always rendered with 17 significant digits
(enough to round-trip float64 exactly) and key order is fixed by the
record builders, never by the serializer.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .errors import RecordError

FORMAT_VERSION = 1


@dataclass(frozen=True)
class GenerationEntry:
    """One row of the per-generation log."""

    generation: int
    best_fitness: float
    parent_fitness: list[float]
    support: int
    new_evaluations: int
    best_mask: str
    best_accuracy: float
    parent_depth: int

    def to_dict(self) -> dict:
        return {
            "generation": self.generation,
            "best_fitness": self.best_fitness,
            "parent_fitness": list(self.parent_fitness),
            "support": self.support,
            "new_evaluations": self.new_evaluations,
            "best_mask": self.best_mask,
            "best_accuracy": self.best_accuracy,
            "parent_depth": self.parent_depth,
        }

    @classmethod
    def from_dict(cls, raw: dict) -> "GenerationEntry":
        try:
            return cls(
                generation=raw["generation"],
                best_fitness=raw["best_fitness"],
                parent_fitness=list(raw["parent_fitness"]),
                support=raw["support"],
                new_evaluations=raw["new_evaluations"],
                best_mask=raw["best_mask"],
                best_accuracy=raw["best_accuracy"],
                parent_depth=raw["parent_depth"],
            )
        except KeyError as err:
            raise RecordError(f"generation entry missing field {err}") from None


@dataclass(frozen=True)
class RunRecord:
    """Everything one evolutionary run produced, ready to serialize."""

    config: dict
    generations: list[GenerationEntry]
    final_distribution: list[dict]  # {"mask", "probability", "accuracy"}
    totals: dict
    format_version: int = FORMAT_VERSION

    def to_dict(self) -> dict:
        return {
            "format_version": self.format_version,
            "config": self.config,
            "generations": [entry.to_dict() for entry in self.generations],
            "final_distribution": [dict(row) for row in self.final_distribution],
            "totals": dict(self.totals),
        }

    @classmethod
    def from_dict(cls, raw: dict) -> "RunRecord":
        version = raw.get("format_version")
        if version != FORMAT_VERSION:
            raise RecordError(
                f"unsupported record format version {version!r}, expected {FORMAT_VERSION}"
            )
        try:
            return cls(
                format_version=version,
                config=raw["config"],
                generations=[GenerationEntry.from_dict(e) for e in raw["generations"]],
                final_distribution=list(raw["final_distribution"]),
                totals=raw["totals"],
            )
        except KeyError as err:
            raise RecordError(f"run record missing field {err}") from None


@dataclass(frozen=True)
class OracleRecord:
    """Exhaustive mask sweep: every accuracy plus the argmax."""

    config: dict
    entries: list[dict]  # {"mask", "accuracy"}, all 2^n in index order
    best_mask: str
    best_accuracy: float
    format_version: int = FORMAT_VERSION

    def to_dict(self) -> dict:
        return {
            "format_version": self.format_version,
            "config": self.config,
            "entries": [dict(row) for row in self.entries],
            "best_mask": self.best_mask,
            "best_accuracy": self.best_accuracy,
        }

    @classmethod
    def from_dict(cls, raw: dict) -> "OracleRecord":
        version = raw.get("format_version")
        if version != FORMAT_VERSION:
            raise RecordError(
                f"unsupported record format version {version!r}, expected {FORMAT_VERSION}"
            )
        try:
            return cls(
                format_version=version,
                config=raw["config"],
                entries=list(raw["entries"]),
                best_mask=raw["best_mask"],
                best_accuracy=raw["best_accuracy"],
            )
        except KeyError as err:
            raise RecordError(f"oracle record missing field {err}") from None


def _format_float(value: float) -> str:
    if math.isnan(value) or math.isinf(value):
        raise RecordError(f"cannot serialize non-finite float {value!r}")
    text = "%.17g" % value
    if not any(c in text for c in ".eE"):
        text += ".0"
    return text


def _emit(value, out: list[str], indent: int) -> None:
    pad = "  " * indent
    inner = "  " * (indent + 1)
    if isinstance(value, dict):
        if not value:
            out.append("{}")
            return
        out.append("{\n")
        items = list(value.items())
        for i, (key, val) in enumerate(items):
            out.append(inner + json.dumps(str(key), ensure_ascii=False) + ": ")
            _emit(val, out, indent + 1)
            out.append(",\n" if i + 1 < len(items) else "\n")
        out.append(pad + "}")
    elif isinstance(value, (list, tuple)):
        if not value:
            out.append("[]")
            return
        out.append("[\n")
        for i, val in enumerate(value):
            out.append(inner)
            _emit(val, out, indent + 1)
            out.append(",\n" if i + 1 < len(value) else "\n")
        out.append(pad + "]")
    elif isinstance(value, bool):
        out.append("true" if value else "false")
    elif isinstance(value, (int, np.integer)):
        out.append(str(int(value)))
    elif isinstance(value, (float, np.floating)):
        out.append(_format_float(float(value)))
    elif isinstance(value, str):
        out.append(json.dumps(value, ensure_ascii=False))
    elif value is None:
        out.append("null")
    else:
        raise RecordError(f"cannot serialize value of type {type(value).__name__}")


def dumps_canonical(value) -> str:
    """Deterministic pretty JSON: fixed order, 17-digit floats, final newline."""
    out: list[str] = []
    _emit(value, out, 0)
    return "".join(out) + "\n"


def write_json(value, path: str | Path) -> None:
    Path(path).write_text(dumps_canonical(value), encoding="utf-8")


def _load_json(path: str | Path) -> dict:
    path = Path(path)
    if not path.exists():
        raise RecordError(f"no such record file: {path}")
    try:
        return json.loads(path.read_text(encoding="utf-8"))
    except json.JSONDecodeError as err:
        raise RecordError(f"corrupt record {path}: {err}") from None


def write_run_record(record: RunRecord, path: str | Path) -> None:
    write_json(record.to_dict(), path)


def read_run_record(path: str | Path) -> RunRecord:
    return RunRecord.from_dict(_load_json(path))


def write_oracle_record(record: OracleRecord, path: str | Path) -> None:
    write_json(record.to_dict(), path)


def read_oracle_record(path: str | Path) -> OracleRecord:
    return OracleRecord.from_dict(_load_json(path))
