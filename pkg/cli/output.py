"""Deterministic rendering of command results as JSON lines or CSV."""

import csv
import json
import time
from dataclasses import asdict, dataclass, field, is_dataclass
from enum import Enum
from fractions import Fraction
from typing import Any, TextIO


def canonical(value: Any) -> Any:
    """JSON-safe form: integers and rationals become decimal strings."""
    if value is None or isinstance(value, bool):
        return value
    if isinstance(value, Enum):
        return canonical(value.value)
    if isinstance(value, int):
        return str(value)
    if isinstance(value, Fraction):
        return str(value.numerator) if value.denominator == 1 else f"{value.numerator}/{value.denominator}"
    if isinstance(value, float):
        return repr(value)
    if isinstance(value, str):
        return value
    if is_dataclass(value) and not isinstance(value, type):
        return canonical(asdict(value))
    if isinstance(value, dict):
        return {str(k): canonical(v) for k, v in value.items()}
    if isinstance(value, (set, frozenset)):
        return [canonical(v) for v in sorted(value)]
    if isinstance(value, (list, tuple)):
        return [canonical(v) for v in value]
    return str(value)


def csv_cell(value: Any) -> str:
    """Cell text for an already canonical scalar; non-strings keep their JSON spelling."""
    return value if isinstance(value, str) else json.dumps(value)


@dataclass
class OutputRecord:
    command: str
    inputs: dict
    payload: Any
    timing_ms: float = 0.0

    def to_dict(self) -> dict:
        return {
            "command": self.command,
            "inputs": canonical(self.inputs),
            "payload": canonical(self.payload),
            "timing_ms": round(self.timing_ms, 3),
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True, separators=(",", ":"))


@dataclass
class Reply:
    """Where a handler sends its results; stdout in normal use."""

    command: str
    stream: TextIO
    started: float = field(default_factory=time.perf_counter)
    records: list[OutputRecord] = field(default_factory=list)

    def _elapsed_ms(self) -> float:
        return (time.perf_counter() - self.started) * 1000.0

    def answer(self, inputs: dict, payload: Any) -> OutputRecord:
        record = OutputRecord(self.command, inputs, payload, self._elapsed_ms())
        self.records.append(record)
        self.stream.write(record.to_json() + "\n")
        return record

    def answer_csv(self, rows: list[dict]) -> None:
        flat = [canonical(row) for row in rows]
        if not flat:
            return
        writer = csv.DictWriter(self.stream, fieldnames=list(flat[0]), lineterminator="\n")
        writer.writeheader()
        for row in flat:
            writer.writerow({k: csv_cell(v) for k, v in row.items()})
