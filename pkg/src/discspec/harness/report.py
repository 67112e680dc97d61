"""Report rows and their CSV / JSON serialization."""

from __future__ import annotations

import csv
import io
import json
import math
from dataclasses import asdict, dataclass, field
from datetime import datetime, timezone
from pathlib import Path

EXPLICIT = "explicit-constant assertion"
EMPIRICAL = "empirical ratio"
CLOSED_FORM = "closed-form check"
PROVENANCES = (EXPLICIT, EMPIRICAL, CLOSED_FORM)

COLUMNS = ("name", "value", "bound_or_reference", "provenance", "pass")


@dataclass
class Row:
    name: str
    value: float
    reference: float | None
    provenance: str
    passed: bool
    error: str | None = None

    def __post_init__(self):
        if self.provenance not in PROVENANCES:
            raise ValueError(f"unknown provenance {self.provenance!r}")


@dataclass
class Report:
    rows: list = field(default_factory=list)
    metadata: dict = field(default_factory=dict)

    def add(self, name, value, reference=None, provenance=EXPLICIT, passed=True, error=None):
        self.rows.append(Row(name, _num(value), None if reference is None else _num(reference),
                             provenance, bool(passed), error))

    def extend(self, other: "Report") -> None:
        self.rows.extend(other.rows)

    @property
    def has_numerical_failure(self) -> bool:
        return any(r.error and r.error.startswith("numerical:") for r in self.rows)

    @property
    def has_assertion_failure(self) -> bool:
        return any(not r.passed for r in self.rows if r.provenance != EMPIRICAL or r.error)

    def exit_code(self) -> int:
        if self.has_numerical_failure:
            return 3
        if self.has_assertion_failure:
            return 1
        return 0

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\r\n")
        w.writerow(COLUMNS)
        for r in self.rows:
            w.writerow([r.name, fmt(r.value), "" if r.reference is None else fmt(r.reference),
                        r.provenance, "true" if r.passed else "false"])
        return buf.getvalue()

    def to_json(self) -> str:
        rows = []
        for r in self.rows:
            d = asdict(r)
            d["value"] = _json_num(r.value)
            d["reference"] = None if r.reference is None else _json_num(r.reference)
            rows.append(d)
        return json.dumps({"metadata": self.metadata, "rows": rows}, indent=2, sort_keys=True)

    def write(self, out_dir, fmt_: str = "both") -> list[Path]:
        out = Path(out_dir)
        out.mkdir(parents=True, exist_ok=True)
        written = []
        if fmt_ in ("csv", "both"):
            (out / "report.csv").write_text(self.to_csv(), newline="")
            written.append(out / "report.csv")
        if fmt_ in ("json", "both"):
            (out / "report.json").write_text(self.to_json() + "\n")
            written.append(out / "report.json")
        return written


def _num(x) -> float:
    return float(x)


def fmt(x: float) -> str:
    if math.isnan(x):
        return "nan"
    if math.isinf(x):
        return "inf" if x > 0 else "-inf"
    return "%.17g" % x


def _json_num(x: float):
    return x if math.isfinite(x) else fmt(x)


def timestamp() -> str:
    return datetime.now(timezone.utc).isoformat(timespec="seconds")


def parse_csv(text: str) -> list[dict]:
    return list(csv.DictReader(io.StringIO(text)))
