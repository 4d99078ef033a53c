"""
Suite reports and their JSON, CSV and Markdown renderings.
"""

import csv
import io
import json
import logging
from dataclasses import dataclass, field
from pathlib import Path
from typing import TYPE_CHECKING, Any, Dict, List, Union

if TYPE_CHECKING:
    from .congruences import CheckResult

logger = logging.getLogger(__name__)

PASS = "PASS"
FAIL = "FAIL"
SKIP = "SKIP"
DISCREPANCY = "DISCREPANCY"
STATUSES = (PASS, FAIL, SKIP, DISCREPANCY)

RECORD_FIELDS = ("check", "p", "params", "modulus", "lhs", "rhs", "status", "note")


def status_counts(results: List["CheckResult"]) -> Dict[str, int]:
    """Counts per status; every status is present, zero or not."""
    counts = {status: 0 for status in STATUSES}
    for result in results:
        counts[result.status] += 1
    return counts


@dataclass
class Report:
    """
    Outcome of one ``verify`` run. ``results`` are kept sorted by check id,
    then prime, then parameters.
    """

    version: str
    config: Dict[str, Any]
    results: List["CheckResult"] = field(default_factory=list)
    duration: float = 0.0

    def __post_init__(self):
        self.results = sorted(self.results, key=lambda r: r.sort_key())

    @property
    def summary(self) -> Dict[str, int]:
        return status_counts(self.results)

    @property
    def has_failures(self) -> bool:
        return self.summary[FAIL] > 0

    def find(self, check: str) -> List["CheckResult"]:
        """All rows of one check, in report order."""
        return [r for r in self.results if r.check == check]

    def to_dict(self, include_duration: bool = True) -> Dict[str, Any]:
        payload: Dict[str, Any] = {
            "version": self.version,
            "config": self.config,
            "results": [r.as_record() for r in self.results],
            "summary": self.summary,
        }
        if include_duration:
            payload["duration"] = round(self.duration, 3)
        return payload

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=True)

    def to_csv(self) -> str:
        buffer = io.StringIO()
        writer = csv.DictWriter(buffer, fieldnames=RECORD_FIELDS, lineterminator="\n")
        writer.writeheader()
        for result in self.results:
            record = result.as_record()
            record["params"] = json.dumps(record["params"], sort_keys=True)
            writer.writerow(record)
        return buffer.getvalue()

    def to_markdown(self) -> str:
        lines = [
            f"# congruence-lab {self.version}",
            "",
            " ".join(f"{status}: {count}" for status, count in self.summary.items()),
            "",
            "| check | rows | PASS | FAIL | SKIP | DISCREPANCY |",
            "|---|---|---|---|---|---|",
        ]
        checks: Dict[str, List["CheckResult"]] = {}
        for result in self.results:
            checks.setdefault(result.check, []).append(result)
        for check, rows in checks.items():
            counts = status_counts(rows)
            cells = " | ".join(str(counts[s]) for s in STATUSES)
            lines.append(f"| {check} | {len(rows)} | {cells} |")

        flagged = [r for r in self.results if r.status in (FAIL, DISCREPANCY)]
        if flagged:
            lines += ["", "## Failures and discrepancies", ""]
            for r in flagged:
                where = f" p={r.p}" if r.p is not None else ""
                params = f" {json.dumps(r.params, sort_keys=True)}" if r.params else ""
                lines.append(
                    f"- {r.status} {r.check}{where}{params}: lhs {r.lhs}, rhs {r.rhs}"
                    + (f" ({r.note})" if r.note else "")
                )
        return "\n".join(lines) + "\n"

    def render(self, fmt: str = "json") -> str:
        renderers = {"json": self.to_json, "csv": self.to_csv, "md": self.to_markdown}
        try:
            return renderers[fmt]()
        except KeyError:
            raise ValueError(f"unknown report format {fmt!r}") from None

    def write(self, path: Union[str, Path], fmt: str = "json") -> None:
        Path(path).write_text(self.render(fmt), encoding="utf-8")
        logger.info(f"wrote {fmt} report with {len(self.results)} rows to {path}")
