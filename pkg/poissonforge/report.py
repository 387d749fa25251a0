import json
from dataclasses import dataclass, field
from enum import Enum
from pathlib import Path
from typing import Any, Iterable, Literal, Optional

from inflection import camelize
from pydantic import BaseModel, ConfigDict
from rich.table import Table as RichTable

from poissonforge.output import print, styled_verdict

MAX_LISTED_DEFECTS = 10


@dataclass
class CheckResult:
    """Outcome of one mathematical check. Checks return these instead of raising."""

    name: str
    passed: bool
    defects: list[tuple[str, str]] = field(default_factory=list)
    details: dict[str, Any] = field(default_factory=dict)
    parts: list["CheckResult"] = field(default_factory=list)

    @classmethod
    def from_defects(
        cls, name: str, defects: Iterable[tuple[str, Any]], **details: Any
    ) -> "CheckResult":
        found = [(label, str(value)) for label, value in defects]
        return cls(name=name, passed=not found, defects=found, details=details)

    @classmethod
    def combine(cls, name: str, parts: Iterable["CheckResult"], **details: Any) -> "CheckResult":
        parts = list(parts)
        defects = [(f"{p.name}: {label}", value) for p in parts for label, value in p.defects]
        return cls(
            name=name,
            passed=all(p.passed for p in parts),
            defects=defects,
            details=details,
            parts=parts,
        )

    def __bool__(self) -> bool:
        return self.passed

    @property
    def first_defect(self) -> Optional[str]:
        if not self.defects:
            return None
        label, value = self.defects[0]
        return f"{label}: {value}"


class Verdict(str, Enum):
    PASS = "pass"
    FAIL = "fail"
    DISCREPANCY = "paper-discrepancy"


def _alias(name: str) -> str:
    return camelize(name, False)


class CheckRecord(BaseModel):
    model_config = ConfigDict(alias_generator=_alias, populate_by_name=True)

    check_id: str
    inputs: dict[str, Any] = {}
    verdict: Verdict
    expect: Literal["pass", "fail"] = "pass"
    defect: Optional[str] = None
    details: Optional[dict[str, Any]] = None
    runtime: Optional[float] = None

    @property
    def satisfied(self) -> bool:
        return self.verdict == Verdict.DISCREPANCY or self.verdict.value == self.expect

    @classmethod
    def from_result(
        cls,
        check_id: str,
        result: CheckResult,
        inputs: Optional[dict[str, Any]] = None,
        expect: Literal["pass", "fail"] = "pass",
        details: Optional[dict[str, Any]] = None,
    ) -> "CheckRecord":
        merged = {**result.details, **(details or {})}
        if len(result.defects) > 1:
            merged["defects"] = [f"{l}: {v}" for l, v in result.defects[:MAX_LISTED_DEFECTS]]
        return cls(
            check_id=check_id,
            inputs=inputs or {},
            verdict=Verdict.PASS if result.passed else Verdict.FAIL,
            expect=expect,
            defect=result.first_defect,
            details=_jsonable(merged) or None,
        )

    @classmethod
    def claim(
        cls,
        check_id: str,
        matches: bool,
        inputs: Optional[dict[str, Any]] = None,
        defect: Optional[str] = None,
        details: Optional[dict[str, Any]] = None,
    ) -> "CheckRecord":
        """A stated result compared with a derived one: a mismatch is a discrepancy, not a failure."""
        return cls(
            check_id=check_id,
            inputs=inputs or {},
            verdict=Verdict.PASS if matches else Verdict.DISCREPANCY,
            defect=None if matches else defect,
            details=_jsonable(details or {}) or None,
        )

    def to_json_line(self) -> str:
        return json.dumps(self.model_dump(mode="json", exclude_none=True), sort_keys=True)


def _jsonable(value: Any) -> Any:
    if isinstance(value, dict):
        return {str(k): _jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_jsonable(v) for v in value]
    if value is None or isinstance(value, (bool, int, float, str)):
        return value
    return str(value)


@dataclass
class Report:
    title: str
    records: list[CheckRecord] = field(default_factory=list)

    def add(self, record: CheckRecord):
        self.records.append(record)

    def extend(self, records: Iterable[CheckRecord]):
        self.records.extend(records)

    @property
    def sorted_records(self) -> list[CheckRecord]:
        return sorted(self.records, key=lambda r: r.check_id)

    @property
    def all_satisfied(self) -> bool:
        return all(r.satisfied for r in self.records)

    def write_jsonl(self, path: Path):
        with open(path, "w") as f:
            for record in self.sorted_records:
                f.write(record.to_json_line() + "\n")

    def render(self, show_timings: bool = False):
        table = RichTable(title=self.title)
        table.add_column("Check", style="cyan", justify="right")
        table.add_column("Verdict")
        table.add_column("Expect", style="magenta")
        table.add_column("Defect", style="magenta")
        if show_timings:
            table.add_column("Seconds", justify="right")
        for record in self.sorted_records:
            row = [
                record.check_id,
                styled_verdict(record.verdict.value),
                record.expect,
                record.defect or "",
            ]
            if show_timings:
                row.append(f"{record.runtime or 0:.3f}")
            table.add_row(*row)
        print(table)
        failing = [r for r in self.records if not r.satisfied]
        if failing:
            print(f"[red]{len(failing)} of {len(self.records)} checks not satisfied[/red]")
        else:
            print(f"[green]All {len(self.records)} checks satisfied[/green]")
