# app/cli/report.py
"""
Report documents.

Exact rationals are strings; the timing field is the only part of a report
that changes between runs on the same input.
"""
import csv
import io
import json
from enum import Enum
from typing import Any, Dict, List, Optional

from pydantic import BaseModel, Field

from app.config import Settings


class Verdict(str, Enum):
    PASS = "PASS"
    FAIL = "FAIL"
    SKIPPED = "SKIPPED"


class Check(BaseModel):
    name: str
    verdict: Verdict
    detail: str = ""


class Section(BaseModel):
    name: str
    data: Dict[str, Any] = Field(default_factory=dict)
    checks: List[Check] = Field(default_factory=list)

    def check(self, name: str, passed: bool, detail: str = "") -> Check:
        entry = Check(name=name, verdict=Verdict.PASS if passed else Verdict.FAIL, detail=detail)
        self.checks.append(entry)
        return entry

    def skip(self, name: str, reason: str) -> Check:
        entry = Check(name=name, verdict=Verdict.SKIPPED, detail=reason)
        self.checks.append(entry)
        return entry


class Report(BaseModel):
    tool: str
    version: str
    command: str
    input_sha256: Optional[str] = None
    options: Dict[str, str] = Field(default_factory=dict)
    sections: List[Section] = Field(default_factory=list)
    verdict: Verdict = Verdict.PASS
    reason: Optional[str] = None
    timing: Dict[str, float] = Field(default_factory=dict)

    def finalize(self) -> "Report":
        """Overall verdict: FAIL beats PASS beats SKIPPED"""
        verdicts = [c.verdict for s in self.sections for c in s.checks]
        if Verdict.FAIL in verdicts:
            self.verdict = Verdict.FAIL
            failed = [f"{s.name}.{c.name}" for s in self.sections for c in s.checks if c.verdict == Verdict.FAIL]
            self.reason = f"failed: {', '.join(failed)}"
        elif Verdict.PASS in verdicts:
            self.verdict = Verdict.PASS
        else:
            self.verdict = Verdict.SKIPPED
            skipped = [c.detail for s in self.sections for c in s.checks if c.detail]
            self.reason = skipped[0] if skipped else "nothing to check"
        return self

    @property
    def exit_code(self) -> int:
        return 2 if self.verdict == Verdict.FAIL else 0


def new_report(command: str, config: Settings, input_sha256: Optional[str] = None) -> Report:
    options = {
        "order": config.MONOMIAL_ORDER,
        "trace": config.TRACE_BACKEND,
        "backend": config.HOM_BACKEND,
        "scale": config.VOLUME_SCALE,
        "truncate": str(config.TRUNCATION) if config.TRUNCATION is not None else "auto",
        "window": config.SPECTRAL_WINDOW,
    }
    return Report(
        tool=config.APP_NAME,
        version=config.VERSION,
        command=command,
        input_sha256=input_sha256,
        options=options,
    )


def body(report: Report) -> str:
    """The deterministic part of a report"""
    return report.model_dump_json(indent=2, exclude={"timing"})


def _cell(value: Any) -> str:
    if isinstance(value, str):
        return value
    return json.dumps(value, ensure_ascii=False, separators=(",", ":"))


def render(report: Report, fmt: str = "json") -> str:
    if fmt == "json":
        return report.model_dump_json(indent=2) + "\n"
    if fmt != "csv":
        raise ValueError(f"unknown report format '{fmt}'")
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(["section", "key", "value"])
    for key in ("tool", "version", "command", "input_sha256", "verdict", "reason"):
        value = getattr(report, key)
        writer.writerow(["report", key, value.value if isinstance(value, Verdict) else (value or "")])
    for key, value in report.options.items():
        writer.writerow(["options", key, value])
    for section in report.sections:
        for key, value in section.data.items():
            writer.writerow([section.name, key, _cell(value)])
        for check in section.checks:
            writer.writerow([section.name, f"check:{check.name}", f"{check.verdict.value} {check.detail}".strip()])
    for key, value in report.timing.items():
        writer.writerow(["timing", key, f"{value:.3f}"])
    return buffer.getvalue()
