"""Verification reports and their deterministic serialisations."""

from __future__ import annotations

import csv
import enum
import io
import json
from dataclasses import dataclass, field
from fractions import Fraction


class Status(str, enum.Enum):
    PASS = "PASS"
    FAIL = "FAIL"
    REPORTED = "REPORTED"


class UnsupportedFormatError(ValueError):
    pass


def jsonable(obj):
    """Convert exact-arithmetic payloads into plain JSON values."""
    if obj is None or isinstance(obj, (bool, int, str)):
        return obj
    if isinstance(obj, float):
        return obj
    if isinstance(obj, Fraction):
        return str(obj) if obj.denominator != 1 else obj.numerator
    if isinstance(obj, enum.Enum):
        return obj.name
    if hasattr(obj, "to_json"):
        return jsonable(obj.to_json())
    if isinstance(obj, dict):
        return {str(jsonable(k)) if not isinstance(k, str) else k: jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (set, frozenset)):
        return sorted((jsonable(x) for x in obj), key=lambda x: json.dumps(x, sort_keys=True))
    if isinstance(obj, (list, tuple)):
        return [jsonable(x) for x in obj]
    return str(obj)


@dataclass(frozen=True)
class Claim:
    id: str
    anchor: str  # the statement being checked, in mathematical shorthand
    status: Status
    payload: object = None

    def to_json(self):
        return {"id": self.id, "anchor": self.anchor, "status": self.status.value, "payload": jsonable(self.payload)}


@dataclass
class VerificationReport:
    suite: str
    claims: list = field(default_factory=list)
    tables: dict = field(default_factory=dict)

    def add(self, claim_id: str, anchor: str, passed, payload=None) -> Claim:
        """passed: True/False for checkable claims, or a Status for REPORTED findings."""
        if any(c.id == claim_id for c in self.claims):
            raise ValueError(f"duplicate claim id {claim_id}")
        status = passed if isinstance(passed, Status) else (Status.PASS if passed else Status.FAIL)
        claim = Claim(claim_id, anchor, status, payload)
        self.claims.append(claim)
        return claim

    def report(self, claim_id: str, anchor: str, payload=None) -> Claim:
        return self.add(claim_id, anchor, Status.REPORTED, payload)

    def extend(self, other: VerificationReport):
        for c in other.claims:
            self.add(c.id, c.anchor, c.status, c.payload)
        for k, rows in other.tables.items():
            self.tables.setdefault(k, []).extend(rows)

    @property
    def failures(self) -> list[Claim]:
        return [c for c in self.claims if c.status is Status.FAIL]

    @property
    def ok(self) -> bool:
        return not self.failures

    def exit_code(self) -> int:
        return 0 if self.ok else 1

    def get(self, claim_id: str) -> Claim:
        for c in self.claims:
            if c.id == claim_id:
                return c
        raise KeyError(claim_id)

    def counts(self) -> dict:
        out = {s.value: 0 for s in Status}
        for c in self.claims:
            out[c.status.value] += 1
        return out

    def to_json(self):
        return {
            "suite": self.suite,
            "summary": self.counts(),
            "claims": [c.to_json() for c in sorted(self.claims, key=lambda c: c.id)],
            "tables": jsonable(self.tables),
        }


CSV_COLUMNS = ("curve", "p", "N_p", "a_p", "split", "pi", "b_p", "checks")


def _markdown(report: VerificationReport) -> str:
    counts = report.counts()
    lines = [
        f"# Verification report: {report.suite}",
        "",
        f"PASS {counts['PASS']}, FAIL {counts['FAIL']}, REPORTED {counts['REPORTED']}",
        "",
        "| claim | status | statement |",
        "|---|---|---|",
    ]
    for c in sorted(report.claims, key=lambda c: c.id):
        anchor = c.anchor.replace("|", "\\|")
        lines.append(f"| `{c.id}` | {c.status.value} | {anchor} |")
    reported = [c for c in sorted(report.claims, key=lambda c: c.id) if c.status is Status.REPORTED]
    if reported:
        lines += ["", "## Reported findings", ""]
        for c in reported:
            lines.append(f"- `{c.id}`: {json.dumps(jsonable(c.payload), sort_keys=True)}")
    return "\n".join(lines) + "\n"


def _csv(report: VerificationReport) -> str:
    rows = report.tables.get("primes")
    if rows is None:
        raise UnsupportedFormatError("csv is only available for reports with per-prime modularity tables")
    buf = io.StringIO()
    writer = csv.DictWriter(buf, fieldnames=CSV_COLUMNS, lineterminator="\n")
    writer.writeheader()
    for row in sorted(rows, key=lambda r: (r["curve"], r["p"])):
        writer.writerow({k: row.get(k, "") for k in CSV_COLUMNS})
    return buf.getvalue()


def emit_report(report: VerificationReport, fmt: str = "json") -> bytes:
    if fmt == "json":
        text = json.dumps(report.to_json(), sort_keys=True, indent=2) + "\n"
    elif fmt == "markdown":
        text = _markdown(report)
    elif fmt == "csv":
        text = _csv(report)
    else:
        raise UnsupportedFormatError(f"unsupported format {fmt!r}")
    return text.encode("utf-8")
