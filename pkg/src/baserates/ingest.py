"""Readers and writer for the canonical metadata (JSON lines) and facts (CSV) files.

Parsing is strict per record and lenient per file: a malformed record is
skipped and counted in the ingest report instead of aborting the run.
"""

from __future__ import annotations

import csv
import json
from dataclasses import dataclass, field
from pathlib import Path

from .facts import (
    MIN_YEAR,
    ActivityRecord,
    Enlistment,
    FactKey,
    ProjectMeta,
    SizeRecord,
)

FACTS_HEADER = [
    "project",
    "year",
    "month",
    "loc",
    "comments",
    "blanks",
    "loc_added",
    "loc_removed",
    "commits",
    "contributors",
]


class IngestError(Exception):
    """The file cannot be ingested at all (unreadable or wrong structure)."""


@dataclass(frozen=True)
class RecordDiagnostic:
    file: str
    line: int
    reason: str


@dataclass
class IngestReport:
    projects_read: int = 0
    records_read: int = 0
    malformed: list[RecordDiagnostic] = field(default_factory=list)

    @property
    def malformed_records(self) -> int:
        return len(self.malformed)


def read_metadata(path) -> tuple[list[ProjectMeta], IngestReport]:
    """Parse one JSON object per line into project metadata records.

    Malformed lines are skipped and counted; a duplicate project name
    keeps the first record and counts the later one as malformed.
    """
    report = IngestReport()
    metas: list[ProjectMeta] = []
    seen: set[str] = set()
    path = Path(path)
    with path.open(encoding="utf-8") as handle:
        for lineno, line in enumerate(handle, start=1):
            if not line.strip():
                continue
            report.records_read += 1
            try:
                doc = json.loads(line)
            except json.JSONDecodeError as exc:
                report.malformed.append(
                    RecordDiagnostic(str(path), lineno, f"invalid JSON: {exc.msg}")
                )
                continue
            meta, reason = _parse_meta(doc)
            if reason is None and meta.name in seen:
                reason = f"duplicate project name {meta.name!r}"
            if reason is not None:
                report.malformed.append(RecordDiagnostic(str(path), lineno, reason))
                continue
            seen.add(meta.name)
            metas.append(meta)
    report.projects_read = len(metas)
    return metas, report


def _parse_meta(doc) -> tuple[ProjectMeta | None, str | None]:
    if not isinstance(doc, dict):
        return None, "record is not a JSON object"
    name = doc.get("name")
    if not isinstance(name, str) or not name:
        return None, "missing or empty project name"
    enlistments = []
    for raw in doc.get("enlistments") or []:
        if (
            not isinstance(raw, dict)
            or not isinstance(raw.get("type"), str)
            or not isinstance(raw.get("url"), str)
        ):
            return None, "enlistment lacks a type or url string"
        enlistments.append(Enlistment(raw["type"], raw["url"]))
    tags = doc.get("tags") or []
    if not isinstance(tags, list) or not all(isinstance(t, str) for t in tags):
        return None, "tags must be a list of strings"
    return ProjectMeta(name, tuple(enlistments), tuple(tags)), None


def read_facts(path) -> tuple[list[SizeRecord], list[ActivityRecord], IngestReport]:
    """Read the canonical facts CSV into raw size and activity records.

    Only field syntax is checked here; negative code sizes pass through
    so the validator can reject and account for them.
    """
    size: list[SizeRecord] = []
    activity: list[ActivityRecord] = []
    report = IngestReport()
    projects: set[str] = set()
    path = Path(path)
    with path.open(encoding="utf-8", newline="") as handle:
        reader = csv.reader(handle)
        try:
            header = next(reader)
        except StopIteration:
            raise IngestError(f"{path}: empty facts file (missing header)") from None
        if header != FACTS_HEADER:
            raise IngestError(f"{path}: unexpected header {','.join(header)!r}")
        for row in reader:
            if not any(cell.strip() for cell in row):
                continue
            lineno = reader.line_num
            report.records_read += 1
            reason = _parse_facts_row(row, size, activity, projects)
            if reason is not None:
                report.malformed.append(RecordDiagnostic(str(path), lineno, reason))
    report.projects_read = len(projects)
    return size, activity, report


def _parse_facts_row(row, size, activity, projects) -> str | None:
    if len(row) != len(FACTS_HEADER):
        return f"expected {len(FACTS_HEADER)} fields, got {len(row)}"
    project = row[0]
    if not project:
        return "empty project name"
    try:
        year = int(row[1])
        month = int(row[2])
    except ValueError:
        return "year and month must be integers"
    if year < MIN_YEAR:
        return f"year {year} precedes {MIN_YEAR}"
    if not 1 <= month <= 12:
        return f"month {month} outside 1..12"

    size_cells = row[3:6]
    activity_cells = row[6:10]
    has_size = all(cell != "" for cell in size_cells)
    has_activity = all(cell != "" for cell in activity_cells)
    if not has_size and any(cell != "" for cell in size_cells):
        return "partial size fields (need all of loc, comments, blanks)"
    if not has_activity and any(cell != "" for cell in activity_cells):
        return "partial activity fields (need all of loc_added, loc_removed, commits, contributors)"
    if not has_size and not has_activity:
        return "neither size nor activity fields present"

    key = FactKey(project, year, month)
    size_record = activity_record = None
    if has_size:
        try:
            loc, comments, blanks = (int(cell) for cell in size_cells)
        except ValueError:
            return "size fields must be integers"
        size_record = SizeRecord(key, loc, comments, blanks)
    if has_activity:
        try:
            added, removed, commits, contributors = (int(cell) for cell in activity_cells)
        except ValueError:
            return "activity fields must be integers"
        try:
            activity_record = ActivityRecord(key, added, removed, commits, contributors)
        except ValueError as exc:
            return str(exc)

    if size_record is not None:
        size.append(size_record)
    if activity_record is not None:
        activity.append(activity_record)
    projects.add(project)
    return None


def write_facts(size, activity, path) -> None:
    """Write records in the canonical CSV format, one row per project-month.

    Months present in only one input get empty cells for the absent half,
    so a write/read round trip preserves the record sets exactly.
    """
    size_by_key = {record.key: record for record in size}
    activity_by_key = {record.key: record for record in activity}
    with Path(path).open("w", encoding="utf-8", newline="") as handle:
        writer = csv.writer(handle, lineterminator="\n")
        writer.writerow(FACTS_HEADER)
        for key in sorted(set(size_by_key) | set(activity_by_key)):
            s = size_by_key.get(key)
            a = activity_by_key.get(key)
            row: list = [key.project, key.year, key.month]
            row += [s.loc, s.comments, s.blanks] if s else ["", "", ""]
            row += (
                [a.loc_added, a.loc_removed, a.commits, a.contributors]
                if a
                else ["", "", "", ""]
            )
            writer.writerow(row)
