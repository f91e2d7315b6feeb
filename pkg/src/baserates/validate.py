"""Exclusion rules for the joined data set, with full accounting of what was dropped.

Rules apply in a fixed order: projects with missing data, projects with
an unscoped SVN configuration, then individual months with negative code
size, and finally the cut-off year. Rules one and two are independent
project-level predicates, so swapping them never changes the survivors.
"""

from __future__ import annotations

import logging
import re
from dataclasses import dataclass
from typing import Iterable

from .facts import MonthlyFacts, ProjectMeta

logger = logging.getLogger(__name__)

# A scoped SVN checkout points at one code directory. URLs matching none
# of these (case-insensitive, matched against the whole URL) pull in all
# branches and tags, inflating every size metric for the project.
SVN_URL_PATTERNS = (
    r".*/trunk/?",
    r".*/head/?",
    r".*/sandbox/?",
    r".*/site/?",
    r".*/branches/\w+",
    r".*/tags/\w+",
)

_SVN_URL_REGEXES = tuple(re.compile(p, re.IGNORECASE) for p in SVN_URL_PATTERNS)


def check_svn_enlistments(meta: ProjectMeta) -> tuple[bool, list[str]]:
    """Screen a project's SVN enlistment URLs for properly scoped directories.

    Returns (passed, offending_urls). Projects without SVN enlistments
    pass vacuously; one offending URL fails the whole project.
    """
    offending = [
        e.url
        for e in meta.enlistments
        if e.is_svn and not any(rx.fullmatch(e.url) for rx in _SVN_URL_REGEXES)
    ]
    return not offending, offending


@dataclass(frozen=True)
class AfterCutoff:
    projects: int
    months: int
    years: int


@dataclass(frozen=True)
class ValidationReport:
    """Counts of what each validation step removed and what remains."""

    projects_collected: int
    excluded_missing_data: int
    excluded_svn_config: int
    projects_remaining: int
    months_before_rule3: int
    excluded_negative_size: int
    months_remaining: int
    years_remaining: int
    after_cutoff: AfterCutoff

    def to_dict(self) -> dict:
        return {
            "projects_collected": self.projects_collected,
            "excluded_missing_data": self.excluded_missing_data,
            "excluded_svn_config": self.excluded_svn_config,
            "projects_remaining": self.projects_remaining,
            "months_before_rule3": self.months_before_rule3,
            "excluded_negative_size": self.excluded_negative_size,
            "months_remaining": self.months_remaining,
            "years_remaining": self.years_remaining,
            "after_cutoff": {
                "projects": self.after_cutoff.projects,
                "months": self.after_cutoff.months,
                "years": self.after_cutoff.years,
            },
        }


def table_rows(report: ValidationReport) -> list[tuple[str, int]]:
    """Label/value rows of the validation accounting table, in report order."""
    return [
        ("Projects collected", report.projects_collected),
        ("1. Projects excluded due to missing data", report.excluded_missing_data),
        (
            "2. Projects excluded due to improper SVN configuration",
            report.excluded_svn_config,
        ),
        ("Projects remaining", report.projects_remaining),
        ("Project months for the remaining projects", report.months_before_rule3),
        (
            "3. Project months excluded due to negative code size",
            report.excluded_negative_size,
        ),
        ("Project months remaining", report.months_remaining),
        ("Project years remaining", report.years_remaining),
        ("Projects finally remaining after cut-off", report.after_cutoff.projects),
        ("Project months finally remaining after cut-off", report.after_cutoff.months),
        ("Project years finally remaining after cut-off", report.after_cutoff.years),
    ]


def render_validation_text(report: ValidationReport) -> str:
    """Aligned two-column text rendering of the accounting table."""
    rows = table_rows(report)
    label_width = max(len(label) for label, _ in rows)
    value_width = max(len(f"{value:,}") for _, value in rows)
    return (
        "\n".join(
            f"{label:<{label_width}}  {value:>{value_width},}" for label, value in rows
        )
        + "\n"
    )


def validate_dataset(
    metas: Iterable[ProjectMeta],
    monthly_facts: Iterable[MonthlyFacts],
    cutoff_year: int,
) -> tuple[list[MonthlyFacts], ValidationReport]:
    """Apply the exclusion rules in order and account for every record.

    Rule 1 drops projects without usable joined months: missing size
    facts, missing activity facts, a join that came up empty, or facts
    for a project that has no metadata at all. Rule 2 drops projects
    failing the SVN configuration screen. Rule 3 drops individual months
    with negative code size. Months after the cut-off year are dropped
    last; a project with no month left after the cut-off no longer
    counts as remaining.

    A cut-off preceding every record is not an error: the survivor set
    is empty and a warning is logged.
    """
    meta_by_name = {meta.name: meta for meta in metas}
    facts_by_project: dict[str, list[MonthlyFacts]] = {}
    monthly_facts = list(monthly_facts)
    for fact in monthly_facts:
        facts_by_project.setdefault(fact.key.project, []).append(fact)

    collected = sorted(set(meta_by_name) | set(facts_by_project))

    rule1 = {
        project
        for project in collected
        if project not in meta_by_name or not facts_by_project.get(project)
    }
    rule2 = {
        project
        for project in collected
        if project not in rule1 and not check_svn_enlistments(meta_by_name[project])[0]
    }
    remaining = [p for p in collected if p not in rule1 and p not in rule2]
    months_before_rule3 = sum(len(facts_by_project.get(p, ())) for p in remaining)

    kept: list[MonthlyFacts] = []
    negative = 0
    for project in remaining:
        for fact in facts_by_project.get(project, ()):
            if fact.loc < 0:
                negative += 1
            else:
                kept.append(fact)

    survivors = sorted(
        (fact for fact in kept if fact.key.year <= cutoff_year),
        key=lambda fact: fact.key,
    )
    after = AfterCutoff(
        projects=len({fact.key.project for fact in survivors}),
        months=len(survivors),
        years=len({(fact.key.project, fact.key.year) for fact in survivors}),
    )
    if monthly_facts and not survivors:
        logger.warning(
            "no project-month survived validation with cut-off year %d", cutoff_year
        )

    report = ValidationReport(
        projects_collected=len(collected),
        excluded_missing_data=len(rule1),
        excluded_svn_config=len(rule2),
        projects_remaining=len(remaining),
        months_before_rule3=months_before_rule3,
        excluded_negative_size=negative,
        months_remaining=len(kept),
        years_remaining=len({(fact.key.project, fact.key.year) for fact in kept}),
        after_cutoff=after,
    )
    return survivors, report
