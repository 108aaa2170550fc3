"""Per-spec lint reports and corpus-level aggregation.

A LintReport holds one spec's violations plus per-rule counts; a
CorpusSummary rolls many reports up into per-rule rows of occurrence
totals, affected-project counts, and an integer percentage of affected
projects (rounded half up). Rendering is deterministic bytes.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Iterable, Mapping

from .errors import EmptyCorpus, UnsupportedFormat
from .rules import RULE_ORDER, RuleId, Violation

FORMATS = ("text", "json", "csv")


@dataclass(frozen=True)
class LintReport:
    spec_id: str
    violations: tuple[Violation, ...]
    counts: Mapping[RuleId, int]


@dataclass(frozen=True)
class SummaryRow:
    rule: RuleId
    occurrences: int
    projects_affected: int
    percentage: int


@dataclass(frozen=True)
class CorpusSummary:
    total_projects: int
    rows: tuple[SummaryRow, ...]


def build_report(spec_id: str, violations: Iterable[Violation]) -> LintReport:
    """Assemble a report: coalesce duplicates, sort, count per rule."""
    unique: dict[tuple, Violation] = {}
    for violation in sorted(violations, key=Violation.sort_key):
        unique.setdefault(violation.identity(), violation)
    ordered = tuple(unique.values())
    counts = {rule: 0 for rule in RULE_ORDER}
    for violation in ordered:
        counts[violation.rule] += 1
    return LintReport(spec_id=spec_id, violations=ordered, counts=counts)


def aggregate(reports: list[LintReport], total_projects: int) -> CorpusSummary:
    """Roll reports up into per-rule corpus rows.

    occurrences sums every report's count; projects_affected counts
    distinct spec_ids with at least one hit; percentage is the share of
    affected projects out of total_projects, rounded half up to an
    integer. Permutation-invariant over the report list.
    """
    if not reports:
        raise EmptyCorpus("no reports to aggregate")
    distinct = {report.spec_id for report in reports}
    if total_projects < len(distinct):
        raise ValueError(
            f"total_projects={total_projects} is less than the "
            f"{len(distinct)} distinct spec ids in the reports"
        )
    rows = []
    for rule in RULE_ORDER:
        occurrences = sum(report.counts.get(rule, 0) for report in reports)
        affected = len({
            report.spec_id for report in reports if report.counts.get(rule, 0) > 0
        })
        rows.append(SummaryRow(
            rule=rule,
            occurrences=occurrences,
            projects_affected=affected,
            percentage=_percent_half_up(affected, total_projects),
        ))
    return CorpusSummary(total_projects=total_projects, rows=tuple(rows))


def _percent_half_up(affected: int, total: int) -> int:
    # floor(100 * affected / total + 1/2) in exact integer arithmetic
    return (200 * affected + total) // (2 * total)


def render(payload: LintReport | CorpusSummary, format: str) -> bytes:
    """Render a report or summary as deterministic bytes."""
    if format not in FORMATS:
        raise UnsupportedFormat(f"unknown format {format!r}; expected one of {FORMATS}")
    if isinstance(payload, LintReport):
        if format == "csv":
            raise UnsupportedFormat("csv output applies to corpus summaries only")
        return _report_json(payload) if format == "json" else _report_text(payload)
    if isinstance(payload, CorpusSummary):
        if format == "json":
            return _summary_json(payload)
        if format == "csv":
            return _summary_csv(payload)
        return _summary_text(payload)
    raise UnsupportedFormat(f"cannot render {type(payload).__name__}")


def _violation_json(violation: Violation) -> dict:
    doc: dict = {
        "rule": violation.rule.value,
        "category": violation.rule.category.value,
        "path": violation.path,
    }
    if violation.method is not None:
        doc["method"] = violation.method
    if violation.status_key is not None:
        doc["status_key"] = violation.status_key
    doc["fragment"] = violation.fragment
    doc["message"] = violation.message
    return doc


def _report_json(report: LintReport) -> bytes:
    doc = {
        "spec_id": report.spec_id,
        "violations": [_violation_json(v) for v in report.violations],
        "counts": {rule.value: report.counts.get(rule, 0) for rule in RULE_ORDER},
    }
    return (json.dumps(doc, separators=(",", ":")) + "\n").encode("utf-8")


def _report_text(report: LintReport) -> bytes:
    total = len(report.violations)
    noun = "violation" if total == 1 else "violations"
    lines = [f"{report.spec_id}: {total} {noun}"]
    for v in report.violations:  # sorted by path, so paths group together
        location = v.path
        if v.method is not None:
            location += f" {v.method}"
        if v.status_key is not None:
            location += f" [{v.status_key}]"
        lines.append(f"  {location} {v.rule.value} '{v.fragment}': {v.message}")
    return ("\n".join(lines) + "\n").encode("utf-8")


def _summary_json(summary: CorpusSummary) -> bytes:
    doc = {
        "total_projects": summary.total_projects,
        "rows": [
            {
                "rule": row.rule.value,
                "category": row.rule.category.value,
                "occurrences": row.occurrences,
                "projects": row.projects_affected,
                "percentage": row.percentage,
            }
            for row in summary.rows
        ],
    }
    return (json.dumps(doc, separators=(",", ":")) + "\n").encode("utf-8")


def _summary_csv(summary: CorpusSummary) -> bytes:
    lines = ["rule,occurrences,projects,percentage"]
    lines.extend(
        f"{row.rule.value},{row.occurrences},{row.projects_affected},{row.percentage}"
        for row in summary.rows
    )
    return ("\n".join(lines) + "\n").encode("utf-8")


def _summary_text(summary: CorpusSummary) -> bytes:
    lines = [
        f"total projects: {summary.total_projects}",
        f"{'rule':<16} {'occurrences':>11} {'projects':>8} {'percent':>7}",
    ]
    lines.extend(
        f"{row.rule.value:<16} {row.occurrences:>11} {row.projects_affected:>8} "
        f"{row.percentage:>7}"
        for row in summary.rows
    )
    return ("\n".join(lines) + "\n").encode("utf-8")
