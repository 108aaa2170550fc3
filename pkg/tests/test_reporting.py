"""Report building, corpus aggregation arithmetic, and rendering."""

from __future__ import annotations

import random

import pytest

from conftest import corpus_reports
from rest_lint import (
    EmptyCorpus,
    RuleId,
    UnsupportedFormat,
    Violation,
    aggregate,
    build_report,
    render,
)


def make_violation(rule: RuleId, spec_id: str, path: str, fragment: str) -> Violation:
    return Violation(
        rule=rule, spec_id=spec_id, path=path, method=None, status_key=None,
        fragment=fragment, message="synthetic",
    )


def report_with(spec_id: str, counts: dict[RuleId, int]):
    violations = [
        make_violation(rule, spec_id, f"/p{i}", "x")
        for rule, n in counts.items()
        for i in range(n)
    ]
    return build_report(spec_id, violations)


class TestBuildReport:
    def test_counts_match_violations(self):
        report = report_with("a", {RuleId.HYPHENS: 3, RuleId.RC401: 1})
        assert report.counts[RuleId.HYPHENS] == 3
        assert report.counts[RuleId.RC401] == 1
        assert sum(report.counts.values()) == len(report.violations)

    def test_all_rules_have_a_count(self):
        report = build_report("a", [])
        assert set(report.counts) == set(RuleId)
        assert all(n == 0 for n in report.counts.values())

    def test_duplicates_coalesce(self):
        v = make_violation(RuleId.HYPHENS, "a", "/p", "x")
        report = build_report("a", [v, v])
        assert len(report.violations) == 1

    def test_violations_sorted(self):
        vs = [
            make_violation(RuleId.HYPHENS, "a", "/z", "x"),
            make_violation(RuleId.HYPHENS, "a", "/a", "x"),
        ]
        report = build_report("a", vs)
        assert [v.path for v in report.violations] == ["/a", "/z"]


class TestAggregate:
    def test_half_case_rounds_up(self):
        # 39 of 40 affected: 97.5 renders as 98
        reports = [report_with(f"p{i}", {RuleId.HYPHENS: 1}) for i in range(39)]
        reports[0] = report_with("p0", {RuleId.HYPHENS: 132})
        reports.append(report_with("p39", {}))
        summary = aggregate(reports, total_projects=40)
        row = next(r for r in summary.rows if r.rule is RuleId.HYPHENS)
        assert (row.occurrences, row.projects_affected, row.percentage) == (170, 39, 98)

    def test_other_half_case(self):
        # 35 of 40 affected: 87.5 renders as 88
        reports = [report_with(f"p{i}", {RuleId.PLURAL_NOUN: 1}) for i in range(35)]
        reports[0] = report_with("p0", {RuleId.PLURAL_NOUN: 145})
        reports += [report_with(f"p{i}", {}) for i in range(35, 40)]
        summary = aggregate(reports, total_projects=40)
        row = next(r for r in summary.rows if r.rule is RuleId.PLURAL_NOUN)
        assert (row.occurrences, row.projects_affected, row.percentage) == (179, 35, 88)

    def test_single_clean_project(self):
        summary = aggregate([build_report("only", [])], total_projects=1)
        assert all(
            (r.occurrences, r.projects_affected, r.percentage) == (0, 0, 0)
            for r in summary.rows
        )

    def test_empty_corpus_raises(self):
        with pytest.raises(EmptyCorpus):
            aggregate([], total_projects=0)

    def test_total_must_cover_distinct_ids(self):
        with pytest.raises(ValueError):
            aggregate([build_report("a", []), build_report("b", [])], total_projects=1)

    def test_rows_are_in_canonical_rule_order(self):
        summary = aggregate([build_report("a", [])], total_projects=1)
        assert [r.rule for r in summary.rows] == list(RuleId)

    def test_permutation_invariant(self):
        rng = random.Random(11)
        reports = [
            report_with(f"p{i}", {rule: (i + j) % 3 for j, rule in enumerate(RuleId)})
            for i in range(12)
        ]
        baseline = aggregate(reports, total_projects=15)
        for _ in range(10):
            rng.shuffle(reports)
            assert aggregate(reports, total_projects=15) == baseline

    def test_multiple_reports_same_project_count_once(self):
        reports = [
            report_with("p0", {RuleId.HYPHENS: 2}),
            report_with("p0", {RuleId.HYPHENS: 3}),
        ]
        row = next(
            r for r in aggregate(reports, total_projects=4).rows
            if r.rule is RuleId.HYPHENS
        )
        assert (row.occurrences, row.projects_affected, row.percentage) == (5, 1, 25)


class TestPercentageRounding:
    @pytest.mark.parametrize(
        "affected,total,expected",
        [
            (39, 40, 98), (35, 40, 88), (33, 40, 83), (11, 40, 28), (9, 40, 23),
            (5, 40, 13), (3, 40, 8), (1, 40, 3),  # all the .5 cases round up
            (12, 40, 30), (14, 40, 35), (4, 40, 10),  # exact cases
            (0, 40, 0), (40, 40, 100), (1, 3, 33), (2, 3, 67),
        ],
    )
    def test_round_half_up(self, affected, total, expected):
        reports = [report_with(f"p{i}", {RuleId.RC401: 1}) for i in range(affected)]
        reports += [report_with(f"q{i}", {}) for i in range(total - affected)]
        summary = aggregate(reports, total_projects=total)
        row = next(r for r in summary.rows if r.rule is RuleId.RC401)
        assert row.percentage == expected


class TestRender:
    def test_empty_report_json(self):
        data = render(build_report("x", []), "json")
        text = data.decode("utf-8")
        assert text.startswith('{"spec_id":"x","violations":[],"counts":{')
        assert '"Hyphens":0' in text

    def test_json_omits_absent_method_and_status(self):
        report = build_report("x", [make_violation(RuleId.HYPHENS, "x", "/p", "f")])
        text = render(report, "json").decode("utf-8")
        assert '"method"' not in text and '"status_key"' not in text
        assert '"category":"URIDesign"' in text

    def test_text_line_has_rule_path_fragment_message(self):
        report = build_report("x", [make_violation(RuleId.HYPHENS, "x", "/userProfiles", "userProfiles")])
        lines = render(report, "text").decode("utf-8").splitlines()
        assert lines[0] == "x: 1 violation"
        assert lines[1] == "  /userProfiles Hyphens 'userProfiles': synthetic"

    def test_csv_summary_shape(self):
        summary = aggregate([build_report("a", [])], total_projects=1)
        lines = render(summary, "csv").decode("utf-8").splitlines()
        assert lines[0] == "rule,occurrences,projects,percentage"
        assert len(lines) == 15
        assert lines[1] == "RC401,0,0,0"
        assert lines[-1] == "NoUnderscores,0,0,0"

    def test_csv_uses_lf_endings(self):
        summary = aggregate([build_report("a", [])], total_projects=1)
        assert b"\r" not in render(summary, "csv")

    def test_csv_rejected_for_reports(self):
        with pytest.raises(UnsupportedFormat):
            render(build_report("x", []), "csv")

    def test_unknown_format_rejected(self):
        with pytest.raises(UnsupportedFormat):
            render(build_report("x", []), "xml")

    def test_summary_text_mentions_totals(self):
        summary = aggregate([build_report("a", [])], total_projects=7)
        text = render(summary, "text").decode("utf-8")
        assert text.startswith("total projects: 7\n")

    def test_json_injective_over_corpus_reports(self, corpus_labels, lexicon):
        reports = corpus_reports(corpus_labels, lexicon)
        rendered = [render(r, "json") for r in reports]
        assert len(set(rendered)) == len(rendered)

    def test_render_is_deterministic(self, corpus_labels, lexicon):
        for report in corpus_reports(corpus_labels, lexicon):
            for fmt in ("text", "json"):
                assert render(report, fmt) == render(report, fmt)
