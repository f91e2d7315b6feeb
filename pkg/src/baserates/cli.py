"""Command-line entry point: count source trees and run the analysis pipeline.

Exit codes: 0 success, 1 usage error, 2 I/O error, 3 validation left no
survivors (the reports are still written in that case). Diagnostics go
to stderr; data goes to files or stdout.
"""

from __future__ import annotations

import argparse
import csv
import json
import logging
import sys
from pathlib import Path

from . import ingest, metrics, report, sloc, stats, validate
from .facts import join_facts

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_IO = 2
EXIT_EMPTY = 3

logger = logging.getLogger(__name__)


class _Parser(argparse.ArgumentParser):
    # usage errors exit 1, not argparse's default 2
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(
        prog="baserates",
        description="Summary statistics for code size and growth of project populations.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    count = sub.add_parser(
        "count", help="classify source lines under a directory into code/comment/blank"
    )
    count.add_argument("--root", required=True, help="directory tree to count")
    count.add_argument("--registry", help="JSON file extending the language registry")
    count.add_argument("--out", help="output CSV path (default: stdout)")
    count.set_defaults(func=_cmd_count)

    analyze = sub.add_parser(
        "analyze", help="ingest, validate, and report on monthly project facts"
    )
    analyze.add_argument("--metadata", help="project metadata file (JSON lines)")
    analyze.add_argument("--facts", help="monthly facts file (CSV)")
    analyze.add_argument(
        "--cutoff-year", type=int, help="drop months after this calendar year"
    )
    analyze.add_argument(
        "--growthless-year-policy",
        choices=metrics.GROWTHLESS_POLICIES,
        help="treat years without growth months as undefined (default) or zero growth",
    )
    analyze.add_argument("--out", help="output directory for the report files")
    analyze.add_argument(
        "--svg", action="store_true", default=None, help="also render SVG boxplots"
    )
    analyze.add_argument(
        "--config", help="JSON config supplying defaults; explicit flags win"
    )
    analyze.set_defaults(func=_cmd_analyze)
    return parser


def _fail_usage(message: str) -> int:
    print(f"baserates: error: {message}", file=sys.stderr)
    return EXIT_USAGE


def _cmd_count(args) -> int:
    try:
        registry = (
            sloc.load_registry(args.registry)
            if args.registry
            else sloc.default_registry()
        )
    except (OSError, ValueError, json.JSONDecodeError) as exc:
        print(f"baserates: cannot load registry: {exc}", file=sys.stderr)
        return EXIT_IO
    try:
        tree = sloc.count_tree(args.root, registry)
    except OSError as exc:
        print(f"baserates: {exc}", file=sys.stderr)
        return EXIT_IO

    rows = _count_rows(tree)
    if args.out:
        try:
            with open(args.out, "w", encoding="utf-8", newline="") as handle:
                _write_count_csv(rows, handle)
        except OSError as exc:
            print(f"baserates: {exc}", file=sys.stderr)
            return EXIT_IO
    else:
        _write_count_csv(rows, sys.stdout)

    if tree.skipped:
        print(
            f"baserates: skipped {tree.skipped} file(s) with unregistered extensions",
            file=sys.stderr,
        )
    if not tree.files:
        print("baserates: no registered source files found", file=sys.stderr)
    return EXIT_OK


def _count_rows(tree: sloc.TreeCount) -> list[list]:
    rows: list[list] = [["path", "language", "code", "comment", "blank"]]
    for fc in tree.files:
        rows.append([fc.path, fc.language, fc.code, fc.comment, fc.blank])
    for language in sorted(tree.by_language):
        counts = tree.by_language[language]
        rows.append(["(total)", language, counts.code, counts.comment, counts.blank])
    rows.append(
        ["(total)", "(all)", tree.total.code, tree.total.comment, tree.total.blank]
    )
    return rows


def _write_count_csv(rows, handle) -> None:
    writer = csv.writer(handle, lineterminator="\n")
    writer.writerows(rows)


def _cmd_analyze(args) -> int:
    config: dict = {}
    if args.config:
        try:
            with open(args.config, encoding="utf-8") as handle:
                config = json.load(handle)
        except (OSError, json.JSONDecodeError) as exc:
            print(f"baserates: cannot load config: {exc}", file=sys.stderr)
            return EXIT_IO
        if not isinstance(config, dict):
            print("baserates: config file must hold a JSON object", file=sys.stderr)
            return EXIT_IO

    def setting(flag_value, key, default=None):
        return flag_value if flag_value is not None else config.get(key, default)

    metadata_path = setting(args.metadata, "metadata")
    facts_path = setting(args.facts, "facts")
    cutoff_year = setting(args.cutoff_year, "cutoff_year")
    policy = setting(
        args.growthless_year_policy,
        "growthless_year_policy",
        metrics.GROWTHLESS_UNDEFINED,
    )
    out_dir = setting(args.out, "out")
    svg = bool(setting(args.svg, "svg", False))

    missing = [
        flag
        for flag, value in (
            ("--metadata", metadata_path),
            ("--facts", facts_path),
            ("--cutoff-year", cutoff_year),
            ("--out", out_dir),
        )
        if value is None
    ]
    if missing:
        return _fail_usage(f"missing required option(s): {', '.join(missing)}")
    if not isinstance(cutoff_year, int) or isinstance(cutoff_year, bool):
        return _fail_usage("--cutoff-year must be an integer")
    if policy not in metrics.GROWTHLESS_POLICIES:
        return _fail_usage(f"unknown growthless-year policy {policy!r}")

    return run_analyze(metadata_path, facts_path, cutoff_year, policy, out_dir, svg)


def _observations(
    metric: stats.Metric, aggregates, cutoff_year: int
) -> tuple[list[stats.Observation], int]:
    """Defined observations for one metric plus the count of undefined ones.

    Code size is a snapshot of the cut-off year (the last complete year);
    the growth metrics span every project-year in the data set.
    """
    observations: list[stats.Observation] = []
    undefined = 0
    for aggregate in aggregates:
        if metric is stats.Metric.CS:
            if aggregate.year == cutoff_year:
                observations.append(
                    stats.Observation(aggregate.project, aggregate.year, float(aggregate.cs))
                )
        elif metric is stats.Metric.CGA:
            if aggregate.cga is None:
                undefined += 1
            else:
                observations.append(
                    stats.Observation(aggregate.project, aggregate.year, float(aggregate.cga))
                )
        else:
            if aggregate.cgi is None:
                undefined += 1
            else:
                observations.append(
                    stats.Observation(aggregate.project, aggregate.year, float(aggregate.cgi))
                )
    return observations, undefined


def run_analyze(metadata_path, facts_path, cutoff_year, policy, out_dir, svg) -> int:
    """Ingest, validate, derive, summarize, and write all report artifacts."""
    try:
        metas, meta_report = ingest.read_metadata(metadata_path)
        size, activity, facts_report = ingest.read_facts(facts_path)
    except OSError as exc:
        print(f"baserates: {exc}", file=sys.stderr)
        return EXIT_IO
    except ingest.IngestError as exc:
        print(f"baserates: {exc}", file=sys.stderr)
        return EXIT_IO

    for rep in (meta_report, facts_report):
        for diag in rep.malformed:
            logger.warning("%s:%d: %s", diag.file, diag.line, diag.reason)

    monthly, join_diagnostics = join_facts(size, activity)
    for diagnostic in join_diagnostics:
        logger.warning("%s", diagnostic)

    survivors, validation_report = validate.validate_dataset(
        metas, monthly, cutoff_year
    )
    aggregates = metrics.aggregate_all(survivors, policy)

    summaries = []
    boxplots = []
    excluded: dict[str, int] = {}
    for metric in (stats.Metric.CS, stats.Metric.CGA, stats.Metric.CGI):
        observations, undefined = _observations(metric, aggregates, cutoff_year)
        excluded[metric.value] = undefined
        if not observations:
            continue
        summaries.append(stats.summarize(observations, metric))
        boxplots.append(stats.boxplot_data([obs.value for obs in observations]))

    config_echo = {
        "metadata": str(metadata_path),
        "facts": str(facts_path),
        "cutoff_year": cutoff_year,
        "growthless_year_policy": policy,
        "out": str(out_dir),
        "svg": svg,
    }
    document = report.build_report(
        validation_report, summaries, boxplots, config_echo, excluded
    )

    out = Path(out_dir)
    try:
        out.mkdir(parents=True, exist_ok=True)
        metrics.write_aggregates_csv(aggregates, out / "yearly_aggregates.csv")
        (out / "report.json").write_text(report.render_json(document), encoding="utf-8")
        (out / "report.txt").write_text(report.render_text(document), encoding="utf-8")
        if svg:
            for section in document.sections:
                metric_name = section.summary.metric.value
                svg_text = report.render_boxplot_svg(
                    section.boxplot, f"{metric_name} boxplot"
                )
                (out / f"boxplot_{metric_name.lower()}.svg").write_text(
                    svg_text, encoding="utf-8"
                )
    except OSError as exc:
        print(f"baserates: {exc}", file=sys.stderr)
        return EXIT_IO

    if not survivors:
        print(
            "baserates: validation eliminated every project-month; "
            "reports written with empty metrics",
            file=sys.stderr,
        )
        return EXIT_EMPTY
    return EXIT_OK


def main(argv=None) -> int:
    logging.basicConfig(stream=sys.stderr, format="baserates: %(levelname)s: %(message)s")
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_USAGE
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
