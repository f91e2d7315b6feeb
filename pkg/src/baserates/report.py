"""Assembly of validation accounting and metric summaries into report documents.

The JSON and text renderings are produced from the same intermediate
dictionary, so every field present in one is present in the other and
identical inputs always yield byte-identical output.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

from .stats import BoxplotData, MetricSummary
from .validate import ValidationReport, table_rows

NO_METRICS_NOTE = "no metrics computed"


@dataclass(frozen=True)
class MetricSection:
    summary: MetricSummary
    boxplot: BoxplotData
    undefined_excluded: int = 0


@dataclass(frozen=True)
class Report:
    config: dict
    validation: ValidationReport
    sections: tuple[MetricSection, ...]


def build_report(
    validation: ValidationReport,
    summaries,
    boxplots,
    config: dict,
    undefined_excluded: dict | None = None,
) -> Report:
    """Pair each summary with its boxplot and echo the run configuration."""
    summaries = list(summaries)
    boxplots = list(boxplots)
    if len(summaries) != len(boxplots):
        raise ValueError("summaries and boxplots must align one to one")
    excluded = undefined_excluded or {}
    sections = tuple(
        MetricSection(summary, boxplot, excluded.get(summary.metric.value, 0))
        for summary, boxplot in zip(summaries, boxplots)
    )
    return Report(config=dict(config), validation=validation, sections=sections)


def report_to_dict(report: Report) -> dict:
    """The single intermediate structure both renderings are generated from."""
    doc = {
        "config": {key: report.config[key] for key in sorted(report.config)},
        "validation": report.validation.to_dict(),
        "metrics": [_section_to_dict(section) for section in report.sections],
    }
    if not report.sections:
        doc["note"] = NO_METRICS_NOTE
    return doc


def _section_to_dict(section: MetricSection) -> dict:
    summary = section.summary
    box = section.boxplot
    return {
        "metric": summary.metric.value,
        "median": summary.median,
        "median_attainers": [
            {"project": project, "year": year}
            for project, year in summary.median_attainers
        ],
        "iqr": summary.iqr,
        "observations": summary.observations,
        "outliers": summary.outliers,
        "outlier_rate": summary.outlier_rate,
        "undefined_excluded": section.undefined_excluded,
        "boxplot": {
            "q1": box.q1,
            "median": box.median,
            "q3": box.q3,
            "whisker_low": box.whisker_low,
            "whisker_high": box.whisker_high,
            "outlier_values": list(box.outlier_values),
        },
    }


def render_json(report: Report) -> str:
    return json.dumps(report_to_dict(report), indent=2) + "\n"


def format_number(value) -> str:
    """Thousands-separated integers; floats trimmed to six significant digits."""
    if isinstance(value, int):
        return f"{value:,}"
    number = float(value)
    if number.is_integer() and abs(number) < 1e15:
        return f"{int(number):,}"
    return f"{number:,.6g}"


def _format_config_value(value) -> str:
    return value if isinstance(value, str) else json.dumps(value)


def _format_attainers(attainers: list[dict]) -> str:
    parts = [f"'{a['project']}' ({a['year']})" for a in attainers]
    if len(parts) <= 2:
        return " and ".join(parts)
    return f"{parts[0]} and {len(parts) - 1} others"


def _render_table(rows: list[list[str]]) -> list[str]:
    widths = [max(len(row[i]) for row in rows) for i in range(len(rows[0]))]
    lines = []
    for index, row in enumerate(rows):
        lines.append(
            "  ".join(cell.ljust(widths[i]) for i, cell in enumerate(row)).rstrip()
        )
        if index == 0:
            lines.append("  ".join("-" * widths[i] for i in range(len(row))))
    return lines


def _metric_table(metrics: list[dict]) -> list[str]:
    rows = [
        [
            "Metric",
            "Median",
            "Median project(s)",
            "IQR",
            "Observations",
            "Outliers (%)",
            "Undefined excluded",
        ]
    ]
    for m in metrics:
        percent = round(m["outlier_rate"] * 100)
        rows.append(
            [
                m["metric"],
                format_number(m["median"]),
                _format_attainers(m["median_attainers"]),
                format_number(m["iqr"]),
                format_number(m["observations"]),
                f"{m['outliers']:,} ({percent}%)",
                format_number(m["undefined_excluded"]),
            ]
        )
    return _render_table(rows)


def _boxplot_table(metrics: list[dict]) -> list[str]:
    rows = [
        [
            "Metric",
            "Whisker low",
            "Q1",
            "Median",
            "Q3",
            "Whisker high",
            "Beyond whiskers",
        ]
    ]
    for m in metrics:
        box = m["boxplot"]
        rows.append(
            [
                m["metric"],
                format_number(box["whisker_low"]),
                format_number(box["q1"]),
                format_number(box["median"]),
                format_number(box["q3"]),
                format_number(box["whisker_high"]),
                format_number(len(box["outlier_values"])),
            ]
        )
    return _render_table(rows)


def render_text(report: Report) -> str:
    """Aligned text tables: configuration, validation accounting, metric summary."""
    doc = report_to_dict(report)
    out: list[str] = []
    out.append("Code size and growth base rates")
    out.append("===============================")
    out.append("")
    out.append("Configuration")
    out.append("-------------")
    for key, value in doc["config"].items():
        out.append(f"{key}: {_format_config_value(value)}")
    out.append("")
    out.append("Data set validation")
    out.append("-------------------")
    rows = table_rows(report.validation)
    label_width = max(len(label) for label, _ in rows)
    value_width = max(len(format_number(value)) for _, value in rows)
    for label, value in rows:
        out.append(f"{label:<{label_width}}  {format_number(value):>{value_width}}")
    out.append("")
    out.append("Metric summary")
    out.append("--------------")
    if doc["metrics"]:
        out.extend(_metric_table(doc["metrics"]))
        out.append("")
        out.append("Boxplot summary")
        out.append("---------------")
        out.extend(_boxplot_table(doc["metrics"]))
    else:
        out.append(doc["note"])
    return "\n".join(out) + "\n"


def _escape(text: str) -> str:
    return text.replace("&", "&amp;").replace("<", "&lt;").replace(">", "&gt;")


def render_boxplot_svg(box: BoxplotData, title: str) -> str:
    """Standalone SVG boxplot zoomed so the whiskers span most of the axis.

    The vertical range is the whisker span padded by 15 percent on each
    side, so outliers beyond that range are not visible by design.
    """
    width, height = 360.0, 480.0
    margin_top, margin_bottom = 48.0, 32.0
    plot_height = height - margin_top - margin_bottom
    span = box.whisker_high - box.whisker_low
    pad = span * 0.15 if span > 0 else max(abs(box.whisker_high), 1.0) * 0.1
    y_min = box.whisker_low - pad
    y_max = box.whisker_high + pad

    def y(value: float) -> float:
        return margin_top + (y_max - value) / (y_max - y_min) * plot_height

    cx = 220.0
    half = 60.0
    cap = 30.0
    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width:g}" height="{height:g}"'
        f' viewBox="0 0 {width:g} {height:g}">',
        f"  <title>{_escape(title)}</title>",
        f'  <text x="{cx:g}" y="24" text-anchor="middle" font-family="sans-serif"'
        f' font-size="14">{_escape(title)}</text>',
    ]
    # whisker stems and caps
    for lo, hi in ((box.whisker_low, box.q1), (box.q3, box.whisker_high)):
        parts.append(
            f'  <line x1="{cx:.2f}" y1="{y(lo):.2f}" x2="{cx:.2f}" y2="{y(hi):.2f}"'
            ' stroke="black" stroke-dasharray="4 3"/>'
        )
    for value in (box.whisker_low, box.whisker_high):
        parts.append(
            f'  <line x1="{cx - cap:.2f}" y1="{y(value):.2f}" x2="{cx + cap:.2f}"'
            f' y2="{y(value):.2f}" stroke="black"/>'
        )
    # box and median
    parts.append(
        f'  <rect x="{cx - half:.2f}" y="{y(box.q3):.2f}" width="{2 * half:.2f}"'
        f' height="{y(box.q1) - y(box.q3):.2f}" fill="none" stroke="black"/>'
    )
    parts.append(
        f'  <line x1="{cx - half:.2f}" y1="{y(box.median):.2f}" x2="{cx + half:.2f}"'
        f' y2="{y(box.median):.2f}" stroke="black" stroke-width="2"/>'
    )
    # outliers that fall inside the zoomed range
    for value in box.outlier_values:
        if y_min <= value <= y_max:
            parts.append(
                f'  <circle cx="{cx:.2f}" cy="{y(value):.2f}" r="3" fill="none"'
                ' stroke="black"/>'
            )
    # axis labels for the five summary values
    for label, value in (
        ("whisker high", box.whisker_high),
        ("q3", box.q3),
        ("median", box.median),
        ("q1", box.q1),
        ("whisker low", box.whisker_low),
    ):
        parts.append(
            f'  <text x="{cx - half - 12:.2f}" y="{y(value) + 4:.2f}" text-anchor="end"'
            f' font-family="sans-serif" font-size="11">{label}: {format_number(value)}</text>'
        )
    parts.append("</svg>")
    return "\n".join(parts) + "\n"
