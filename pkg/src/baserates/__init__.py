"""Base-rate analytics for code size and growth of open-source project populations.

The pipeline ingests monthly project facts, validates them against a
small set of exclusion rules, derives yearly code-size and code-growth
metrics, and reports robust summary statistics alongside base-rate
posteriors. A line-classification counter produces size facts directly
from source trees.
"""

from .facts import (
    ActivityRecord,
    Enlistment,
    FactKey,
    MonthlyFacts,
    MonthlyGrowth,
    ProjectMeta,
    SizeRecord,
    VcsKind,
    YearlyAggregate,
    first_active_years,
    join_facts,
    with_first_active_years,
)
from .ingest import IngestError, IngestReport, read_facts, read_metadata, write_facts
from .metrics import (
    GROWTHLESS_POLICIES,
    GROWTHLESS_UNDEFINED,
    GROWTHLESS_ZERO,
    aggregate_all,
    aggregate_years,
    derive_monthly_growth,
    write_aggregates_csv,
)
from .report import Report, build_report, render_boxplot_svg, render_json, render_text
from .sloc import (
    FileCount,
    LanguageSyntax,
    LineCounts,
    TreeCount,
    classify_lines,
    count_file,
    count_tree,
    default_registry,
    load_registry,
    snapshot_to_size_facts,
)
from .stats import (
    BoxplotData,
    Metric,
    MetricSummary,
    Observation,
    base_rate_posterior,
    boxplot_data,
    quantile,
    summarize,
    tukey_fences,
)
from .validate import (
    SVN_URL_PATTERNS,
    ValidationReport,
    check_svn_enlistments,
    validate_dataset,
)

__version__ = "0.1.0"

__all__ = [
    "ActivityRecord",
    "BoxplotData",
    "Enlistment",
    "FactKey",
    "FileCount",
    "GROWTHLESS_POLICIES",
    "GROWTHLESS_UNDEFINED",
    "GROWTHLESS_ZERO",
    "IngestError",
    "IngestReport",
    "LanguageSyntax",
    "LineCounts",
    "Metric",
    "MetricSummary",
    "MonthlyFacts",
    "MonthlyGrowth",
    "Observation",
    "ProjectMeta",
    "Report",
    "SVN_URL_PATTERNS",
    "SizeRecord",
    "TreeCount",
    "ValidationReport",
    "VcsKind",
    "YearlyAggregate",
    "aggregate_all",
    "aggregate_years",
    "base_rate_posterior",
    "boxplot_data",
    "build_report",
    "check_svn_enlistments",
    "classify_lines",
    "count_file",
    "count_tree",
    "default_registry",
    "derive_monthly_growth",
    "first_active_years",
    "join_facts",
    "load_registry",
    "quantile",
    "read_facts",
    "read_metadata",
    "render_boxplot_svg",
    "render_json",
    "render_text",
    "snapshot_to_size_facts",
    "summarize",
    "tukey_fences",
    "validate_dataset",
    "with_first_active_years",
    "write_aggregates_csv",
    "write_facts",
]
