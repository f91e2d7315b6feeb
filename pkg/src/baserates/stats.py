"""Robust summary statistics and the base-rate posterior.

Quantiles use linear interpolation over the order statistics (index
h = (n - 1) * p + 1 on the 1-based sorted sample), the default scheme of
most statistics environments, so medians of even-sized samples
interpolate between the two middle values.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import NamedTuple, Sequence

TUKEY_FENCE_FACTOR = 1.5


class Metric(str, enum.Enum):
    CS = "CS"
    CGA = "CGa"
    CGI = "CGi"


class Observation(NamedTuple):
    """One metric value attributed to a project-year."""

    project: str
    year: int
    value: float


def quantile(values: Sequence[float], p: float) -> float:
    """Linear-interpolation quantile of ``values`` at fraction ``p``."""
    if len(values) == 0:
        raise ValueError("quantile of an empty sample")
    if not 0.0 <= p <= 1.0:
        raise ValueError(f"quantile fraction {p} outside [0, 1]")
    xs = sorted(values)
    h = (len(xs) - 1) * p
    lower = math.floor(h)
    fraction = h - lower
    if fraction == 0.0:
        return float(xs[lower])
    return xs[lower] + fraction * (xs[lower + 1] - xs[lower])


def tukey_fences(values: Sequence[float]) -> tuple[float, float]:
    """(lower, upper) outlier fences at 1.5 IQR beyond the quartiles."""
    q1 = quantile(values, 0.25)
    q3 = quantile(values, 0.75)
    spread = TUKEY_FENCE_FACTOR * (q3 - q1)
    return q1 - spread, q3 + spread


@dataclass(frozen=True)
class MetricSummary:
    """Median, dispersion, and outlier accounting for one metric."""

    metric: Metric
    median: float
    median_attainers: tuple[tuple[str, int], ...]
    iqr: float
    observations: int
    outliers: int

    @property
    def outlier_rate(self) -> float:
        return self.outliers / self.observations


def summarize(observations: Sequence[Observation], metric: Metric) -> MetricSummary:
    """Median, IQR, and Tukey outlier count over (project, year, value) points.

    Median attainers are the observations whose value equals the median
    exactly; when the median is interpolated, the attainers of the two
    bracketing order statistics are reported instead.
    """
    if not observations:
        raise ValueError(f"no defined observations for {metric.value}")
    values = [float(obs.value) for obs in observations]
    median = quantile(values, 0.5)
    q1 = quantile(values, 0.25)
    q3 = quantile(values, 0.75)
    spread = TUKEY_FENCE_FACTOR * (q3 - q1)
    low, high = q1 - spread, q3 + spread
    outliers = sum(1 for value in values if value < low or value > high)

    matches = [obs for obs in observations if float(obs.value) == median]
    if matches:
        attainers = sorted((obs.project, obs.year) for obs in matches)
    else:
        xs = sorted(values)
        lower = math.floor((len(xs) - 1) * 0.5)
        bracket = {xs[lower], xs[lower + 1]}
        attainers = sorted(
            (obs.project, obs.year)
            for obs in observations
            if float(obs.value) in bracket
        )
    return MetricSummary(
        metric=metric,
        median=median,
        median_attainers=tuple(attainers),
        iqr=q3 - q1,
        observations=len(values),
        outliers=outliers,
    )


@dataclass(frozen=True)
class BoxplotData:
    """Five-number summary with Tukey whiskers and the points beyond them."""

    q1: float
    median: float
    q3: float
    whisker_low: float
    whisker_high: float
    outlier_values: tuple[float, ...]


def boxplot_data(values: Sequence[float]) -> BoxplotData:
    """Boxplot data with whiskers at the most extreme points inside the fences."""
    if len(values) == 0:
        raise ValueError("no values to plot")
    vals = [float(value) for value in values]
    low, high = tukey_fences(vals)
    inside = [value for value in vals if low <= value <= high]
    return BoxplotData(
        q1=quantile(vals, 0.25),
        median=quantile(vals, 0.5),
        q3=quantile(vals, 0.75),
        whisker_low=min(inside),
        whisker_high=max(inside),
        outlier_values=tuple(sorted(v for v in vals if v < low or v > high)),
    )


def base_rate_posterior(prior: float, sensitivity: float, specificity: float) -> float:
    """Probability of the condition given a positive test result.

    Combines the prevalence of the condition in the population (the base
    rate, used as prior) with the test's sensitivity and specificity:

        sensitivity * prior
        ---------------------------------------------------
        sensitivity * prior + (1 - specificity) * (1 - prior)

    Judging the probability from the test's accuracy alone ignores the
    base rate and overstates it, which is the classic base-rate fallacy.
    """
    for name, value in (
        ("prior", prior),
        ("sensitivity", sensitivity),
        ("specificity", specificity),
    ):
        if not 0.0 <= value <= 1.0:
            raise ValueError(f"{name} must lie in [0, 1], got {value}")
    denominator = sensitivity * prior + (1.0 - specificity) * (1.0 - prior)
    if denominator == 0.0:
        raise ValueError("test never fires: posterior undefined for this configuration")
    return sensitivity * prior / denominator
