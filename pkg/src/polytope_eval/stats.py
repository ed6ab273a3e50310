"""Pearson correlation at instance and system level, and inter-annotator agreement."""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from itertools import combinations
from typing import Iterable, Mapping, Sequence

from .errors import (
    DegenerateSeriesError,
    EmptyFilterError,
    InsufficientOverlapError,
    TooFewPointsError,
)
from .taxonomy import Aspect


@dataclass(frozen=True)
class PairedSeries:
    label_x: str
    label_y: str
    points: tuple[tuple[float, float], ...]

    @classmethod
    def of(cls, points: Iterable[tuple[float, float]], label_x="x", label_y="y"):
        return cls(label_x, label_y, tuple((float(x), float(y)) for x, y in points))


def pearson(series: PairedSeries | Sequence[tuple[float, float]]) -> float:
    """Sample Pearson correlation coefficient of paired points."""
    points = series.points if isinstance(series, PairedSeries) else list(series)
    n = len(points)
    if n < 2:
        raise TooFewPointsError(f"need at least 2 points, got {n}", n=n)
    if any(math.isnan(x) or math.isnan(y) for x, y in points):
        raise ValueError("points contain NaN")
    mean_x = sum(x for x, _ in points) / n
    mean_y = sum(y for _, y in points) / n
    # The (n-1) sample denominators cancel between covariance and variances.
    cov = sum((x - mean_x) * (y - mean_y) for x, y in points)
    var_x = sum((x - mean_x) ** 2 for x, _ in points)
    var_y = sum((y - mean_y) ** 2 for _, y in points)
    if var_x == 0 or var_y == 0:
        raise DegenerateSeriesError(
            "zero variance in x or y; correlation undefined",
            var_x=var_x,
            var_y=var_y,
        )
    # square roots taken separately: the product can under/overflow for
    # extreme variances even when both are nonzero
    r = cov / (math.sqrt(var_x) * math.sqrt(var_y))
    return max(-1.0, min(1.0, r))


def system_correlation(
    pairs: Sequence[tuple[float, float]], variant: str = "rouge-1"
) -> float:
    """Pearson over one (rouge_value, polytope_score) point per system."""
    if len(pairs) < 2:
        raise TooFewPointsError(
            f"need at least 2 systems for {variant}, got {len(pairs)}", n=len(pairs)
        )
    return pearson(PairedSeries.of(pairs, label_x=variant, label_y="polytope"))


class AspectFilter(str, Enum):
    ALL = "all"
    ACCURACY_ONLY = "accuracy"
    FLUENCY_ONLY = "fluency"


@dataclass(frozen=True)
class InstancePoint:
    """One (sample, system) output: its metric value, score and error aspects."""

    rouge_value: float
    polytope_score: float
    aspects: frozenset[Aspect] = frozenset()


def _keep(point: InstancePoint, filt: AspectFilter) -> bool:
    if filt is AspectFilter.ALL:
        return True
    wanted = Aspect.ACCURACY if filt is AspectFilter.ACCURACY_ONLY else Aspect.FLUENCY
    # "only makes <aspect> errors": at least one error, all of that aspect
    return point.aspects == frozenset({wanted})


def instance_correlation(
    points: Iterable[InstancePoint], filt: AspectFilter = AspectFilter.ALL
) -> float:
    kept = [p for p in points if _keep(p, filt)]
    if not kept:
        raise EmptyFilterError(
            f"no instance qualifies under filter {filt.value!r}", filter=filt.value
        )
    return pearson(PairedSeries.of((p.rouge_value, p.polytope_score) for p in kept))


def inter_annotator_agreement(
    scores_by_annotator: Mapping[str, Mapping[str, float]],
) -> float:
    """Mean pairwise Pearson over commonly annotated documents.

    `scores_by_annotator` maps annotator -> {document key -> score}. Pairs
    sharing fewer than 2 documents are skipped; if no pair qualifies the
    overlap is insufficient.
    """
    annotators = sorted(scores_by_annotator)
    if len(annotators) < 2:
        raise InsufficientOverlapError(
            f"need at least 2 annotators, got {len(annotators)}"
        )
    coefficients = []
    for a, b in combinations(annotators, 2):
        common = sorted(set(scores_by_annotator[a]) & set(scores_by_annotator[b]))
        if len(common) < 2:
            continue
        coefficients.append(
            pearson(
                PairedSeries.of(
                    ((scores_by_annotator[a][d], scores_by_annotator[b][d]) for d in common),
                    label_x=a,
                    label_y=b,
                )
            )
        )
    if not coefficients:
        raise InsufficientOverlapError(
            "no annotator pair shares at least 2 documents"
        )
    return sum(coefficients) / len(coefficients)
