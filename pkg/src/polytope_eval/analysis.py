"""Cross-module assembly: correlation tables and agreement inputs from a corpus."""

from __future__ import annotations

from dataclasses import dataclass

from .model import AnnotationSet, Target
from .rouge import RougeConfig, RougeScores, score_system
from .scoring import build_target_report, score_sample, word_count
from .stats import (
    AspectFilter,
    InstancePoint,
    inter_annotator_agreement,
    instance_correlation,
    system_correlation,
)

ROUGE_VARIANTS = ("rouge-1", "rouge-2", "rouge-l")


@dataclass(frozen=True)
class CorrelationRow:
    level: str  # "instance" | "system"
    label: str  # "PolyTope", "Accuracy", "Fluency", "PolyTope (ROUGE-P)"
    values: dict[str, float | None]  # variant -> r (None when not computable)


@dataclass(frozen=True)
class CorrelationTable:
    rows: tuple[CorrelationRow, ...]


def _collect_points(
    corpus, annotations: AnnotationSet, systems: list[str], config: RougeConfig
) -> tuple[dict[str, list[InstancePoint]], dict[str, list[tuple[float, float]]], dict[str, list[InstancePoint]], dict[str, list[tuple[float, float]]]]:
    instance_f1: dict[str, list[InstancePoint]] = {v: [] for v in ROUGE_VARIANTS}
    instance_p: dict[str, list[InstancePoint]] = {v: [] for v in ROUGE_VARIANTS}
    system_f1: dict[str, list[tuple[float, float]]] = {v: [] for v in ROUGE_VARIANTS}
    system_p: dict[str, list[tuple[float, float]]] = {v: [] for v in ROUGE_VARIANTS}
    for system in systems:
        target = Target.system(system)
        report = build_target_report(corpus, annotations, target)
        scores_by_sample = {s.sample_id: s.score for s in report.sample_scores}
        per_sample, mean = score_system(corpus, system, config)
        rouge_by_sample: dict[str, RougeScores] = dict(per_sample)
        for sample in corpus:
            if sample.id not in scores_by_sample:
                continue
            aspects = frozenset(
                a.issue_type.aspect
                for a in annotations.for_target(sample.id, target)
            )
            polytope = scores_by_sample[sample.id]
            rouge_scores = rouge_by_sample[sample.id]
            for variant in ROUGE_VARIANTS:
                metric = rouge_scores.get(variant)
                instance_f1[variant].append(
                    InstancePoint(metric.f1, polytope, aspects)
                )
                instance_p[variant].append(
                    InstancePoint(metric.precision, polytope, aspects)
                )
        for variant in ROUGE_VARIANTS:
            metric = mean.get(variant)
            system_f1[variant].append((metric.f1, report.polytope_score_macro))
            system_p[variant].append((metric.precision, report.polytope_score_macro))
    return instance_f1, system_f1, instance_p, system_p


def _try(compute) -> float | None:
    from .errors import PolytopeError

    try:
        return compute()
    except PolytopeError:
        return None


def correlation_table(
    corpus,
    annotations: AnnotationSet,
    systems: list[str] | None = None,
    config: RougeConfig = RougeConfig(),
) -> CorrelationTable:
    """The correlation report: instance rows (all / accuracy-only /
    fluency-only, ROUGE F1), the system row, and precision-based rows."""
    if systems is None:
        systems = corpus.system_names()
    instance_f1, system_f1, instance_p, system_p = _collect_points(
        corpus, annotations, systems, config
    )
    rows = [
        CorrelationRow(
            "instance",
            "PolyTope",
            {
                v: _try(lambda v=v: instance_correlation(instance_f1[v]))
                for v in ROUGE_VARIANTS
            },
        ),
        CorrelationRow(
            "instance",
            "Accuracy",
            {
                v: _try(
                    lambda v=v: instance_correlation(
                        instance_f1[v], AspectFilter.ACCURACY_ONLY
                    )
                )
                for v in ROUGE_VARIANTS
            },
        ),
        CorrelationRow(
            "instance",
            "Fluency",
            {
                v: _try(
                    lambda v=v: instance_correlation(
                        instance_f1[v], AspectFilter.FLUENCY_ONLY
                    )
                )
                for v in ROUGE_VARIANTS
            },
        ),
        CorrelationRow(
            "system",
            "PolyTope",
            {
                v: _try(lambda v=v: system_correlation(system_f1[v], v))
                for v in ROUGE_VARIANTS
            },
        ),
        CorrelationRow(
            "instance",
            "PolyTope (ROUGE-P)",
            {
                v: _try(lambda v=v: instance_correlation(instance_p[v]))
                for v in ROUGE_VARIANTS
            },
        ),
        CorrelationRow(
            "system",
            "PolyTope (ROUGE-P)",
            {
                v: _try(lambda v=v: system_correlation(system_p[v], v))
                for v in ROUGE_VARIANTS
            },
        ),
    ]
    return CorrelationTable(tuple(rows))


def agreement_scores(
    corpus, annotations: AnnotationSet
) -> dict[str, dict[str, float]]:
    """Per-annotator document scores: annotator -> {(sample:target key) -> score}."""
    scores: dict[str, dict[str, float]] = {}
    for annotator in annotations.annotators():
        docs: dict[str, float] = {}
        for sample_id, target_key in sorted(annotations.annotated_targets(annotator)):
            sample = corpus.get(sample_id)
            if sample is None:
                continue
            target = Target.from_key(target_key)
            words = word_count(sample.target_text(target))
            anns = annotations.for_target(sample_id, target, annotator)
            docs[f"{sample_id}/{target_key}"] = score_sample(
                anns, words, sample_id=sample_id, target=target
            ).score
        scores[annotator] = docs
    return scores


def agreement(corpus, annotations: AnnotationSet) -> float:
    return inter_annotator_agreement(agreement_scores(corpus, annotations))


def format_correlation_table(table: CorrelationTable, precision: int = 2) -> str:
    """Fixed-width text rendering with one row per (level, label)."""
    headers = ["level", "label", *ROUGE_VARIANTS]
    body = []
    for row in table.rows:
        cells = [row.level, row.label]
        for variant in ROUGE_VARIANTS:
            value = row.values.get(variant)
            cells.append("n/a" if value is None else f"{value:.{precision}f}")
        body.append(cells)
    widths = [
        max(len(headers[i]), *(len(r[i]) for r in body)) for i in range(len(headers))
    ]
    lines = ["  ".join(h.ljust(w) for h, w in zip(headers, widths)).rstrip()]
    for cells in body:
        lines.append("  ".join(c.ljust(w) for c, w in zip(cells, widths)).rstrip())
    return "\n".join(lines) + "\n"
