"""Quality scoring: per-sample deduction score and system-level aggregation.

A summary's score is (1 - weighted_deduction / word_count) * 100, where each
error deducts its severity weight (Minor 1, Major 5, Critical 10). The score
is deliberately not clamped at 0: it stays linear in the error counts.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable

from .errors import MissingOutputError, ZeroWordCountError
from .model import ErrorAnnotation, Sample, Target
from .taxonomy import IssueType, Severity

# Row order for reports: accuracy issues first, then the fluency block.
REPORT_ISSUE_ORDER = (
    IssueType.ADDITION,
    IssueType.OMISSION,
    IssueType.INACCURACY_INTRINSIC,
    IssueType.INACCURACY_EXTRINSIC,
    IssueType.POSITIVE_NEGATIVE_ASPECT,
    IssueType.WORD_ORDER,
    IssueType.WORD_FORM,
    IssueType.DUPLICATION,
)

REPORT_SEVERITY_ORDER = (Severity.CRITICAL, Severity.MAJOR, Severity.MINOR)


def word_count(text: str) -> int:
    """Whitespace-delimited token count; empty or blank text counts 0."""
    return len(text.split())


@dataclass(frozen=True)
class SampleScore:
    sample_id: str
    target: Target
    word_count: int
    counts: dict[Severity, int]
    weighted_deduction: int
    score: float


def score_sample(
    annotations: Iterable[ErrorAnnotation],
    words: int,
    *,
    sample_id: str = "",
    target: Target | None = None,
) -> SampleScore:
    """Score one (sample, target) slice of validated annotations."""
    if words <= 0:
        raise ZeroWordCountError(
            "word_count must be >= 1; the score formula is undefined for "
            "an empty summary",
            sample_id=sample_id,
        )
    counts = {s: 0 for s in Severity}
    for ann in annotations:
        if ann.severity is None:
            raise ValueError(f"annotation {ann.id!r} was not validated")
        counts[ann.severity] += 1
        if sample_id and ann.sample_id != sample_id:
            raise ValueError(
                f"annotation {ann.id!r} belongs to sample {ann.sample_id!r}, "
                f"not {sample_id!r}"
            )
    weighted = sum(count * severity.weight for severity, count in counts.items())
    score = (1 - weighted / words) * 100
    return SampleScore(
        sample_id=sample_id,
        target=target if target is not None else Target.reference(),
        word_count=words,
        counts=counts,
        weighted_deduction=weighted,
        score=score,
    )


@dataclass
class SystemReport:
    """Tallies and scores for one target across a corpus (Table-style report)."""

    system: str
    target: Target
    issue_counts: dict[IssueType, int]
    severity_counts: dict[Severity, int]
    total_errors: int
    total_words: int
    errors_per_1k_words: float
    polytope_score_macro: float
    polytope_score_micro: float
    sample_scores: list[SampleScore] = field(default_factory=list)

    def score(self, aggregation: str = "macro") -> float:
        if aggregation == "macro":
            return self.polytope_score_macro
        if aggregation == "micro":
            return self.polytope_score_micro
        raise ValueError(f"unknown aggregation {aggregation!r}")


def build_target_report(
    corpus, annotations: Iterable[ErrorAnnotation], target: Target
) -> SystemReport:
    """Tally all corpus samples addressable by `target`.

    Samples without any annotation contribute a 100 score to the macro mean.
    An annotated sample whose output text is missing raises MissingOutput.
    """
    per_sample: dict[str, list[ErrorAnnotation]] = {}
    for ann in annotations:
        if ann.target == target:
            per_sample.setdefault(ann.sample_id, []).append(ann)

    issue_counts = {i: 0 for i in IssueType}
    severity_counts = {s: 0 for s in Severity}
    sample_scores: list[SampleScore] = []
    total_words = 0
    total_weighted = 0

    for sample in corpus:
        anns = per_sample.pop(sample.id, [])
        if not target.is_reference and target.name not in sample.system_outputs:
            if anns:
                raise MissingOutputError(
                    f"sample {sample.id!r} has annotations for {target.key} "
                    "but no output text",
                    sample_id=sample.id,
                    system=target.name,
                )
            continue
        text = sample.target_text(target)
        words = word_count(text)
        if words == 0:
            raise ZeroWordCountError(
                f"sample {sample.id!r}: {target.key} output has no words",
                sample_id=sample.id,
            )
        s = score_sample(anns, words, sample_id=sample.id, target=target)
        sample_scores.append(s)
        total_words += words
        total_weighted += s.weighted_deduction
        for ann in anns:
            issue_counts[ann.issue_type] += 1
            severity_counts[ann.severity] += 1

    if per_sample:
        missing = sorted(per_sample)
        raise MissingOutputError(
            f"annotations reference samples absent from the corpus: {missing}",
            sample_ids=missing,
        )

    total_errors = sum(issue_counts.values())
    if sample_scores:
        macro = sum(s.score for s in sample_scores) / len(sample_scores)
        micro = (1 - total_weighted / total_words) * 100
        per_1k = 1000 * total_errors / total_words
    else:
        macro = micro = 100.0
        per_1k = 0.0

    return SystemReport(
        system=target.name if not target.is_reference else "reference",
        target=target,
        issue_counts=issue_counts,
        severity_counts=severity_counts,
        total_errors=total_errors,
        total_words=total_words,
        errors_per_1k_words=per_1k,
        polytope_score_macro=macro,
        polytope_score_micro=micro,
        sample_scores=sample_scores,
    )


def build_system_report(
    corpus, annotations: Iterable[ErrorAnnotation], system: str
) -> SystemReport:
    return build_target_report(corpus, annotations, Target.system(system))
