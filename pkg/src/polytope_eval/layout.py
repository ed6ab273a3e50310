"""Layout-bias analysis: which source-sentence positions feed a system's summaries.

Every summary sentence is assigned to the most similar source sentence (ties
break to the earliest position); the position histogram is normalized to a
coverage distribution and reported with its negative log.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Protocol

from .errors import MissingExternalScoreError, MissingOutputError
from .rouge import RougeConfig, rouge_n
from .sentences import Sentence, split_sentences

__all__ = [
    "split_sentences",
    "Sentence",
    "sentence_similarity",
    "LexicalScorer",
    "ExternalScores",
    "PositionDistribution",
    "position_distribution",
]

# Unvisited positions get -ln(0 + EPSILON); keeps every bin finite.
EPSILON = 1e-6
DEFAULT_POSITION_CAP = 50

_LEXICAL_CONFIG = RougeConfig(use_stemming=False)


class SimilarityScorer(Protocol):
    def score(
        self, summary_sentence_id: str, summary_text: str, position: int, source_text: str
    ) -> float: ...


class LexicalScorer:
    """Unigram-overlap F1 on lowercased tokens, no stemming."""

    def score(
        self, summary_sentence_id: str, summary_text: str, position: int, source_text: str
    ) -> float:
        return rouge_n(summary_text, source_text, 1, _LEXICAL_CONFIG).f1


class ExternalScores:
    """Preloaded (summary-sentence-id, source-position) -> similarity table.

    Summary sentence ids are "<sample_id>:<sentence_index>" with a 1-based
    index into the system's summary sentences.
    """

    def __init__(self, table: dict[tuple[str, int], float]):
        self._table = dict(table)

    @classmethod
    def from_rows(cls, rows) -> "ExternalScores":
        return cls({(str(sid), int(pos)): float(score) for sid, pos, score in rows})

    def score(
        self, summary_sentence_id: str, summary_text: str, position: int, source_text: str
    ) -> float:
        try:
            return self._table[(summary_sentence_id, position)]
        except KeyError:
            raise MissingExternalScoreError(
                f"no external score for summary sentence {summary_sentence_id!r} "
                f"at source position {position}",
                summary_sentence_id=summary_sentence_id,
                position=position,
            ) from None


def sentence_similarity(
    a: str,
    b: str,
    scorer: SimilarityScorer | None = None,
    *,
    summary_sentence_id: str = "",
    source_position: int = 0,
) -> float:
    """Similarity of a summary sentence `a` to a source sentence `b` in [0, 1]."""
    if scorer is None:
        scorer = LexicalScorer()
    return scorer.score(summary_sentence_id, a, source_position, b)


@dataclass
class PositionDistribution:
    system: str
    labels: list[str]  # "1".."N", plus ">N" when the cap pooled a tail
    counts: list[int]
    coverage: list[float]
    neg_log: list[float]
    total: int
    skipped_empty: int = 0
    cap: int = DEFAULT_POSITION_CAP

    def rows(self) -> list[tuple[str, int, float, float]]:
        return list(zip(self.labels, self.counts, self.coverage, self.neg_log))


def _finalize(
    system: str, histogram: list[int], tail: int, total: int, skipped: int, cap: int
) -> PositionDistribution:
    labels = [str(i + 1) for i in range(len(histogram))]
    counts = list(histogram)
    if tail:
        labels.append(f">{cap}")
        counts.append(tail)
    if total > 0:
        coverage = [c / total for c in counts]
    else:
        coverage = [0.0 for _ in counts]
    neg_log = [-math.log(c + EPSILON) for c in coverage]
    return PositionDistribution(
        system=system,
        labels=labels,
        counts=counts,
        coverage=coverage,
        neg_log=neg_log,
        total=total,
        skipped_empty=skipped,
        cap=cap,
    )


def position_distribution(
    corpus,
    system: str,
    scorer: SimilarityScorer | None = None,
    cap: int = DEFAULT_POSITION_CAP,
) -> PositionDistribution:
    """Histogram of best-matching source positions over a system's summaries."""
    if scorer is None:
        scorer = LexicalScorer()
    histogram: list[int] = []
    tail = 0
    total = 0
    skipped = 0
    for sample in corpus:
        if system not in sample.system_outputs:
            raise MissingOutputError(
                f"sample {sample.id!r} has no output for system {system!r}",
                sample_id=sample.id,
                system=system,
            )
        source_sents = split_sentences(sample.source)
        if not source_sents:
            continue
        capped_len = min(len(source_sents), cap)
        if capped_len > len(histogram):
            histogram.extend([0] * (capped_len - len(histogram)))
        summary_sents = split_sentences(sample.system_outputs[system])
        if not summary_sents:
            skipped += 1
            continue
        for sent in summary_sents:
            sid = f"{sample.id}:{sent.position}"
            best_position = 0
            best_score = -1.0
            for src in source_sents:
                score = scorer.score(sid, sent.text, src.position, src.text)
                if score > best_score:  # strict: ties keep the earliest position
                    best_score = score
                    best_position = src.position
            total += 1
            if best_position > cap:
                tail += 1
            else:
                histogram[best_position - 1] += 1
    return _finalize(system, histogram, tail, total, skipped, cap)
