"""ROUGE-1/2 (clipped n-gram overlap) and ROUGE-L (longest common subsequence).

Tokenization is frozen for reproducibility: lowercase, split on
non-alphanumerics, optional stopword removal, then optional Porter stemming.
Scores are exact fractions of these token sequences, nothing resampled.
"""

from __future__ import annotations

import re
from collections import Counter
from dataclasses import dataclass
from enum import Enum
from typing import Iterable

from ._stopwords import STOPWORDS
from .errors import MissingOutputError
from .porter import stem
from .sentences import split_sentences

_TOKEN = re.compile(r"[a-z0-9]+")


class LcsMode(str, Enum):
    FLAT_SEQUENCE = "flat"
    SENTENCE_UNION = "union"


@dataclass(frozen=True)
class RougeConfig:
    use_stemming: bool = True
    remove_stopwords: bool = False
    lcs_mode: LcsMode = LcsMode.FLAT_SEQUENCE


DEFAULT_CONFIG = RougeConfig()


def tokenize(text: str, config: RougeConfig = DEFAULT_CONFIG) -> list[str]:
    tokens = _TOKEN.findall(text.lower())
    if config.remove_stopwords:
        tokens = [t for t in tokens if t not in STOPWORDS]
    if config.use_stemming:
        tokens = [stem(t) for t in tokens]
    return tokens


@dataclass(frozen=True)
class MetricScore:
    precision: float
    recall: float
    f1: float

    @classmethod
    def from_fractions(cls, precision: float, recall: float) -> "MetricScore":
        denom = precision + recall
        f1 = 2 * precision * recall / denom if denom > 0 else 0.0
        return cls(precision, recall, f1)


_ZERO = MetricScore(0.0, 0.0, 0.0)


@dataclass(frozen=True)
class RougeScores:
    rouge_1: MetricScore
    rouge_2: MetricScore
    rouge_l: MetricScore

    def get(self, variant: str) -> MetricScore:
        return {"rouge-1": self.rouge_1, "rouge-2": self.rouge_2, "rouge-l": self.rouge_l}[
            variant
        ]


VARIANTS = ("rouge-1", "rouge-2", "rouge-l")


def _ngram_counts(tokens: list[str], n: int) -> Counter:
    return Counter(tuple(tokens[i : i + n]) for i in range(len(tokens) - n + 1))


def rouge_n(
    candidate: str, reference: str, n: int, config: RougeConfig = DEFAULT_CONFIG
) -> MetricScore:
    """Clipped n-gram overlap; a side with zero n-grams scores 0 everywhere."""
    if n < 1:
        raise ValueError("n must be >= 1")
    cand = _ngram_counts(tokenize(candidate, config), n)
    ref = _ngram_counts(tokenize(reference, config), n)
    cand_total = sum(cand.values())
    ref_total = sum(ref.values())
    if cand_total == 0 or ref_total == 0:
        return _ZERO
    overlap = sum(min(count, ref[gram]) for gram, count in cand.items())
    return MetricScore.from_fractions(overlap / cand_total, overlap / ref_total)


def lcs_length(a: list[str], b: list[str]) -> int:
    """Longest common subsequence length, O(len(a)*len(b))."""
    if not a or not b:
        return 0
    prev = [0] * (len(b) + 1)
    for x in a:
        curr = [0]
        for j, y in enumerate(b, 1):
            if x == y:
                curr.append(prev[j - 1] + 1)
            else:
                curr.append(max(prev[j], curr[j - 1]))
        prev = curr
    return prev[-1]


def _lcs_match_positions(ref: list[str], cand: list[str]) -> set[int]:
    """Positions in `ref` participating in one canonical LCS against `cand`."""
    rows = len(ref)
    cols = len(cand)
    table = [[0] * (cols + 1) for _ in range(rows + 1)]
    for i in range(1, rows + 1):
        for j in range(1, cols + 1):
            if ref[i - 1] == cand[j - 1]:
                table[i][j] = table[i - 1][j - 1] + 1
            else:
                table[i][j] = max(table[i - 1][j], table[i][j - 1])
    positions: set[int] = set()
    i, j = rows, cols
    while i > 0 and j > 0:
        if ref[i - 1] == cand[j - 1] and table[i][j] == table[i - 1][j - 1] + 1:
            positions.add(i - 1)
            i -= 1
            j -= 1
        elif table[i - 1][j] >= table[i][j - 1]:
            i -= 1
        else:
            j -= 1
    return positions


def _flat_lcs_score(cand_tokens: list[str], ref_tokens: list[str]) -> MetricScore:
    if not cand_tokens or not ref_tokens:
        return _ZERO
    lcs = lcs_length(cand_tokens, ref_tokens)
    return MetricScore.from_fractions(lcs / len(cand_tokens), lcs / len(ref_tokens))


def _union_lcs_score(
    candidate: str, reference: str, config: RougeConfig
) -> MetricScore:
    cand_sents = [tokenize(s.text, config) for s in split_sentences(candidate)]
    ref_sents = [tokenize(s.text, config) for s in split_sentences(reference)]
    cand_sents = [s for s in cand_sents if s]
    ref_sents = [s for s in ref_sents if s]
    cand_total = sum(len(s) for s in cand_sents)
    ref_total = sum(len(s) for s in ref_sents)
    if cand_total == 0 or ref_total == 0:
        return _ZERO
    # Union of LCS matches per reference sentence, hits clipped by token
    # budgets so precision and recall stay within [0, 1].
    cand_budget = Counter(t for s in cand_sents for t in s)
    ref_budget = Counter(t for s in ref_sents for t in s)
    hits = 0
    for ref_sent in ref_sents:
        union: set[int] = set()
        for cand_sent in cand_sents:
            union |= _lcs_match_positions(ref_sent, cand_sent)
        for pos in sorted(union):
            token = ref_sent[pos]
            if cand_budget[token] > 0 and ref_budget[token] > 0:
                hits += 1
                cand_budget[token] -= 1
                ref_budget[token] -= 1
    return MetricScore.from_fractions(hits / cand_total, hits / ref_total)


def rouge_l(
    candidate: str, reference: str, config: RougeConfig = DEFAULT_CONFIG
) -> MetricScore:
    if config.lcs_mode is LcsMode.SENTENCE_UNION:
        return _union_lcs_score(candidate, reference, config)
    return _flat_lcs_score(tokenize(candidate, config), tokenize(reference, config))


def score_pair(
    candidate: str, reference: str, config: RougeConfig = DEFAULT_CONFIG
) -> RougeScores:
    return RougeScores(
        rouge_1=rouge_n(candidate, reference, 1, config),
        rouge_2=rouge_n(candidate, reference, 2, config),
        rouge_l=rouge_l(candidate, reference, config),
    )


def _mean(scores: Iterable[MetricScore]) -> MetricScore:
    scores = list(scores)
    if not scores:
        return _ZERO
    n = len(scores)
    return MetricScore(
        sum(s.precision for s in scores) / n,
        sum(s.recall for s in scores) / n,
        sum(s.f1 for s in scores) / n,
    )


def score_system(
    corpus, system: str, config: RougeConfig = DEFAULT_CONFIG
) -> tuple[list[tuple[str, RougeScores]], RougeScores]:
    """Per-sample scores of one system against the references, plus the mean."""
    per_sample: list[tuple[str, RougeScores]] = []
    for sample in corpus:
        if system not in sample.system_outputs:
            raise MissingOutputError(
                f"sample {sample.id!r} has no output for system {system!r}",
                sample_id=sample.id,
                system=system,
            )
        per_sample.append(
            (sample.id, score_pair(sample.system_outputs[system], sample.reference, config))
        )
    mean = RougeScores(
        rouge_1=_mean(s.rouge_1 for _, s in per_sample),
        rouge_2=_mean(s.rouge_2 for _, s in per_sample),
        rouge_l=_mean(s.rouge_l for _, s in per_sample),
    )
    return per_sample, mean
