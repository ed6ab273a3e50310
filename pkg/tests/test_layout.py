import math

import pytest

from polytope_eval import (
    Corpus,
    ExternalScores,
    LexicalScorer,
    Sample,
    position_distribution,
    sentence_similarity,
)
from polytope_eval.errors import MissingExternalScoreError, MissingOutputError
from polytope_eval.layout import EPSILON


def lead_source(n=10):
    return " ".join(f"Source sentence number {i} stands alone here." for i in range(1, n + 1))


def lead_summary(source, k=3):
    return " ".join(source.split(". ")[:k]) + "."


def make_corpus(num_samples=5, system="sys"):
    samples = []
    for i in range(num_samples):
        # sentences are distinct across positions but shared across samples
        sentences = [
            f"Sample topic {i} point {j} with distinct content token{j}." for j in range(1, 11)
        ]
        source = " ".join(sentences)
        summary = " ".join(sentences[:3])
        samples.append(
            Sample(
                id=f"s{i}",
                source=source,
                reference="unused reference.",
                system_outputs={system: summary},
            )
        )
    return Corpus(samples)


def test_sentence_similarity_identity():
    assert sentence_similarity("the cat sat", "the cat sat") == pytest.approx(1.0)


def test_sentence_similarity_disjoint():
    assert sentence_similarity("alpha beta", "gamma delta") == pytest.approx(0.0)


def test_sentence_similarity_matches_unigram_f1_oracle():
    value = sentence_similarity("the cat sat", "the cat was sat on the mat")
    assert value == pytest.approx(0.6)


def test_lead3_mass_on_first_three_positions():
    corpus = make_corpus()
    dist = position_distribution(corpus, "sys")
    assert dist.total == 15  # 5 samples x 3 summary sentences
    assert dist.coverage[:3] == pytest.approx([1 / 3, 1 / 3, 1 / 3], abs=1e-9)
    assert all(c == pytest.approx(0.0, abs=1e-9) for c in dist.coverage[3:])
    assert all(math.isfinite(v) for v in dist.neg_log)
    assert len(dist.labels) == 10


def test_single_sentence_at_position_five():
    sentences = [f"Topic {j} body {j} text token{j}." for j in range(1, 11)]
    sample = Sample(
        id="s1",
        source=" ".join(sentences),
        reference="r.",
        system_outputs={"sys": sentences[4]},
    )
    dist = position_distribution(Corpus([sample]), "sys")
    assert dist.counts[4] == 1
    assert dist.coverage[4] == pytest.approx(1.0)
    assert sum(dist.counts) == 1


def test_tie_breaks_to_earliest_position():
    # positions 2 and 7 are equally similar to the summary sentence
    source_sentences = [
        "Completely unrelated filler one.",
        "Alpha beta gamma.",
        "Unrelated filler two without overlap.",
        "More filler text three here.",
        "Additional filler four occupies space.",
        "Filler number five keeps going.",
        "Alpha beta delta.",
        "Final filler eight closes out.",
    ]
    sample = Sample(
        id="s1",
        source=" ".join(source_sentences),
        reference="r.",
        system_outputs={"sys": "Alpha beta."},
    )
    scorer = LexicalScorer()
    sim2 = sentence_similarity("Alpha beta.", source_sentences[1], scorer)
    sim7 = sentence_similarity("Alpha beta.", source_sentences[6], scorer)
    assert sim2 == pytest.approx(sim7)
    dist = position_distribution(Corpus([sample]), "sys")
    assert dist.counts[1] == 1
    assert dist.counts[6] == 0


def test_histogram_total_counts_summary_sentences():
    corpus = make_corpus(num_samples=3)
    dist = position_distribution(corpus, "sys")
    assert dist.total == sum(dist.counts) == 9


def test_coverage_sums_to_one():
    dist = position_distribution(make_corpus(), "sys")
    assert sum(dist.coverage) == pytest.approx(1.0, abs=1e-9)


def test_neg_log_strictly_decreasing_in_coverage():
    dist = position_distribution(make_corpus(), "sys")
    pairs = sorted(zip(dist.coverage, dist.neg_log))
    for (c1, n1), (c2, n2) in zip(pairs, pairs[1:]):
        if c2 > c1:
            assert n2 < n1
    assert dist.neg_log[-1] == pytest.approx(-math.log(EPSILON))


def test_empty_summary_skipped_with_warning_count():
    sample = Sample(
        id="s1",
        source="One sentence here. Another sentence there.",
        reference="r.",
        system_outputs={"sys": "   "},
    )
    dist = position_distribution(Corpus([sample]), "sys")
    assert dist.skipped_empty == 1
    assert dist.total == 0


def test_missing_output_raises():
    corpus = make_corpus()
    with pytest.raises(MissingOutputError):
        position_distribution(corpus, "nope")


def test_position_cap_pools_tail():
    sentences = [f"Topic {j} body {j} text token{j}." for j in range(1, 8)]
    sample = Sample(
        id="s1",
        source=" ".join(sentences),
        reference="r.",
        system_outputs={"sys": sentences[6]},
    )
    dist = position_distribution(Corpus([sample]), "sys", cap=5)
    assert dist.labels[-1] == ">5"
    assert dist.counts[-1] == 1
    assert len(dist.labels) == 6


def test_external_scores_override_lexical():
    sentences = [f"Topic {j} body {j} text token{j}." for j in range(1, 5)]
    sample = Sample(
        id="s1",
        source=" ".join(sentences),
        reference="r.",
        system_outputs={"sys": "An opaque summary sentence."},
    )
    table = ExternalScores.from_rows(
        [("s1:1", 1, 0.1), ("s1:1", 2, 0.9), ("s1:1", 3, 0.2), ("s1:1", 4, 0.2)]
    )
    dist = position_distribution(Corpus([sample]), "sys", scorer=table)
    assert dist.counts[1] == 1


def test_external_scores_missing_entry():
    table = ExternalScores.from_rows([("s1:1", 1, 0.5)])
    with pytest.raises(MissingExternalScoreError):
        table.score("s1:2", "text", 1, "src")


def test_permutation_covariance():
    sentences = [f"Distinct topic {j} tokens token{j} extra{j}." for j in range(1, 6)]
    summary = sentences[2]
    s1 = Sample(id="a", source=" ".join(sentences), reference="r.", system_outputs={"sys": summary})
    permuted = [sentences[3], sentences[2], sentences[0], sentences[4], sentences[1]]
    s2 = Sample(id="b", source=" ".join(permuted), reference="r.", system_outputs={"sys": summary})
    d1 = position_distribution(Corpus([s1]), "sys")
    d2 = position_distribution(Corpus([s2]), "sys")
    assert d1.counts[2] == 1  # original position 3
    assert d2.counts[1] == 1  # permuted to position 2
