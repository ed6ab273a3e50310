import pytest

from polytope_eval import (
    DEFAULT_MATRIX,
    AnnotationSet,
    ErrorAnnotation,
    IssueType,
    Sample,
    Severity,
    SyntacticLabel,
    Target,
    validate_annotation,
)
from polytope_eval.errors import (
    DuplicateAnnotationError,
    InvalidCellError,
    SpanOutOfBoundsError,
    UnknownTargetError,
)


def candidate(sample, **overrides):
    defaults = dict(
        id="a1",
        sample_id=sample.id,
        target=Target.system("sysA"),
        start=0,
        end=5,
        issue_type=IssueType.OMISSION,
        syntactic_label=SyntacticLabel.SUBJECT,
        annotator="ann1",
    )
    defaults.update(overrides)
    return ErrorAnnotation(**defaults)


def test_validate_fills_severity(sample):
    ann = validate_annotation(candidate(sample), sample, DEFAULT_MATRIX)
    assert ann.severity is Severity.CRITICAL


def test_validate_is_idempotent(sample):
    once = validate_annotation(candidate(sample), sample, DEFAULT_MATRIX)
    twice = validate_annotation(once, sample, DEFAULT_MATRIX)
    assert once == twice


def test_na_cell_rejected_with_valid_labels(sample):
    with pytest.raises(InvalidCellError) as excinfo:
        validate_annotation(
            candidate(
                sample,
                issue_type=IssueType.POSITIVE_NEGATIVE_ASPECT,
                syntactic_label=SyntacticLabel.SUBJECT,
            ),
            sample,
            DEFAULT_MATRIX,
        )
    assert excinfo.value.details["valid_labels"] == ["Predicate", "Attribute"]


def test_empty_span_rejected(sample):
    with pytest.raises(SpanOutOfBoundsError):
        validate_annotation(candidate(sample, start=0, end=0), sample, DEFAULT_MATRIX)


def test_span_beyond_text_rejected(sample):
    text_len = len(sample.system_outputs["sysA"])
    with pytest.raises(SpanOutOfBoundsError):
        validate_annotation(
            candidate(sample, start=0, end=text_len + 1), sample, DEFAULT_MATRIX
        )
    # the full text is a valid span
    ann = validate_annotation(
        candidate(sample, start=0, end=text_len), sample, DEFAULT_MATRIX
    )
    assert ann.span == (0, text_len)


def test_unknown_system_rejected(sample):
    with pytest.raises(UnknownTargetError):
        validate_annotation(
            candidate(sample, target=Target.system("nope")), sample, DEFAULT_MATRIX
        )


def test_reference_target_allowed(sample):
    ann = validate_annotation(
        candidate(sample, target=Target.reference(), end=4), sample, DEFAULT_MATRIX
    )
    assert ann.severity is Severity.CRITICAL


def test_every_cell_accepts_iff_not_na(sample, matrix_fixture):
    text_len = len(sample.system_outputs["sysA"])
    accepted = 0
    for issue in IssueType:
        for label in SyntacticLabel:
            cand = candidate(
                sample, issue_type=issue, syntactic_label=label, end=min(5, text_len)
            )
            if matrix_fixture[(issue, label)] is None:
                with pytest.raises(InvalidCellError):
                    validate_annotation(cand, sample, DEFAULT_MATRIX)
            else:
                ann = validate_annotation(cand, sample, DEFAULT_MATRIX)
                assert ann.severity == matrix_fixture[(issue, label)]
                accepted += 1
    assert accepted == 64 - 14


def test_target_keys_round_trip():
    for target in (Target.reference(), Target.system("BART"), Target.system("reference")):
        assert Target.from_key(target.key) == target
    assert Target.reference().key == "reference"
    assert Target.system("BART").key == "system:BART"


def test_annotation_set_rejects_exact_duplicates(sample):
    s = AnnotationSet()
    first = validate_annotation(candidate(sample), sample, DEFAULT_MATRIX)
    s.add(first)
    clone = validate_annotation(candidate(sample, id="a2"), sample, DEFAULT_MATRIX)
    with pytest.raises(DuplicateAnnotationError):
        s.add(clone)
    # same span, different issue type is fine
    other = validate_annotation(
        candidate(sample, id="a3", issue_type=IssueType.ADDITION), sample, DEFAULT_MATRIX
    )
    s.add(other)
    assert len(s) == 2


def test_annotation_set_allows_same_span_by_other_annotator(sample):
    s = AnnotationSet()
    s.add(validate_annotation(candidate(sample), sample, DEFAULT_MATRIX))
    s.add(
        validate_annotation(
            candidate(sample, id="a2", annotator="ann2"), sample, DEFAULT_MATRIX
        )
    )
    assert s.annotators() == ["ann1", "ann2"]


def test_remove_then_readd(sample):
    s = AnnotationSet()
    ann = validate_annotation(candidate(sample), sample, DEFAULT_MATRIX)
    s.add(ann)
    s.remove(ann.id)
    assert len(s) == 0
    s.add(ann)
    assert len(s) == 1


def test_sample_requires_nonempty_source():
    with pytest.raises(ValueError):
        Sample(id="x", source="", reference="r")
