"""Domain model: samples, annotation targets, error annotations and their validation."""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from datetime import datetime, timezone

from .errors import (
    DuplicateAnnotationError,
    InvalidCellError,
    SpanOutOfBoundsError,
    UnknownTargetError,
)
from .matrix import SeverityMatrix
from .taxonomy import IssueType, Severity, SyntacticLabel

REFERENCE_KEY = "reference"
_SYSTEM_PREFIX = "system:"


@dataclass(frozen=True, order=True)
class Target:
    """What an annotation points at: the reference summary or one system's output."""

    kind: str  # "reference" | "system"
    name: str = ""

    @classmethod
    def reference(cls) -> "Target":
        return cls("reference")

    @classmethod
    def system(cls, name: str) -> "Target":
        if not name:
            raise ValueError("system target needs a name")
        return cls("system", name)

    @property
    def is_reference(self) -> bool:
        return self.kind == "reference"

    @property
    def key(self) -> str:
        """Canonical serialized form: "reference" or "system:<name>"."""
        return REFERENCE_KEY if self.is_reference else _SYSTEM_PREFIX + self.name

    @classmethod
    def from_key(cls, key: str) -> "Target":
        if key == REFERENCE_KEY:
            return cls.reference()
        if key.startswith(_SYSTEM_PREFIX):
            return cls.system(key[len(_SYSTEM_PREFIX):])
        raise ValueError(f"bad target key {key!r}")


@dataclass(frozen=True)
class Sample:
    """One source document with its reference summary and named system outputs."""

    id: str
    source: str
    reference: str
    system_outputs: dict[str, str] = field(default_factory=dict)

    def __post_init__(self):
        if not self.id:
            raise ValueError("sample id must be non-empty")
        if not self.source:
            raise ValueError(f"sample {self.id!r}: source must be non-empty")

    def target_text(self, target: Target) -> str:
        if target.is_reference:
            return self.reference
        try:
            return self.system_outputs[target.name]
        except KeyError:
            raise UnknownTargetError(
                f"sample {self.id!r} has no output for system {target.name!r}",
                sample_id=self.id,
                system=target.name,
            ) from None


def now_iso() -> str:
    return datetime.now(timezone.utc).isoformat(timespec="seconds")


@dataclass(frozen=True)
class ErrorAnnotation:
    """A marked error span; severity is derived by validation, never chosen."""

    id: str
    sample_id: str
    target: Target
    start: int
    end: int
    issue_type: IssueType
    syntactic_label: SyntacticLabel
    annotator: str
    created_at: str = ""
    severity: Severity | None = None

    @property
    def span(self) -> tuple[int, int]:
        return (self.start, self.end)

    def dedup_key(self) -> tuple:
        return (
            self.sample_id,
            self.target.key,
            self.start,
            self.end,
            self.issue_type,
            self.syntactic_label,
            self.annotator,
        )


def validate_annotation(
    ann: ErrorAnnotation, sample: Sample, matrix: SeverityMatrix
) -> ErrorAnnotation:
    """Check a candidate against the sample text and the matrix; fill in severity.

    Raises UnknownTargetError, SpanOutOfBoundsError or InvalidCellError. The
    derived severity is a pure function of (issue_type, syntactic_label), so
    re-validating an accepted annotation returns an equal value.
    """
    if ann.sample_id != sample.id:
        raise UnknownTargetError(
            f"annotation {ann.id!r} references sample {ann.sample_id!r}, "
            f"got sample {sample.id!r}",
            sample_id=ann.sample_id,
        )
    text = sample.target_text(ann.target)
    if not (0 <= ann.start < ann.end <= len(text)):
        raise SpanOutOfBoundsError(
            f"span [{ann.start}, {ann.end}) is not a non-empty interval within "
            f"0..{len(text)} of {ann.target.key}",
            start=ann.start,
            end=ann.end,
            length=len(text),
        )
    severity = matrix.lookup(ann.issue_type, ann.syntactic_label)
    if severity is None:
        valid = [l.value for l in matrix.valid_labels(ann.issue_type)]
        raise InvalidCellError(
            f"({ann.issue_type.value}, {ann.syntactic_label.value}) is not an "
            f"annotatable cell; valid labels for {ann.issue_type.value}: "
            f"{', '.join(valid)}",
            issue_type=ann.issue_type.value,
            syntactic_label=ann.syntactic_label.value,
            valid_labels=valid,
        )
    return replace(ann, severity=severity)


class AnnotationSet:
    """Live annotations, deduplicated on (sample, target, span, issue, label, annotator)."""

    def __init__(self):
        self._by_id: dict[str, ErrorAnnotation] = {}
        self._keys: set[tuple] = set()

    def __len__(self) -> int:
        return len(self._by_id)

    def __iter__(self):
        return iter(self._by_id.values())

    def __contains__(self, annotation_id: str) -> bool:
        return annotation_id in self._by_id

    def get(self, annotation_id: str) -> ErrorAnnotation | None:
        return self._by_id.get(annotation_id)

    def add(self, ann: ErrorAnnotation) -> None:
        if ann.severity is None:
            raise ValueError(f"annotation {ann.id!r} was not validated")
        if ann.id in self._by_id:
            raise DuplicateAnnotationError(
                f"annotation id {ann.id!r} already present", annotation_id=ann.id
            )
        key = ann.dedup_key()
        if key in self._keys:
            raise DuplicateAnnotationError(
                f"identical annotation already present for sample "
                f"{ann.sample_id!r} {ann.target.key} span [{ann.start}, {ann.end}) "
                f"({ann.issue_type.value}, {ann.syntactic_label.value}) "
                f"by {ann.annotator!r}",
                annotation_id=ann.id,
            )
        self._by_id[ann.id] = ann
        self._keys.add(key)

    def remove(self, annotation_id: str) -> ErrorAnnotation:
        ann = self._by_id.pop(annotation_id, None)
        if ann is None:
            from .errors import AnnotationNotFoundError

            raise AnnotationNotFoundError(
                f"no annotation with id {annotation_id!r}", annotation_id=annotation_id
            )
        self._keys.discard(ann.dedup_key())
        return ann

    def for_target(
        self, sample_id: str, target: Target, annotator: str | None = None
    ) -> list[ErrorAnnotation]:
        return [
            a
            for a in self._by_id.values()
            if a.sample_id == sample_id
            and a.target == target
            and (annotator is None or a.annotator == annotator)
        ]

    def annotators(self) -> list[str]:
        return sorted({a.annotator for a in self._by_id.values()})

    def annotated_targets(self, annotator: str | None = None) -> set[tuple[str, str]]:
        """(sample_id, target key) pairs carrying at least one live annotation."""
        return {
            (a.sample_id, a.target.key)
            for a in self._by_id.values()
            if annotator is None or a.annotator == annotator
        }
