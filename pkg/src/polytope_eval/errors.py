"""Exception types shared across the toolkit, each with a machine-readable code."""

from __future__ import annotations


class PolytopeError(Exception):
    """Base class; `code` is the stable machine-readable identifier."""

    code = "error"

    def __init__(self, message: str, **details):
        super().__init__(message)
        self.message = message
        self.details = details
        # Optional file location, attached by storage replay / CLI paths.
        self.path: str | None = None
        self.line: int | None = None

    def at(self, path: str, line: int | None = None) -> "PolytopeError":
        self.path = path
        self.line = line
        return self

    def location(self) -> str:
        if self.path is None:
            return ""
        return self.path if self.line is None else f"{self.path}:{self.line}"

    def __str__(self) -> str:
        loc = self.location()
        return f"{loc}: {self.message}" if loc else self.message


class SpanOutOfBoundsError(PolytopeError):
    code = "span_out_of_bounds"


class InvalidCellError(PolytopeError):
    """The (issue type, syntactic label) cell is N/A; details carry valid_labels."""

    code = "invalid_cell"


class UnknownTargetError(PolytopeError):
    code = "unknown_target"


class UnknownSampleError(PolytopeError):
    code = "unknown_sample"


class DuplicateAnnotationError(PolytopeError):
    code = "duplicate_annotation"


class AnnotationNotFoundError(PolytopeError):
    code = "not_found"


class ZeroWordCountError(PolytopeError):
    code = "zero_word_count"


class MissingOutputError(PolytopeError):
    code = "missing_output"


class TooFewPointsError(PolytopeError):
    code = "too_few_points"


class DegenerateSeriesError(PolytopeError):
    code = "degenerate_series"


class EmptyFilterError(PolytopeError):
    code = "empty_filter"


class InsufficientOverlapError(PolytopeError):
    code = "insufficient_overlap"


class MissingExternalScoreError(PolytopeError):
    code = "missing_external_score"


class ParseError(PolytopeError):
    code = "parse_error"


class DuplicateIdError(PolytopeError):
    code = "duplicate_id"


class OrphanTombstoneError(PolytopeError):
    code = "orphan_tombstone"


class SeverityMismatchError(PolytopeError):
    """A stored severity disagrees with the matrix-derived one on replay."""

    code = "severity_mismatch"


class UnknownAnnotatorError(PolytopeError):
    code = "unknown_annotator"


class NotAssignedError(PolytopeError):
    code = "not_assigned"


class NotOwnerError(PolytopeError):
    code = "not_owner"
