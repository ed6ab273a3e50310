"""The fixed severity matrix: (issue type, syntactic label) -> severity or N/A.

Shipped as data. A cell of None means the combination is not annotatable
(N/A); 14 of the 64 cells are N/A.
"""

from __future__ import annotations

from .taxonomy import IssueType, Severity, SyntacticLabel

_MINOR = Severity.MINOR
_MAJOR = Severity.MAJOR
_CRIT = Severity.CRITICAL

# Column order here: Subject, Predicate, Object, NumberTime, PlaceName,
# Attribute, FunctionWord, WholeSentence.
_ROWS: dict[IssueType, tuple[Severity | None, ...]] = {
    IssueType.ADDITION: (_CRIT, _CRIT, _CRIT, _MAJOR, _MAJOR, _MAJOR, _MINOR, _MAJOR),
    IssueType.OMISSION: (_CRIT, _CRIT, _CRIT, _CRIT, _MAJOR, _MAJOR, _MINOR, _CRIT),
    IssueType.INACCURACY_INTRINSIC: (_CRIT, _CRIT, _CRIT, _CRIT, _CRIT, _MAJOR, _MINOR, None),
    IssueType.INACCURACY_EXTRINSIC: (_CRIT, _CRIT, _CRIT, _CRIT, _CRIT, _CRIT, _MINOR, None),
    IssueType.POSITIVE_NEGATIVE_ASPECT: (None, _CRIT, None, None, None, _CRIT, None, None),
    IssueType.WORD_ORDER: (None, _MAJOR, None, None, None, _MAJOR, _MINOR, None),
    IssueType.WORD_FORM: (_MINOR, _MINOR, _MINOR, _MINOR, _MINOR, _MINOR, _MINOR, None),
    IssueType.DUPLICATION: (_MAJOR, _MAJOR, _MAJOR, _MAJOR, _MAJOR, _MAJOR, _MINOR, _MAJOR),
}

_LABEL_ORDER = (
    SyntacticLabel.SUBJECT,
    SyntacticLabel.PREDICATE,
    SyntacticLabel.OBJECT,
    SyntacticLabel.NUMBER_TIME,
    SyntacticLabel.PLACE_NAME,
    SyntacticLabel.ATTRIBUTE,
    SyntacticLabel.FUNCTION_WORD,
    SyntacticLabel.WHOLE_SENTENCE,
)


class SeverityMatrix:
    """Immutable total mapping over all 64 (issue, label) cells."""

    def __init__(self, cells: dict[tuple[IssueType, SyntacticLabel], Severity | None]):
        missing = {
            (i, l) for i in IssueType for l in SyntacticLabel
        } - set(cells)
        if missing:
            raise ValueError(f"matrix is not total, missing {sorted(missing)}")
        self._cells = dict(cells)

    def lookup(self, issue: IssueType, label: SyntacticLabel) -> Severity | None:
        return self._cells[(issue, label)]

    def valid_labels(self, issue: IssueType) -> list[SyntacticLabel]:
        """Labels whose cell for `issue` is not N/A, in canonical label order."""
        return [l for l in _LABEL_ORDER if self._cells[(issue, l)] is not None]

    def cells(self) -> dict[tuple[IssueType, SyntacticLabel], Severity | None]:
        return dict(self._cells)


def _build_default() -> SeverityMatrix:
    cells: dict[tuple[IssueType, SyntacticLabel], Severity | None] = {}
    for issue, row in _ROWS.items():
        for label, severity in zip(_LABEL_ORDER, row):
            cells[(issue, label)] = severity
    return SeverityMatrix(cells)


DEFAULT_MATRIX = _build_default()


def lookup_severity(
    issue: IssueType, label: SyntacticLabel, matrix: SeverityMatrix = DEFAULT_MATRIX
) -> Severity | None:
    """Return the matrix cell for (issue, label); None means N/A."""
    return matrix.lookup(issue, label)
