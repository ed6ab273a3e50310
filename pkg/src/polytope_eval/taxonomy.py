"""Error taxonomy: issue types, syntactic labels and severity levels.

The enum values are the canonical serialized names used in every file format
and API payload; parsing is `IssueType("Omission")` and printing is `.value`,
so round-trips are exact by construction.
"""

from __future__ import annotations

from enum import Enum


class Aspect(str, Enum):
    ACCURACY = "Accuracy"
    FLUENCY = "Fluency"


class IssueType(str, Enum):
    ADDITION = "Addition"
    OMISSION = "Omission"
    INACCURACY_INTRINSIC = "InaccuracyIntrinsic"
    INACCURACY_EXTRINSIC = "InaccuracyExtrinsic"
    POSITIVE_NEGATIVE_ASPECT = "PositiveNegativeAspect"
    DUPLICATION = "Duplication"
    WORD_FORM = "WordForm"
    WORD_ORDER = "WordOrder"

    @property
    def aspect(self) -> Aspect:
        if self in _ACCURACY_ISSUES:
            return Aspect.ACCURACY
        return Aspect.FLUENCY


_ACCURACY_ISSUES = frozenset(
    {
        IssueType.ADDITION,
        IssueType.OMISSION,
        IssueType.INACCURACY_INTRINSIC,
        IssueType.INACCURACY_EXTRINSIC,
        IssueType.POSITIVE_NEGATIVE_ASPECT,
    }
)


class SyntacticLabel(str, Enum):
    SUBJECT = "Subject"
    PREDICATE = "Predicate"
    OBJECT = "Object"
    NUMBER_TIME = "NumberTime"
    PLACE_NAME = "PlaceName"
    ATTRIBUTE = "Attribute"
    FUNCTION_WORD = "FunctionWord"
    WHOLE_SENTENCE = "WholeSentence"


class Severity(str, Enum):
    MINOR = "Minor"
    MAJOR = "Major"
    CRITICAL = "Critical"

    @property
    def weight(self) -> int:
        return _SEVERITY_WEIGHTS[self]


# Deduction ratio Minor:Major:Critical.
_SEVERITY_WEIGHTS = {
    Severity.MINOR: 1,
    Severity.MAJOR: 5,
    Severity.CRITICAL: 10,
}
