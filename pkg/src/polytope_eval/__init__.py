"""Fine-grained summarization evaluation toolkit.

Error-span annotation with a fixed severity matrix, deduction-based quality
scores, ROUGE-1/2/L, correlation and inter-annotator agreement statistics,
and layout-bias analysis, plus an annotation HTTP service and CLI.
"""

from .analysis import (
    CorrelationRow,
    CorrelationTable,
    agreement,
    agreement_scores,
    correlation_table,
)
from .errors import PolytopeError
from .layout import (
    ExternalScores,
    LexicalScorer,
    PositionDistribution,
    position_distribution,
    sentence_similarity,
)
from .matrix import DEFAULT_MATRIX, SeverityMatrix, lookup_severity
from .model import (
    AnnotationSet,
    ErrorAnnotation,
    Sample,
    Target,
    validate_annotation,
)
from .rouge import (
    LcsMode,
    MetricScore,
    RougeConfig,
    RougeScores,
    rouge_l,
    rouge_n,
    score_pair,
    score_system,
    tokenize,
)
from .scoring import (
    SampleScore,
    SystemReport,
    build_system_report,
    build_target_report,
    score_sample,
    word_count,
)
from .sentences import Sentence, split_sentences
from .stats import (
    AspectFilter,
    InstancePoint,
    PairedSeries,
    instance_correlation,
    inter_annotator_agreement,
    pearson,
    system_correlation,
)
from .storage import (
    AnnotationLog,
    Corpus,
    export_report,
    load_annotations,
    load_corpus,
    replay_annotations,
    save_corpus,
    serialize_corpus,
)
from .taxonomy import Aspect, IssueType, Severity, SyntacticLabel

__version__ = "0.1.0"

__all__ = [
    "Aspect",
    "AnnotationLog",
    "AnnotationSet",
    "AspectFilter",
    "Corpus",
    "CorrelationRow",
    "CorrelationTable",
    "DEFAULT_MATRIX",
    "ErrorAnnotation",
    "ExternalScores",
    "InstancePoint",
    "IssueType",
    "LcsMode",
    "LexicalScorer",
    "MetricScore",
    "PairedSeries",
    "PolytopeError",
    "PositionDistribution",
    "RougeConfig",
    "RougeScores",
    "Sample",
    "SampleScore",
    "Sentence",
    "Severity",
    "SeverityMatrix",
    "SyntacticLabel",
    "SystemReport",
    "Target",
    "agreement",
    "agreement_scores",
    "build_system_report",
    "build_target_report",
    "correlation_table",
    "export_report",
    "instance_correlation",
    "inter_annotator_agreement",
    "load_annotations",
    "load_corpus",
    "lookup_severity",
    "pearson",
    "position_distribution",
    "replay_annotations",
    "rouge_l",
    "rouge_n",
    "save_corpus",
    "score_pair",
    "score_sample",
    "score_system",
    "sentence_similarity",
    "serialize_corpus",
    "split_sentences",
    "system_correlation",
    "tokenize",
    "validate_annotation",
    "word_count",
]
