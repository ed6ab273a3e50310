"""Persistence: corpus files, append-only annotation logs, report export.

Corpus files are UTF-8 JSON lines, one sample per line. Annotation logs are
append-only JSON lines: annotation records plus tombstones
{"deleted": "<annotation-id>"}. Replay re-validates every record against the
severity matrix, so a stale stored severity is detected, never trusted.
"""

from __future__ import annotations

import json
import os
from dataclasses import replace
from pathlib import Path
from typing import Iterable, Iterator

from .errors import (
    DuplicateIdError,
    OrphanTombstoneError,
    ParseError,
    PolytopeError,
    SeverityMismatchError,
    UnknownSampleError,
)
from .matrix import DEFAULT_MATRIX, SeverityMatrix
from .model import AnnotationSet, ErrorAnnotation, Sample, Target, validate_annotation
from .scoring import (
    REPORT_ISSUE_ORDER,
    REPORT_SEVERITY_ORDER,
    SystemReport,
)
from .taxonomy import IssueType, Severity, SyntacticLabel


class Corpus:
    """Samples with unique ids, iterable in file order."""

    def __init__(self, samples: Iterable[Sample] = ()):
        self._samples: list[Sample] = []
        self._by_id: dict[str, Sample] = {}
        for sample in samples:
            self.add(sample)

    def add(self, sample: Sample) -> None:
        if sample.id in self._by_id:
            raise DuplicateIdError(f"duplicate sample id {sample.id!r}", sample_id=sample.id)
        self._samples.append(sample)
        self._by_id[sample.id] = sample

    def __iter__(self) -> Iterator[Sample]:
        return iter(self._samples)

    def __len__(self) -> int:
        return len(self._samples)

    def __contains__(self, sample_id: str) -> bool:
        return sample_id in self._by_id

    def get(self, sample_id: str) -> Sample | None:
        return self._by_id.get(sample_id)

    def system_names(self) -> list[str]:
        names: set[str] = set()
        for sample in self._samples:
            names.update(sample.system_outputs)
        return sorted(names)


def _sample_to_record(sample: Sample) -> dict:
    return {
        "id": sample.id,
        "source": sample.source,
        "reference": sample.reference,
        "system_outputs": dict(sorted(sample.system_outputs.items())),
    }


def _sample_from_record(record: dict, path: str, line: int) -> Sample:
    try:
        outputs = record.get("system_outputs", {})
        if not isinstance(outputs, dict):
            raise TypeError("system_outputs must be an object")
        return Sample(
            id=record["id"],
            source=record["source"],
            reference=record.get("reference", ""),
            system_outputs={str(k): str(v) for k, v in outputs.items()},
        )
    except (KeyError, TypeError, ValueError) as exc:
        raise ParseError(f"bad sample record: {exc}").at(path, line) from exc


def load_corpus(path: str | os.PathLike) -> Corpus:
    corpus = Corpus()
    path = os.fspath(path)
    with open(path, encoding="utf-8") as handle:
        for line_no, line in enumerate(handle, 1):
            if not line.strip():
                continue
            try:
                record = json.loads(line)
            except json.JSONDecodeError as exc:
                raise ParseError(f"invalid JSON: {exc.msg}").at(path, line_no) from exc
            try:
                corpus.add(_sample_from_record(record, path, line_no))
            except DuplicateIdError as exc:
                raise exc.at(path, line_no)
    return corpus


def serialize_corpus(corpus: Corpus) -> bytes:
    lines = [
        json.dumps(_sample_to_record(s), ensure_ascii=False, sort_keys=True)
        for s in corpus
    ]
    return ("\n".join(lines) + "\n" if lines else "").encode("utf-8")


def save_corpus(corpus: Corpus, path: str | os.PathLike) -> None:
    Path(path).write_bytes(serialize_corpus(corpus))


def annotation_to_record(ann: ErrorAnnotation) -> dict:
    return {
        "id": ann.id,
        "sample_id": ann.sample_id,
        "target": ann.target.key,
        "span": [ann.start, ann.end],
        "issue_type": ann.issue_type.value,
        "syntactic_label": ann.syntactic_label.value,
        "severity": ann.severity.value if ann.severity else None,
        "annotator": ann.annotator,
        "created_at": ann.created_at,
    }


def annotation_from_record(record: dict) -> ErrorAnnotation:
    span = record["span"]
    if not (isinstance(span, list) and len(span) == 2):
        raise ParseError("span must be [start, end]")
    try:
        severity = Severity(record["severity"]) if record.get("severity") else None
        return ErrorAnnotation(
            id=str(record["id"]),
            sample_id=str(record["sample_id"]),
            target=Target.from_key(record["target"]),
            start=int(span[0]),
            end=int(span[1]),
            issue_type=IssueType(record["issue_type"]),
            syntactic_label=SyntacticLabel(record["syntactic_label"]),
            annotator=str(record["annotator"]),
            created_at=str(record.get("created_at", "")),
            severity=severity,
        )
    except KeyError as exc:
        raise ParseError(f"annotation record missing field {exc}") from exc
    except ValueError as exc:
        raise ParseError(f"bad annotation record: {exc}") from exc


class AnnotationLog:
    """Append-only annotation log; replay yields the current AnnotationSet."""

    def __init__(self, path: str | os.PathLike):
        self.path = os.fspath(path)

    def _append(self, record: dict) -> None:
        data = json.dumps(record, ensure_ascii=False, sort_keys=True) + "\n"
        with open(self.path, "a", encoding="utf-8") as handle:
            handle.write(data)
            handle.flush()
            os.fsync(handle.fileno())

    def append_annotation(self, ann: ErrorAnnotation) -> None:
        self._append(annotation_to_record(ann))

    def append_tombstone(self, annotation_id: str) -> None:
        self._append({"deleted": annotation_id})

    def records(self) -> Iterator[tuple[int, dict]]:
        if not os.path.exists(self.path):
            return
        with open(self.path, encoding="utf-8") as handle:
            for line_no, line in enumerate(handle, 1):
                if not line.strip():
                    continue
                try:
                    yield line_no, json.loads(line)
                except json.JSONDecodeError as exc:
                    raise ParseError(f"invalid JSON: {exc.msg}").at(self.path, line_no) from exc

    def replay(
        self,
        corpus: Corpus,
        matrix: SeverityMatrix = DEFAULT_MATRIX,
        into: AnnotationSet | None = None,
    ) -> AnnotationSet:
        annotations = into if into is not None else AnnotationSet()
        for line_no, record in self.records():
            try:
                if "deleted" in record:
                    target_id = str(record["deleted"])
                    if annotations.get(target_id) is None:
                        raise OrphanTombstoneError(
                            f"tombstone for unknown or already deleted annotation "
                            f"{target_id!r}",
                            annotation_id=target_id,
                        )
                    annotations.remove(target_id)
                    continue
                stored = annotation_from_record(record)
                sample = corpus.get(stored.sample_id)
                if sample is None:
                    raise UnknownSampleError(
                        f"annotation {stored.id!r} references unknown sample "
                        f"{stored.sample_id!r}",
                        sample_id=stored.sample_id,
                    )
                validated = validate_annotation(
                    replace(stored, severity=None), sample, matrix
                )
                if stored.severity is not None and stored.severity != validated.severity:
                    raise SeverityMismatchError(
                        f"annotation {stored.id!r} stored severity "
                        f"{stored.severity.value} but the matrix derives "
                        f"{validated.severity.value}",
                        annotation_id=stored.id,
                    )
                annotations.add(validated)
            except PolytopeError as exc:
                raise exc.at(self.path, line_no)
        return annotations


def replay_annotations(
    path: str | os.PathLike,
    corpus: Corpus,
    matrix: SeverityMatrix = DEFAULT_MATRIX,
) -> AnnotationSet:
    return AnnotationLog(path).replay(corpus, matrix)


def load_annotations(
    path: str | os.PathLike,
    corpus: Corpus,
    matrix: SeverityMatrix = DEFAULT_MATRIX,
) -> AnnotationSet:
    """Replay one log file, or every *.jsonl under a directory (sorted)."""
    path = Path(path)
    if not path.exists():
        raise FileNotFoundError(f"annotation log not found: {path}")
    annotations = AnnotationSet()
    if path.is_dir():
        for log_path in sorted(path.glob("*.jsonl")):
            AnnotationLog(log_path).replay(corpus, matrix, into=annotations)
    else:
        AnnotationLog(path).replay(corpus, matrix, into=annotations)
    return annotations


def _format_value(value: float | int, precision: int) -> str:
    if isinstance(value, int):
        return str(value)
    return f"{value:.{precision}f}"


def report_rows(
    report: SystemReport, aggregation: str = "macro"
) -> list[tuple[str, float | int]]:
    """Fixed row order: issue types, severities, totals, then scores."""
    rows: list[tuple[str, float | int]] = []
    for issue in REPORT_ISSUE_ORDER:
        rows.append((issue.value, report.issue_counts[issue]))
    for severity in REPORT_SEVERITY_ORDER:
        rows.append((severity.value, report.severity_counts[severity]))
    rows.append(("Errors", report.total_errors))
    rows.append(("Words", report.total_words))
    rows.append(("Errors / 1k Words", report.errors_per_1k_words))
    rows.append(("PolyTope Score", report.score(aggregation)))
    other = "micro" if aggregation == "macro" else "macro"
    rows.append((f"PolyTope Score ({other})", report.score(other)))
    return rows


def export_report(
    report: SystemReport | Iterable[SystemReport],
    format: str = "table",
    aggregation: str = "macro",
    precision: int = 2,
) -> bytes:
    """Render one or more reports as deterministic bytes (table or delimited)."""
    reports = [report] if isinstance(report, SystemReport) else list(report)
    if not reports:
        raise ValueError("no reports to export")
    if format not in ("table", "delimited"):
        raise ValueError(f"unknown format {format!r}")
    labels = [label for label, _ in report_rows(reports[0], aggregation)]
    columns = []
    for rep in reports:
        rows = report_rows(rep, aggregation)
        columns.append([_format_value(value, precision) for _, value in rows])
    headers = [rep.system for rep in reports]

    if format == "delimited":
        lines = ["\t".join(["metric", *headers])]
        for i, label in enumerate(labels):
            lines.append("\t".join([label, *(col[i] for col in columns)]))
        return ("\n".join(lines) + "\n").encode("utf-8")

    label_width = max(len(l) for l in labels + ["metric"])
    col_widths = [
        max(len(h), max(len(col[i]) for i in range(len(labels))))
        for h, col in zip(headers, columns)
    ]
    lines = [
        "  ".join(
            ["metric".ljust(label_width)]
            + [h.rjust(w) for h, w in zip(headers, col_widths)]
        ).rstrip()
    ]
    for i, label in enumerate(labels):
        lines.append(
            "  ".join(
                [label.ljust(label_width)]
                + [col[i].rjust(w) for col, w in zip(columns, col_widths)]
            ).rstrip()
        )
    return ("\n".join(lines) + "\n").encode("utf-8")
