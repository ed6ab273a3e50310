"""HTTP API for annotation sessions and report retrieval.

Stateless request handling over an in-memory state replayed from the
annotation logs at startup; each annotator owns one append-only log and a
lock that serializes their writes, so a successful post is durable and a
restart reproduces identical reports.
"""

from __future__ import annotations

import hashlib
import json
import threading
import uuid
from dataclasses import dataclass, field
from pathlib import Path

from fastapi import FastAPI, Header, Request
from fastapi.responses import JSONResponse

from .analysis import agreement, correlation_table
from .errors import (
    AnnotationNotFoundError,
    NotAssignedError,
    NotOwnerError,
    ParseError,
    PolytopeError,
    UnknownAnnotatorError,
    UnknownSampleError,
)
from .matrix import DEFAULT_MATRIX, SeverityMatrix
from .model import (
    AnnotationSet,
    ErrorAnnotation,
    Sample,
    Target,
    now_iso,
    validate_annotation,
)
from .scoring import (
    REPORT_ISSUE_ORDER,
    REPORT_SEVERITY_ORDER,
    build_target_report,
    score_sample,
    word_count,
)
from .storage import AnnotationLog, Corpus, annotation_to_record, load_corpus
from .taxonomy import IssueType, Severity, SyntacticLabel

API_PREFIX = "/api/v1"

_STATUS_BY_CODE = {
    "invalid_cell": 422,
    "span_out_of_bounds": 422,
    "zero_word_count": 422,
    "parse_error": 422,
    "missing_output": 422,
    "unknown_sample": 404,
    "unknown_target": 404,
    "not_found": 404,
    "not_assigned": 403,
    "not_owner": 403,
    "unknown_annotator": 401,
    "duplicate_annotation": 409,
    "insufficient_overlap": 409,
    "degenerate_series": 409,
    "too_few_points": 409,
    "empty_filter": 409,
}


@dataclass(frozen=True)
class Session:
    annotator: str
    blind: bool
    tasks: tuple[tuple[str, str], ...]  # (sample_id, target key) in queue order


@dataclass
class ServiceConfig:
    corpus_path: str
    log_dir: str
    manifest_path: str | None = None
    blind: bool = False  # force-blind every session and the report endpoints
    ui_dir: str | None = None


def load_manifest(path: str) -> dict[str, Session]:
    with open(path, encoding="utf-8") as handle:
        try:
            data = json.load(handle)
        except json.JSONDecodeError as exc:
            raise ParseError(f"invalid manifest JSON: {exc.msg}").at(path) from exc
    sessions: dict[str, Session] = {}
    for entry in data.get("sessions", []):
        annotator = str(entry["annotator"])
        tasks = tuple(
            (str(t["sample_id"]), str(t["target"])) for t in entry.get("tasks", [])
        )
        sessions[annotator] = Session(
            annotator=annotator, blind=bool(entry.get("blind", False)), tasks=tasks
        )
    return sessions


def _spreadsheet_letters(i: int) -> str:
    letters = ""
    i += 1
    while i > 0:
        i, rem = divmod(i - 1, 26)
        letters = chr(ord("A") + rem) + letters
    return letters


def alias_names(seed: str, names: list[str]) -> dict[str, str]:
    """Stable opaque aliases; ordering leaks nothing about the real names."""
    ordered = sorted(
        names, key=lambda n: hashlib.sha256(f"{seed}:{n}".encode()).hexdigest()
    )
    return {name: f"System-{_spreadsheet_letters(i)}" for i, name in enumerate(ordered)}


class ServiceState:
    def __init__(self, config: ServiceConfig, matrix: SeverityMatrix = DEFAULT_MATRIX):
        self.config = config
        self.matrix = matrix
        self.corpus: Corpus = load_corpus(config.corpus_path)
        self.log_dir = Path(config.log_dir)
        self.log_dir.mkdir(parents=True, exist_ok=True)
        self.sessions = (
            load_manifest(config.manifest_path) if config.manifest_path else {}
        )
        self.annotations = AnnotationSet()
        for log_path in sorted(self.log_dir.glob("*.jsonl")):
            AnnotationLog(log_path).replay(self.corpus, matrix, into=self.annotations)
        self._annotator_locks: dict[str, threading.Lock] = {}
        self._state_lock = threading.Lock()

    # -- sessions and aliasing -------------------------------------------------

    def session(self, annotator: str | None) -> Session:
        if not annotator or annotator not in self.sessions:
            raise UnknownAnnotatorError(
                f"unknown annotator {annotator!r}", annotator=annotator or ""
            )
        return self.sessions[annotator]

    def is_blind(self, session: Session) -> bool:
        return session.blind or self.config.blind

    def _aliases(self, seed: str) -> dict[str, str]:
        return alias_names(seed, self.corpus.system_names())

    def alias_target_key(self, session: Session, key: str) -> str:
        if not self.is_blind(session):
            return key
        target = Target.from_key(key)
        if target.is_reference:
            return key
        return Target.system(self._aliases(session.annotator)[target.name]).key

    def resolve_target_key(self, session: Session, key: str) -> Target:
        target = Target.from_key(key)
        if target.is_reference or not self.is_blind(session):
            return target
        reverse = {v: k for k, v in self._aliases(session.annotator).items()}
        if target.name in reverse:
            return Target.system(reverse[target.name])
        return target  # raw names remain resolvable; they never appear in responses

    def report_name(self, system: str) -> str:
        if not self.config.blind:
            return system
        return self._aliases("")[system]

    # -- annotation writes -----------------------------------------------------

    def annotator_lock(self, annotator: str) -> threading.Lock:
        with self._state_lock:
            return self._annotator_locks.setdefault(annotator, threading.Lock())

    def log_for(self, annotator: str) -> AnnotationLog:
        return AnnotationLog(self.log_dir / f"{annotator}.jsonl")

    def running_score(self, sample: Sample, target: Target, annotator: str):
        text = sample.target_text(target)
        words = word_count(text)
        anns = self.annotations.for_target(sample.id, target, annotator)
        if words == 0:
            return None
        return score_sample(anns, words, sample_id=sample.id, target=target)


def _score_payload(score) -> dict | None:
    if score is None:
        return None
    return {
        "sample_id": score.sample_id,
        "word_count": score.word_count,
        "counts": {s.value: score.counts[s] for s in REPORT_SEVERITY_ORDER},
        "weighted_deduction": score.weighted_deduction,
        "score": score.score,
    }


def _annotation_payload(state: ServiceState, session: Session, ann: ErrorAnnotation) -> dict:
    record = annotation_to_record(ann)
    record["target"] = state.alias_target_key(session, record["target"])
    return record


def _report_payload(state: ServiceState, report, aggregation: str) -> dict:
    return {
        "system": state.report_name(report.system),
        "issue_counts": {i.value: report.issue_counts[i] for i in REPORT_ISSUE_ORDER},
        "severity_counts": {
            s.value: report.severity_counts[s] for s in REPORT_SEVERITY_ORDER
        },
        "total_errors": report.total_errors,
        "total_words": report.total_words,
        "errors_per_1k_words": report.errors_per_1k_words,
        "polytope_score": report.score(aggregation),
        "polytope_score_macro": report.polytope_score_macro,
        "polytope_score_micro": report.polytope_score_micro,
    }


def create_app(config: ServiceConfig, matrix: SeverityMatrix = DEFAULT_MATRIX) -> FastAPI:
    state = ServiceState(config, matrix)
    app = FastAPI(title="polytope-eval annotation service", version="0.1.0")
    app.state.service = state

    @app.exception_handler(PolytopeError)
    async def polytope_error_handler(request: Request, exc: PolytopeError):
        status = _STATUS_BY_CODE.get(exc.code, 400)
        return JSONResponse(
            status_code=status,
            content={
                "error": {
                    "code": exc.code,
                    "message": exc.message,
                    "details": exc.details,
                }
            },
        )

    @app.get(API_PREFIX + "/health")
    def health():
        return {"status": "ok"}

    @app.get(API_PREFIX + "/matrix")
    def matrix_endpoint():
        cells = {
            issue.value: {
                label.value: (
                    state.matrix.lookup(issue, label).value
                    if state.matrix.lookup(issue, label)
                    else None
                )
                for label in SyntacticLabel
            }
            for issue in IssueType
        }
        return {
            "issue_types": [
                {"name": i.value, "aspect": i.aspect.value} for i in IssueType
            ],
            "syntactic_labels": [l.value for l in SyntacticLabel],
            "severity_weights": {s.value: s.weight for s in Severity},
            "cells": cells,
            "valid_labels": {
                i.value: [l.value for l in state.matrix.valid_labels(i)]
                for i in IssueType
            },
        }

    @app.get(API_PREFIX + "/tasks")
    def list_tasks(x_annotator: str | None = Header(default=None)):
        session = state.session(x_annotator)
        done = state.annotations.annotated_targets(session.annotator)
        tasks = [
            {
                "sample_id": sample_id,
                "target": state.alias_target_key(session, target_key),
            }
            for sample_id, target_key in session.tasks
            if (sample_id, target_key) not in done
        ]
        return {
            "annotator": session.annotator,
            "blind": state.is_blind(session),
            "tasks": tasks,
        }

    @app.get(API_PREFIX + "/samples/{sample_id}/{target_key}")
    def get_sample(
        sample_id: str,
        target_key: str,
        x_annotator: str | None = Header(default=None),
    ):
        session = state.session(x_annotator)
        sample = state.corpus.get(sample_id)
        if sample is None:
            raise UnknownSampleError(f"unknown sample {sample_id!r}", sample_id=sample_id)
        target = state.resolve_target_key(session, target_key)
        if (sample_id, target.key) not in set(session.tasks):
            raise NotAssignedError(
                f"({sample_id}, {state.alias_target_key(session, target.key)}) "
                f"is not assigned to {session.annotator!r}",
                sample_id=sample_id,
            )
        anns = sorted(
            state.annotations.for_target(sample_id, target, session.annotator),
            key=lambda a: a.created_at,
        )
        return {
            "sample_id": sample_id,
            "target": state.alias_target_key(session, target.key),
            "source": sample.source,
            "text": sample.target_text(target),
            "annotations": [_annotation_payload(state, session, a) for a in anns],
            "score": _score_payload(
                state.running_score(sample, target, session.annotator)
            ),
        }

    @app.post(API_PREFIX + "/errors", status_code=201)
    def post_error(payload: dict, x_annotator: str | None = Header(default=None)):
        session = state.session(x_annotator)
        try:
            sample_id = str(payload["sample_id"])
            raw_target = str(payload["target"])
            span = payload["span"]
            issue = IssueType(str(payload["issue_type"]))
            label = SyntacticLabel(str(payload["syntactic_label"]))
            start, end = int(span[0]), int(span[1])
        except (KeyError, TypeError, IndexError) as exc:
            raise ParseError(f"bad error payload: {exc!r}") from exc
        except ValueError as exc:
            raise ParseError(f"bad error payload: {exc}") from exc
        sample = state.corpus.get(sample_id)
        if sample is None:
            raise UnknownSampleError(f"unknown sample {sample_id!r}", sample_id=sample_id)
        target = state.resolve_target_key(session, raw_target)
        if (sample_id, target.key) not in set(session.tasks):
            raise NotAssignedError(
                f"({sample_id}, {raw_target}) is not assigned to {session.annotator!r}",
                sample_id=sample_id,
            )
        candidate = ErrorAnnotation(
            id=f"a-{uuid.uuid4().hex[:12]}",
            sample_id=sample_id,
            target=target,
            start=start,
            end=end,
            issue_type=issue,
            syntactic_label=label,
            annotator=session.annotator,
            created_at=now_iso(),
        )
        with state.annotator_lock(session.annotator):
            validated = validate_annotation(candidate, sample, state.matrix)
            with state._state_lock:
                state.annotations.add(validated)  # raises on duplicates
            try:
                state.log_for(session.annotator).append_annotation(validated)
            except Exception:
                with state._state_lock:
                    state.annotations.remove(validated.id)
                raise
        return {
            "annotation": _annotation_payload(state, session, validated),
            "score": _score_payload(
                state.running_score(sample, target, session.annotator)
            ),
        }

    @app.delete(API_PREFIX + "/errors/{annotation_id}")
    def delete_error(annotation_id: str, x_annotator: str | None = Header(default=None)):
        session = state.session(x_annotator)
        ann = state.annotations.get(annotation_id)
        if ann is None:
            raise AnnotationNotFoundError(
                f"no annotation with id {annotation_id!r}", annotation_id=annotation_id
            )
        if ann.annotator != session.annotator:
            raise NotOwnerError(
                f"annotation {annotation_id!r} belongs to {ann.annotator!r}",
                annotation_id=annotation_id,
            )
        sample = state.corpus.get(ann.sample_id)
        with state.annotator_lock(session.annotator):
            with state._state_lock:
                removed = state.annotations.remove(annotation_id)
            try:
                state.log_for(session.annotator).append_tombstone(annotation_id)
            except Exception:
                with state._state_lock:
                    state.annotations.add(removed)
                raise
        return {
            "deleted": annotation_id,
            "score": _score_payload(
                state.running_score(sample, ann.target, session.annotator)
            ),
        }

    @app.get(API_PREFIX + "/reports")
    def get_reports(aggregation: str = "macro"):
        if aggregation not in ("macro", "micro"):
            raise ParseError(f"unknown aggregation {aggregation!r}")
        reports = [
            _report_payload(
                state,
                build_target_report(state.corpus, state.annotations, Target.system(name)),
                aggregation,
            )
            for name in state.corpus.system_names()
        ]
        reports.sort(key=lambda r: r["system"])
        return {"aggregation": aggregation, "reports": reports}

    @app.get(API_PREFIX + "/agreement")
    def get_agreement():
        value = agreement(state.corpus, state.annotations)
        return {
            "pearson": value,
            "annotators": state.annotations.annotators(),
        }

    @app.get(API_PREFIX + "/correlation")
    def get_correlation():
        table = correlation_table(state.corpus, state.annotations)
        return {
            "rows": [
                {"level": row.level, "label": row.label, "values": row.values}
                for row in table.rows
            ]
        }

    if config.ui_dir:
        from fastapi.staticfiles import StaticFiles

        app.mount("/ui", StaticFiles(directory=config.ui_dir, html=True), name="ui")

    return app
