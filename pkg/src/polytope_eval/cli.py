"""Batch command line: every pipeline stage without the service or UI.

Exit codes: 0 success, 1 usage, 2 data/validation, 3 I/O. Data sections carry
no timestamps, so identical inputs produce bit-identical output.
"""

from __future__ import annotations

import argparse
import os
import sys

from .analysis import agreement, correlation_table, format_correlation_table
from .errors import PolytopeError
from .layout import DEFAULT_POSITION_CAP, ExternalScores, position_distribution
from .model import Target
from .rouge import LcsMode, RougeConfig, score_system
from .scoring import build_target_report
from .storage import export_report, load_annotations, load_corpus


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # usage errors exit 1, not argparse's default 2
        self.print_usage(sys.stderr)
        self.exit(1, f"{self.prog}: error: {message}\n")


def _env(name: str, default=None):
    return os.environ.get(f"POLYTOPE_{name}", default)


def _add_corpus_arg(parser, required=True):
    parser.add_argument(
        "--corpus",
        default=_env("CORPUS"),
        required=required and _env("CORPUS") is None,
        help="corpus JSONL path (env POLYTOPE_CORPUS)",
    )


def _add_annotations_arg(parser):
    parser.add_argument(
        "--annotations",
        default=_env("ANNOTATIONS"),
        required=_env("ANNOTATIONS") is None,
        help="annotation log file or directory of *.jsonl logs",
    )


def _add_format_args(parser):
    parser.add_argument("--format", choices=("table", "delimited"), default="table")
    parser.add_argument("--precision", type=int, default=2)
    parser.add_argument("--output", default=None, help="write to file instead of stdout")


def _emit(args, data: bytes | str) -> None:
    if isinstance(data, str):
        data = data.encode("utf-8")
    if args.output:
        with open(args.output, "wb") as handle:
            handle.write(data)
    else:
        sys.stdout.buffer.write(data)
        sys.stdout.flush()


def _rouge_config(args) -> RougeConfig:
    return RougeConfig(
        use_stemming=not args.no_stem,
        remove_stopwords=args.remove_stopwords,
        lcs_mode=LcsMode.FLAT_SEQUENCE if args.lcs == "flat" else LcsMode.SENTENCE_UNION,
    )


def _add_rouge_flags(parser):
    parser.add_argument("--no-stem", action="store_true", help="disable Porter stemming")
    parser.add_argument("--remove-stopwords", action="store_true")
    parser.add_argument("--lcs", choices=("flat", "union"), default="flat")


def _table(headers: list[str], rows: list[list[str]], delimited: bool) -> str:
    if delimited:
        lines = ["\t".join(headers)]
        lines.extend("\t".join(row) for row in rows)
        return "\n".join(lines) + "\n"
    widths = [
        max(len(headers[i]), *(len(row[i]) for row in rows)) if rows else len(headers[i])
        for i in range(len(headers))
    ]
    lines = ["  ".join(h.ljust(w) for h, w in zip(headers, widths)).rstrip()]
    for row in rows:
        lines.append("  ".join(c.ljust(w) for c, w in zip(row, widths)).rstrip())
    return "\n".join(lines) + "\n"


def cmd_validate(args) -> int:
    corpus = load_corpus(args.corpus)
    annotations = load_annotations(args.annotations, corpus)
    print(
        f"ok: {len(corpus)} samples, {len(annotations)} annotations, "
        f"{len(annotations.annotators())} annotators"
    )
    return 0


def _selected_targets(args, corpus) -> list[Target]:
    targets: list[Target] = []
    if args.system:
        targets.extend(Target.system(name) for name in args.system)
    else:
        targets.extend(Target.system(name) for name in corpus.system_names())
    if getattr(args, "include_reference", False):
        targets.append(Target.reference())
    return targets


def cmd_score(args) -> int:
    corpus = load_corpus(args.corpus)
    annotations = load_annotations(args.annotations, corpus)
    reports = [
        build_target_report(corpus, annotations, target)
        for target in _selected_targets(args, corpus)
    ]
    if args.per_sample:
        p = args.precision
        rows = []
        for report in reports:
            for s in report.sample_scores:
                rows.append(
                    [
                        report.system,
                        s.sample_id,
                        str(s.word_count),
                        str(sum(s.counts.values())),
                        str(s.weighted_deduction),
                        f"{s.score:.{p}f}",
                    ]
                )
        _emit(
            args,
            _table(
                ["target", "sample", "words", "errors", "weighted", "score"],
                rows,
                args.format == "delimited",
            ),
        )
        return 0
    _emit(
        args,
        export_report(
            reports,
            format=args.format,
            aggregation=args.aggregation,
            precision=args.precision,
        ),
    )
    return 0


def cmd_rouge(args) -> int:
    corpus = load_corpus(args.corpus)
    config = _rouge_config(args)
    per_sample, mean = score_system(corpus, args.system, config)
    p = args.precision
    headers = ["sample"]
    for variant in ("R1", "R2", "RL"):
        headers += [f"{variant}-P", f"{variant}-R", f"{variant}-F1"]
    rows = []
    for sample_id, scores in per_sample:
        row = [sample_id]
        for metric in (scores.rouge_1, scores.rouge_2, scores.rouge_l):
            row += [f"{metric.precision:.{p}f}", f"{metric.recall:.{p}f}", f"{metric.f1:.{p}f}"]
        rows.append(row)
    mean_row = ["mean"]
    for metric in (mean.rouge_1, mean.rouge_2, mean.rouge_l):
        mean_row += [
            f"{metric.precision:.{p}f}",
            f"{metric.recall:.{p}f}",
            f"{metric.f1:.{p}f}",
        ]
    rows.append(mean_row)
    _emit(args, _table(headers, rows, args.format == "delimited"))
    return 0


def cmd_correlate(args) -> int:
    corpus = load_corpus(args.corpus)
    annotations = load_annotations(args.annotations, corpus)
    table = correlation_table(corpus, annotations, config=_rouge_config(args))
    _emit(args, format_correlation_table(table, precision=args.precision))
    return 0


def cmd_agreement(args) -> int:
    corpus = load_corpus(args.corpus)
    annotations = load_annotations(args.annotations, corpus)
    value = agreement(corpus, annotations)
    _emit(args, f"pearson_agreement\t{value:.{args.precision}f}\n")
    return 0


def cmd_layout(args) -> int:
    corpus = load_corpus(args.corpus)
    scorer = None
    if args.scores:
        rows = []
        with open(args.scores, encoding="utf-8") as handle:
            for line in handle:
                if not line.strip():
                    continue
                sid, pos, value = line.rstrip("\n").split("\t")
                rows.append((sid, int(pos), float(value)))
        scorer = ExternalScores.from_rows(rows)
    dist = position_distribution(corpus, args.system, scorer=scorer, cap=args.cap)
    p = args.precision
    rows = [
        [label, str(count), f"{coverage:.{p}f}", f"{neg_log:.{p}f}"]
        for label, count, coverage, neg_log in dist.rows()
    ]
    text = _table(["position", "count", "coverage", "neg_log"], rows, args.format == "delimited")
    if dist.skipped_empty:
        text += f"# skipped_empty_summaries\t{dist.skipped_empty}\n"
    _emit(args, text)
    return 0


def cmd_export(args) -> int:
    corpus = load_corpus(args.corpus)
    annotations = load_annotations(args.annotations, corpus)
    os.makedirs(args.out_dir, exist_ok=True)
    formats = ("table", "delimited") if args.format == "both" else (args.format,)
    suffix = {"table": "txt", "delimited": "tsv"}
    for target in _selected_targets(args, corpus):
        report = build_target_report(corpus, annotations, target)
        for fmt in formats:
            blob = export_report(
                report, format=fmt, aggregation=args.aggregation, precision=args.precision
            )
            name = f"{report.system}.report.{suffix[fmt]}"
            with open(os.path.join(args.out_dir, name), "wb") as handle:
                handle.write(blob)
    print(f"wrote reports to {args.out_dir}")
    return 0


def cmd_serve(args) -> int:
    import uvicorn

    from .service import ServiceConfig, create_app

    config = ServiceConfig(
        corpus_path=args.corpus,
        log_dir=args.log_dir,
        manifest_path=args.manifest,
        blind=args.blind,
        ui_dir=args.ui_dir,
    )
    app = create_app(config)
    uvicorn.run(app, host=args.host, port=args.port, log_level="warning")
    return 0


def build_parser() -> _Parser:
    parser = _Parser(prog="polytope", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("validate", help="replay corpus and annotation logs")
    _add_corpus_arg(p)
    _add_annotations_arg(p)
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("score", help="tally errors and quality scores per system")
    _add_corpus_arg(p)
    _add_annotations_arg(p)
    p.add_argument("--system", action="append", help="restrict to this system (repeatable)")
    p.add_argument("--include-reference", action="store_true",
                   help="also report on the reference summaries")
    p.add_argument("--aggregation", choices=("macro", "micro"), default="macro")
    p.add_argument("--per-sample", action="store_true",
                   help="emit per-sample scores instead of the system report")
    _add_format_args(p)
    p.set_defaults(func=cmd_score)

    p = sub.add_parser("rouge", help="ROUGE-1/2/L for one system")
    _add_corpus_arg(p)
    p.add_argument("--system", required=True)
    _add_rouge_flags(p)
    _add_format_args(p)
    p.set_defaults(func=cmd_rouge)

    p = sub.add_parser("correlate", help="correlation table of ROUGE vs quality scores")
    _add_corpus_arg(p)
    _add_annotations_arg(p)
    _add_rouge_flags(p)
    _add_format_args(p)
    p.set_defaults(func=cmd_correlate)

    p = sub.add_parser("agreement", help="inter-annotator agreement")
    _add_corpus_arg(p)
    _add_annotations_arg(p)
    p.add_argument("--precision", type=int, default=4)
    p.add_argument("--output", default=None)
    p.set_defaults(func=cmd_agreement)

    p = sub.add_parser("layout", help="source-position coverage distribution")
    _add_corpus_arg(p)
    p.add_argument("--system", required=True)
    p.add_argument("--scores", default=None,
                   help="external similarity TSV: summary-sentence-id, position, score")
    p.add_argument("--cap", type=int, default=DEFAULT_POSITION_CAP)
    _add_format_args(p)
    p.set_defaults(func=cmd_layout)

    p = sub.add_parser("export", help="write per-system report files")
    _add_corpus_arg(p)
    _add_annotations_arg(p)
    p.add_argument("--out-dir", required=True)
    p.add_argument("--system", action="append")
    p.add_argument("--include-reference", action="store_true")
    p.add_argument("--aggregation", choices=("macro", "micro"), default="macro")
    p.add_argument("--format", choices=("table", "delimited", "both"), default="both")
    p.add_argument("--precision", type=int, default=2)
    p.set_defaults(func=cmd_export)

    p = sub.add_parser("serve", help="run the annotation HTTP service")
    _add_corpus_arg(p)
    p.add_argument("--log-dir", default=_env("LOG_DIR"),
                   required=_env("LOG_DIR") is None)
    p.add_argument("--manifest", default=_env("MANIFEST"))
    p.add_argument("--host", default=_env("HOST", "127.0.0.1"))
    p.add_argument("--port", type=int, default=int(_env("PORT", "8000")))
    p.add_argument("--blind", action="store_true",
                   default=_env("BLIND", "") not in ("", "0", "false"))
    p.add_argument("--ui-dir", default=_env("UI_DIR"))
    p.set_defaults(func=cmd_serve)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except PolytopeError as exc:
        print(f"error[{exc.code}]: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"error[io]: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
