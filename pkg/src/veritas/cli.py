"""The ``veritas`` command line: train, evaluate, predict, report.

Exit codes: 0 success, 1 usage/config error, 2 data error, 3 internal
invariant violation.  Diagnostics go to stderr; reports go to stdout.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import __version__
from .bundle import load_bundle
from .errors import ConfigError, DataError, InternalError, VeritasError
from .evaluation import (
    MetricsReport,
    compare_with_baseline,
    load_baseline_table,
    render_report,
)
from .pipeline import (
    ClassifierSpec,
    ExperimentConfig,
    canonical_kind,
    evaluate_bundle,
    load_config_file,
    load_corpus,
    predict_text,
    run_experiment,
)


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        sys.exit(1)


def _add_corpus_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--corpus", help="corpus root directory (ott) or CSV file")
    p.add_argument("--corpus-kind", choices=["ott", "csv"], help="corpus layout")
    p.add_argument("--text-col", help="CSV text column")
    p.add_argument("--label-col", help="CSV label column")
    p.add_argument("--label-map", help='JSON object, e.g. \'{"fake":"deceptive","real":"truthful"}\'')
    p.add_argument("--delimiter", help="CSV delimiter (default comma)")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="veritas", description=__doc__)
    parser.add_argument("--version", action="version", version=f"veritas {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    train = sub.add_parser("train", help="run the full pipeline and save the best model")
    train.add_argument("--config", help="JSON experiment config file")
    _add_corpus_flags(train)
    train.add_argument("--features", help='"lexical" or a path to an FRVE embedding file')
    train.add_argument("--classifiers", help="comma-separated kinds, e.g. svm,rf,knn")
    train.add_argument("--ratio", type=float, help="train fraction (default 0.8)")
    train.add_argument("--seed", type=int, help="split/classifier seed")
    train.add_argument("--no-stratify", action="store_true", help="plain shuffled split")
    train.add_argument("--min-df", type=int, help="lexical: minimum document frequency")
    train.add_argument("--max-features", type=int, help="lexical: vocabulary cap")
    train.add_argument("--out", help="path for the best-model bundle (.vbundle)")
    train.add_argument("--results", help="path for the full results JSON")
    train.add_argument("--report", choices=["text", "json"], help="stdout report format")
    train.add_argument(
        "--set",
        action="append",
        default=[],
        metavar="PATH=JSON",
        help="override any config field, e.g. --set split.ratio=0.9",
    )

    ev = sub.add_parser("evaluate", help="score a saved bundle on a corpus")
    ev.add_argument("--model", required=True, help="bundle file")
    _add_corpus_flags(ev)
    ev.add_argument("--features", help="FRVE embedding file (embedding-file bundles)")
    ev.add_argument("--report", choices=["text", "json"], default="text")

    pr = sub.add_parser("predict", help="classify review text with a saved bundle")
    pr.add_argument("--model", required=True, help="bundle file")
    group = pr.add_mutually_exclusive_group(required=True)
    group.add_argument("--text", help="one review text")
    group.add_argument("--stdin", action="store_true", help="one review per input line")

    rep = sub.add_parser("report", help="compare saved results against the reference table")
    rep.add_argument("--results", required=True, help="results JSON from train --results")
    rep.add_argument("--baseline", help="baseline table JSON (default: shipped table)")
    return parser


def _set_by_path(tree: dict, dotted: str, value) -> None:
    keys = dotted.split(".")
    node = tree
    for key in keys[:-1]:
        node = node.setdefault(key, {})
        if not isinstance(node, dict):
            raise ConfigError(f"--set path {dotted!r} crosses a non-object field")
    node[keys[-1]] = value


def _config_from_args(args) -> ExperimentConfig:
    if args.config:
        cfg = load_config_file(args.config)
    else:
        cfg = ExperimentConfig()
    if args.corpus:
        cfg.corpus.path = args.corpus
    if args.corpus_kind:
        cfg.corpus.kind = args.corpus_kind
    elif args.corpus and args.corpus.lower().endswith(".csv"):
        cfg.corpus.kind = "csv"
    if args.text_col:
        cfg.corpus.text_col = args.text_col
    if args.label_col:
        cfg.corpus.label_col = args.label_col
    if args.label_map:
        try:
            cfg.corpus.label_map = json.loads(args.label_map)
        except json.JSONDecodeError as exc:
            raise ConfigError(f"--label-map is not valid JSON: {exc}") from exc
    if args.delimiter:
        cfg.corpus.delimiter = args.delimiter
    if args.features:
        if args.features.lower() == "lexical":
            cfg.features.kind = "lexical"
            cfg.features.path = None
        else:
            cfg.features.kind = "embedding_file"
            cfg.features.path = args.features
    if args.classifiers:
        cfg.classifiers = [
            ClassifierSpec(kind=canonical_kind(k)) for k in args.classifiers.split(",") if k
        ]
    if args.ratio is not None:
        cfg.split.ratio = args.ratio
    if args.seed is not None:
        cfg.split.seed = args.seed
    if args.no_stratify:
        cfg.split.stratify = False
    if args.min_df is not None or args.max_features is not None:
        from .embedding import LexicalConfig

        cfg.features.lexical = LexicalConfig(
            min_df=args.min_df if args.min_df is not None else cfg.features.lexical.min_df,
            max_features=args.max_features
            if args.max_features is not None
            else cfg.features.lexical.max_features,
            lowercase=cfg.features.lexical.lowercase,
        )
    if args.out:
        cfg.output.bundle = args.out
    if args.results:
        cfg.output.results = args.results
    if args.report:
        cfg.output.report = args.report
    if args.set:
        tree = cfg.to_dict()
        for item in args.set:
            if "=" not in item:
                raise ConfigError(f"--set expects PATH=JSON, got {item!r}")
            path, raw = item.split("=", 1)
            try:
                value = json.loads(raw)
            except json.JSONDecodeError:
                value = raw  # bare strings are convenient
            _set_by_path(tree, path, value)
        cfg = ExperimentConfig.from_dict(tree)
    return cfg


def _cmd_train(args) -> int:
    cfg = _config_from_args(args)
    result = run_experiment(cfg)
    if cfg.output.report == "json":
        print(result.to_json())
    else:
        for kind in result.ranking:
            print(f"=== {kind} ===")
            print(render_report(result.reports[kind], "text"))
        print(f"best: {result.best_kind}")
        if cfg.output.bundle:
            print(f"bundle: {cfg.output.bundle}", file=sys.stderr)
    return 0


def _cmd_evaluate(args) -> int:
    bundle = load_bundle(args.model)
    cfg = _config_from_args_corpus_only(args)
    corpus = load_corpus(cfg.corpus)
    report, confusion = evaluate_bundle(bundle, corpus, embedding_path=args.features)
    if args.report == "json":
        doc = report.to_dict()
        doc["confusion"] = confusion
        print(json.dumps(doc, indent=2, sort_keys=True))
    else:
        print(render_report(report, "text"))
    return 0


def _config_from_args_corpus_only(args) -> ExperimentConfig:
    cfg = ExperimentConfig()
    if not args.corpus:
        raise ConfigError("--corpus is required")
    cfg.corpus.path = args.corpus
    if args.corpus_kind:
        cfg.corpus.kind = args.corpus_kind
    elif args.corpus.lower().endswith(".csv"):
        cfg.corpus.kind = "csv"
    if args.text_col:
        cfg.corpus.text_col = args.text_col
    if args.label_col:
        cfg.corpus.label_col = args.label_col
    if args.label_map:
        try:
            cfg.corpus.label_map = json.loads(args.label_map)
        except json.JSONDecodeError as exc:
            raise ConfigError(f"--label-map is not valid JSON: {exc}") from exc
    if args.delimiter:
        cfg.corpus.delimiter = args.delimiter
    return cfg


def _cmd_predict(args) -> int:
    bundle = load_bundle(args.model)
    if args.text is not None:
        p = predict_text(bundle, args.text)
        print(f"{p.label}\t{p.decision_score:.6f}")
        return 0
    for line in sys.stdin:
        line = line.rstrip("\n")
        if not line.strip():
            continue
        p = predict_text(bundle, line)
        print(f"{p.label}\t{p.decision_score:.6f}")
    return 0


def _cmd_report(args) -> int:
    raw = json.loads(Path(args.results).read_text("utf-8"))
    reports = [
        MetricsReport.from_dict(entry["metrics"])
        for _, entry in sorted(raw["reports"].items())
    ]
    baseline = load_baseline_table(args.baseline)
    print(compare_with_baseline(reports, baseline), end="")
    return 0


_COMMANDS = {
    "train": _cmd_train,
    "evaluate": _cmd_evaluate,
    "predict": _cmd_predict,
    "report": _cmd_report,
}


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return _COMMANDS[args.command](args)
    except ConfigError as exc:
        print(f"veritas: config error: {exc}", file=sys.stderr)
        return 1
    except InternalError as exc:
        print(f"veritas: internal error: {exc}", file=sys.stderr)
        return 3
    except (DataError, VeritasError) as exc:
        print(f"veritas: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 2
    except FileNotFoundError as exc:
        print(f"veritas: {exc}", file=sys.stderr)
        return 2
    except json.JSONDecodeError as exc:
        print(f"veritas: invalid JSON input: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
