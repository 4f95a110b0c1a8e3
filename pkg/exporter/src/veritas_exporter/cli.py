"""The ``veritas-export`` command line."""

from __future__ import annotations

import argparse
import sys

from . import __version__
from .errors import ExporterError
from .export import ExportJob, POOLINGS, export_embeddings


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="veritas-export",
        description="export pooled pretrained-encoder review embeddings to an FRVE file",
    )
    p.add_argument("--version", action="version", version=f"veritas-export {__version__}")
    p.add_argument("--corpus", required=True, help="corpus root directory or CSV file")
    p.add_argument("--kind", choices=["ott", "csv"], default="ott")
    p.add_argument("--model", required=True, help="encoder model id or local directory")
    p.add_argument("--layer", default="last", help='"last" or a hidden-state index')
    p.add_argument("--pooling", choices=list(POOLINGS), default="mean")
    p.add_argument("--max-len", type=int, default=256, help="token truncation length")
    p.add_argument("--batch-size", type=int, default=16)
    p.add_argument("--text-col", default="text", help="CSV text column")
    p.add_argument("--out", required=True, help="output FRVE path")
    p.add_argument(
        "--per-token",
        action="store_true",
        help="emit one FRVE file per pooling strategy (suffix .mean/.sum/.concat)",
    )
    return p


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    layer: str | int = args.layer if args.layer == "last" else int(args.layer)
    base = dict(
        corpus_path=args.corpus,
        corpus_kind=args.kind,
        model_id=args.model,
        layer=layer,
        max_length=args.max_len,
        batch_size=args.batch_size,
        text_col=args.text_col,
    )
    try:
        if args.per_token:
            for pooling in POOLINGS:
                suffix = {"mean": "mean", "sum": "sum", "concat_truncate": "concat"}[pooling]
                out = f"{args.out}.{suffix}.frve"
                export_embeddings(ExportJob(pooling=pooling, output=out, **base))
                print(f"wrote {out}", file=sys.stderr)
        else:
            out = export_embeddings(ExportJob(pooling=args.pooling, output=args.out, **base))
            print(f"wrote {out}", file=sys.stderr)
        return 0
    except ExporterError as exc:
        print(f"veritas-export: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 2
    except ValueError as exc:
        print(f"veritas-export: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
