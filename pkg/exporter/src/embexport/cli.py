"""Command-line interface: `embexport export --model ... --corpus ... --out ...`"""

from __future__ import annotations

import argparse
import sys

from .export import ExportError, ExportJob, export_embeddings


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="embexport",
        description="Export CLS-token embeddings from a transformer checkpoint.",
    )
    sub = parser.add_subparsers(dest="subcommand", required=True)
    sp = sub.add_parser("export", help="embed a corpus with a pretrained checkpoint")
    sp.add_argument("--model", required=True, help="checkpoint id or local path")
    sp.add_argument("--corpus", required=True, help="canonical corpus JSONL")
    sp.add_argument("--out", required=True, help="output store file")
    sp.add_argument("--batch", type=int, default=16)
    sp.add_argument("--max-length", type=int, default=512)
    sp.add_argument("--strict", action="store_true",
                    help="batch size 1 for bit-reproducible rows")
    sp.add_argument("--pooler", action="store_true",
                    help="use the pooler output instead of the final-layer CLS state")
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    job = ExportJob(
        model_id=args.model,
        corpus_path=args.corpus,
        output_path=args.out,
        batch_size=args.batch,
        max_length=args.max_length,
        strict=args.strict,
        use_pooler=args.pooler,
    )
    try:
        ids, dim = export_embeddings(job)
    except (ExportError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    print(f"wrote {len(ids)}x{dim} embeddings -> {args.out}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
