"""CLI: annotation-exporter export --in pairs.jsonl --conllu out.conllu ..."""

from __future__ import annotations

import argparse
import logging
import sys

from .export import ExportJob, run_export


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="annotation-exporter")
    sub = parser.add_subparsers(dest="command", required=True)
    p = sub.add_parser("export", help="annotate benchmark sentences")
    p.add_argument("--in", dest="input", required=True, help="benchmark JSONL")
    p.add_argument("--conllu", required=True, help="CoNLL-U output path")
    p.add_argument("--srl", required=True, help="SRL JSONL output path")
    p.add_argument("--manifest", required=True, help="manifest output path")
    p.add_argument(
        "--backend",
        default="heuristic",
        help="heuristic (default) or spacy[:model]",
    )
    return parser


def main(argv=None) -> int:
    logging.basicConfig(level=logging.INFO, format="%(levelname)s %(message)s")
    args = build_parser().parse_args(argv)
    job = ExportJob(
        input_path=args.input,
        conllu_path=args.conllu,
        srl_path=args.srl,
        manifest_path=args.manifest,
        backend=args.backend,
    )
    try:
        manifest = run_export(job)
    except (OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    if manifest["skipped"]:
        print(
            f"warning: skipped {len(manifest['skipped'])} sentences",
            file=sys.stderr,
        )
        return 3
    return 0


if __name__ == "__main__":
    sys.exit(main())
