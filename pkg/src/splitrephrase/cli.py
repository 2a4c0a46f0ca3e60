"""Command-line entry point wiring the toolkit into reproducible workflows.

Every subcommand reads explicit id-joined files, writes machine JSON (plus a
human-readable table where a table exists), and drops a manifest next to its
output. Errors go to stderr; exit code 2 flags missing inputs, 1 any other
failure.
"""

from __future__ import annotations

import argparse
import json
import sys
from collections import defaultdict
from pathlib import Path

from . import __version__
from .annotations import AnnotationError, load_annotations
from .bleu import bleu_corpus, bleu_sentence
from .correlation import spearman
from .datasets import (
    benchmark_to_jsonl,
    build_gold,
    descriptive_stats,
    load_benchmark,
    pattern_report,
)
from .engine import EngineConfig, split_and_rephrase
from .manifest import RunManifest
from .ratings import (
    aggregate_ratings,
    is_correct,
    parse_ratings_jsonl,
    render_summary_table,
)
from .reliability import bucket_and_fit


class CliError(Exception):
    """Fatal command error with a message for stderr and an exit code."""

    def __init__(self, message: str, code: int = 1):
        super().__init__(message)
        self.code = code


def _require(path: str | None, what: str) -> Path:
    if path is None:
        raise CliError(f"missing required {what}")
    p = Path(path)
    if not p.exists():
        raise CliError(f"{what} not found: {p}", 2)
    return p


def _read_jsonl(path: Path) -> list[dict]:
    rows = []
    with open(path, encoding="utf-8") as fh:
        for line_no, line in enumerate(fh, start=1):
            if not line.strip():
                continue
            try:
                rows.append(json.loads(line))
            except json.JSONDecodeError as exc:
                raise CliError(f"{path}:{line_no}: invalid JSON: {exc}")
    return rows


def _write_manifest(args, command: str, inputs: dict, config: dict) -> None:
    manifest = RunManifest.collect(command, inputs, config)
    path = getattr(args, "manifest", None)
    if path is None and getattr(args, "out", None):
        path = str(args.out) + ".manifest.json"
    if path:
        manifest.write(path)


def _engine_config(args) -> EngineConfig:
    return EngineConfig(minimum_span=args.min_span)


# --- subcommands -----------------------------------------------------------


def cmd_split(args) -> int:
    conllu = _require(args.annotations, "annotations file")
    srl = _require(args.srl, "SRL file") if args.srl else None
    config = _engine_config(args)
    sentences = load_annotations(conllu, srl)
    lines = []
    for sent in sentences:
        result = split_and_rephrase(sent, config)
        lines.append(
            json.dumps(
                {
                    "sentence_id": sent.sentence_id,
                    "sentences": list(result.sentences),
                    "trace": [
                        {"handler": t.handler, "token": t.trigger_token}
                        for t in result.trace
                    ],
                    "changed": result.changed,
                },
                ensure_ascii=False,
            )
        )
    out = "\n".join(lines) + ("\n" if lines else "")
    _emit(args, out)
    _write_manifest(
        args,
        "split",
        {"annotations": conllu, "srl": srl},
        {"minimum_span": config.minimum_span, "max_splits": config.max_splits,
         "copula_insertion": config.copula_insertion},
    )
    return 0


def _hypotheses_by_pair(rows: list[dict]) -> dict[str, dict]:
    out = {}
    for row in rows:
        pid = row.get("pair_id") or row.get("sentence_id")
        if pid is None:
            raise CliError("hypothesis rows need a pair_id (or sentence_id) field")
        out[pid] = row
    return out


def cmd_evaluate(args) -> int:
    refs_path = _require(args.refs, "benchmark file")
    benchmark = load_benchmark(refs_path)

    if args.mode == "bleu":
        hyp_path = _require(args.input, "hypothesis file")
        hyp_rows = _hypotheses_by_pair(_read_jsonl(hyp_path))
        by_pair = {p.pair_id: p for p in benchmark.pairs}
        orphans = sorted(set(hyp_rows) - set(by_pair))
        if orphans:
            raise CliError(f"hypothesis ids missing from benchmark: {orphans}")
        hyps, refs, per_sentence = [], [], []
        for pid, row in sorted(hyp_rows.items()):
            if "sentences" not in row:
                raise CliError(f"hypothesis row {pid!r} lacks a sentences field")
            text = " ".join(row["sentences"])
            pair_refs = [rw.text() for rw in by_pair[pid].rewrites]
            hyps.append(text)
            refs.append(pair_refs)
            per_sentence.append(
                {"pair_id": pid, "bleu": bleu_sentence(text, pair_refs)}
            )
        report = bleu_corpus(hyps, refs)
        changed_rate = None
        if all("changed" in r for r in hyp_rows.values()) and hyp_rows:
            changed_rate = sum(
                1 for r in hyp_rows.values() if r["changed"]
            ) / len(hyp_rows)
        payload = {
            "corpus": {
                "score": report.score,
                "precisions": list(report.precisions),
                "brevity_penalty": report.brevity_penalty,
                "hypothesis_length": report.hypothesis_length,
                "reference_length": report.reference_length,
                "provenance": report.provenance,
            },
            "per_sentence": per_sentence,
        }
        if changed_rate is not None:
            payload["changed_rate"] = changed_rate
        _emit(args, json.dumps(payload, indent=2, sort_keys=True) + "\n")
        print(f"corpus BLEU: {report.score:.1f}", file=sys.stderr)
        _write_manifest(
            args,
            "evaluate-bleu",
            {"input": hyp_path, "refs": refs_path},
            {"mode": "bleu", "tokenizer": report.provenance.get("tokenizer")},
        )
        return 0

    if args.mode == "ratings":
        ratings_path = _require(args.ratings, "ratings file")
        records = parse_ratings_jsonl(ratings_path.read_text(encoding="utf-8"))
        index = benchmark.rewrite_index()
        orphans = sorted({r.rewrite_id for r in records} - set(index))
        if orphans:
            raise CliError(f"rating rewrite ids missing from benchmark: {orphans}")
        grouped = defaultdict(list)
        for record in records:
            _, rewrite = index[record.rewrite_id]
            grouped[rewrite.author].append(record)
        rows = [
            (author, aggregate_ratings(group))
            for author, group in sorted(grouped.items())
        ]
        payload = {
            "groups": [
                {"author": author, **summary.__dict__} for author, summary in rows
            ]
        }
        _emit(args, json.dumps(payload, indent=2, sort_keys=True) + "\n")
        print(render_summary_table(rows), file=sys.stderr)
        _write_manifest(
            args,
            "evaluate-ratings",
            {"ratings": ratings_path, "refs": refs_path},
            {"mode": "ratings"},
        )
        return 0

    raise CliError(f"unknown evaluate mode {args.mode!r}")


def cmd_stats(args) -> int:
    path = _require(args.input, "benchmark file")
    benchmark = load_benchmark(path, format=args.format)
    stats = descriptive_stats(benchmark)
    payload = {
        "benchmark": benchmark.name,
        "n_complex": stats.n_complex,
        "n_simple": stats.n_simple,
        "toks_per_complex": stats.toks_per_complex,
        "sents_per_simple": stats.sents_per_simple,
    }
    _emit(args, json.dumps(payload, indent=2, sort_keys=True) + "\n")
    print(
        f"{benchmark.name}: #complex {stats.n_complex}  #simple {stats.n_simple}  "
        f"toks/complex {stats.toks_per_complex:.1f}  "
        f"sents/simple {stats.sents_per_simple:.1f}",
        file=sys.stderr,
    )
    _write_manifest(args, "stats", {"input": path}, {"format": args.format})
    return 0


def cmd_patterns(args) -> int:
    bench_path = _require(args.input, "benchmark file")
    conllu = _require(args.annotations, "annotations file")
    srl = _require(args.srl, "SRL file") if args.srl else None
    benchmark = load_benchmark(bench_path, format=args.format)
    sentences = load_annotations(conllu, srl)
    annotations = {s.sentence_id: s for s in sentences}
    report = pattern_report(benchmark, annotations, _engine_config(args))
    payload = {
        "benchmark": benchmark.name,
        "counts": dict(report.counts),
        "patterns_per_sentence": report.patterns_per_sentence,
        "sample_size": report.sample_size,
    }
    _emit(args, json.dumps(payload, indent=2, sort_keys=True) + "\n")
    cells = "  ".join(f"{k}={v}" for k, v in report.counts.items())
    print(
        f"{benchmark.name}: {cells}  patterns/sent {report.patterns_per_sentence:.2f}",
        file=sys.stderr,
    )
    _write_manifest(
        args,
        "patterns",
        {"input": bench_path, "annotations": conllu, "srl": srl},
        {"minimum_span": args.min_span},
    )
    return 0


def cmd_build_gold(args) -> int:
    bench_path = _require(args.input, "benchmark file")
    ratings_path = _require(args.ratings, "ratings file")
    benchmark = load_benchmark(bench_path)
    records = parse_ratings_jsonl(ratings_path.read_text(encoding="utf-8"))
    try:
        gold = build_gold(benchmark, records)
    except ValueError as exc:
        raise CliError(str(exc))
    if not gold.pairs:
        print("warning: no perfect rewrites; gold benchmark is empty", file=sys.stderr)
    _emit(args, benchmark_to_jsonl(gold))
    _write_manifest(
        args, "build-gold", {"input": bench_path, "ratings": ratings_path}, {}
    )
    return 0


def cmd_reliability(args) -> int:
    crowd_path = _require(args.ratings, "crowd ratings file")
    expert_path = _require(args.expert, "expert verdict file")
    crowd = parse_ratings_jsonl(crowd_path.read_text(encoding="utf-8"))
    expert = {}
    for row in _read_jsonl(expert_path):
        try:
            expert[row["rewrite_id"]] = bool(row["correct"])
        except KeyError as exc:
            raise CliError(f"expert rows need rewrite_id and correct fields ({exc})")
    try:
        fits = bucket_and_fit(crowd, expert)
    except ValueError as exc:
        raise CliError(str(exc))

    payload = {
        "buckets": [
            {
                "bucket": fit.bucket,
                "alpha": fit.alpha,
                "beta": fit.beta,
                "n": fit.support_count,
                "k": fit.success_count,
                "mean": fit.mean(),
                "lower_10": fit.quantile(0.10),
                "upper_90": fit.quantile(0.90),
            }
            for fit in fits
        ]
    }
    _emit(args, json.dumps(payload, indent=2, sort_keys=True) + "\n")

    curve_path = args.curves or (str(args.out) + ".curves.csv" if args.out else None)
    if curve_path:
        steps = 1001
        lines = ["x," + ",".join(f"bucket{fit.bucket}" for fit in fits)]
        for i in range(steps):
            x = i / (steps - 1)
            lines.append(
                f"{x:.3f}," + ",".join(f"{fit.pdf(x):.8g}" for fit in fits)
            )
        Path(curve_path).write_text("\n".join(lines) + "\n", encoding="utf-8")
    _write_manifest(
        args,
        "reliability",
        {"ratings": crowd_path, "expert": expert_path},
        {"quantiles": [0.10, 0.90]},
    )
    return 0


_CRITERIA_VALUES = {
    "sensical": lambda r: float(r.sensical),
    "grammatical": lambda r: float(r.grammatical),
    "no miss fact": lambda r: float(not r.miss_fact),
    "no new fact": lambda r: float(not r.new_fact),
    "correct split": lambda r: float(not r.wrong_split),
    "enough split": lambda r: float(not r.need_more_split),
    "correct": lambda r: float(is_correct(r)),
}


def cmd_correlate(args) -> int:
    ratings_path = _require(args.ratings, "ratings file")
    bleu_path = _require(args.input, "per-sentence BLEU file")
    records = parse_ratings_jsonl(ratings_path.read_text(encoding="utf-8"))
    bleu_rows = {}
    for row in _read_jsonl(bleu_path):
        if "rewrite_id" not in row or "bleu" not in row:
            raise CliError("BLEU rows need rewrite_id and bleu fields")
        bleu_rows[row["rewrite_id"]] = row
    orphans = sorted({r.rewrite_id for r in records} - set(bleu_rows))
    if orphans:
        raise CliError(f"rating rewrite ids missing from BLEU file: {orphans}")

    by_rewrite = defaultdict(list)
    for record in records:
        by_rewrite[record.rewrite_id].append(record)

    def group_key(row: dict) -> str:
        if args.group_by == "all":
            return "all"
        value = row.get(args.group_by)
        if value is None:
            raise CliError(
                f"BLEU rows lack the {args.group_by!r} field needed for grouping"
            )
        return str(value)

    groups = defaultdict(list)  # key -> list of (bleu, mean criteria dict)
    for rewrite_id, recs in by_rewrite.items():
        row = bleu_rows[rewrite_id]
        means = {
            name: sum(fn(r) for r in recs) / len(recs)
            for name, fn in _CRITERIA_VALUES.items()
        }
        groups[group_key(row)].append((float(row["bleu"]), means))

    table_rows = []
    payload = {"group_by": args.group_by, "groups": []}
    for key in sorted(groups):
        points = groups[key]
        entry = {"group": key, "n": len(points), "criteria": {}}
        cells = [key]
        for name in _CRITERIA_VALUES:
            xs = [b for b, _ in points]
            ys = [m[name] for _, m in points]
            if len(points) < 3:
                entry["criteria"][name] = {"status": "insufficient"}
                cells.append("insufficient")
                continue
            try:
                result = spearman(xs, ys)
            except ValueError:
                entry["criteria"][name] = {"status": "undefined"}
                cells.append("undefined")
                continue
            dagger = "" if result.significant else "†"
            entry["criteria"][name] = {
                "rho": result.rho,
                "p_value": result.p_value,
                "significant": result.significant,
            }
            cells.append(f"{result.rho:.3f}{dagger}")
        payload["groups"].append(entry)
        table_rows.append(cells)

    header = ["group", *_CRITERIA_VALUES.keys()]
    widths = [max(len(r[i]) for r in [header, *table_rows]) for i in range(len(header))]
    text = "\n".join(
        "  ".join(c.ljust(w) for c, w in zip(row, widths))
        for row in [header, *table_rows]
    )
    _emit(args, json.dumps(payload, indent=2, sort_keys=True) + "\n")
    print(text, file=sys.stderr)
    _write_manifest(
        args,
        "correlate",
        {"ratings": ratings_path, "input": bleu_path},
        {"group_by": args.group_by, "alpha": 0.05},
    )
    return 0


def cmd_serve(args) -> int:
    import uvicorn

    from .service import TaskStore, create_app

    bench_path = _require(args.input, "benchmark file")
    benchmark = load_benchmark(bench_path)
    store = TaskStore(
        benchmark,
        log_path=args.log,
        rewrites_per_pair=args.quota_rewrites,
        ratings_per_rewrite=args.quota,
    )
    app = create_app(store, static_dir=args.static)
    _write_manifest(
        args,
        "serve",
        {"input": bench_path},
        {"quota_ratings": args.quota, "quota_rewrites": args.quota_rewrites},
    )
    uvicorn.run(app, host=args.host, port=args.port)
    return 0


def _emit(args, text: str) -> None:
    if getattr(args, "out", None):
        Path(args.out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


# --- parser ------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="splitrephrase",
        description="Rule-based Split and Rephrase toolkit and evaluation suite",
    )
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--out", help="output file (default: stdout)")
        p.add_argument("--manifest", help="manifest path (default: <out>.manifest.json)")

    p = sub.add_parser("split", help="split annotated sentences")
    p.add_argument("--annotations", required=True, help="CoNLL-U dependency file")
    p.add_argument("--srl", help="SRL JSONL file")
    p.add_argument("--min-span", type=int, default=3)
    common(p)
    p.set_defaults(func=cmd_split)

    p = sub.add_parser("evaluate", help="score hypotheses or aggregate ratings")
    p.add_argument("--mode", choices=["bleu", "ratings"], default="bleu")
    p.add_argument("--input", help="hypotheses JSONL (bleu mode)")
    p.add_argument("--refs", required=True, help="benchmark JSONL with references")
    p.add_argument("--ratings", help="ratings JSONL (ratings mode)")
    common(p)
    p.set_defaults(func=cmd_evaluate)

    p = sub.add_parser("stats", help="descriptive benchmark statistics")
    p.add_argument("--input", required=True)
    p.add_argument("--format", choices=["canonical_jsonl", "tsv_pairs"],
                   default="canonical_jsonl")
    common(p)
    p.set_defaults(func=cmd_stats)

    p = sub.add_parser("patterns", help="heuristic syntactic pattern report")
    p.add_argument("--input", required=True, help="benchmark JSONL")
    p.add_argument("--annotations", required=True, help="CoNLL-U file keyed by pair_id")
    p.add_argument("--srl", help="SRL JSONL file")
    p.add_argument("--format", choices=["canonical_jsonl", "tsv_pairs"],
                   default="canonical_jsonl")
    p.add_argument("--min-span", type=int, default=3)
    common(p)
    p.set_defaults(func=cmd_patterns)

    p = sub.add_parser("build-gold", help="keep only perfect rewrites")
    p.add_argument("--input", required=True, help="benchmark JSONL")
    p.add_argument("--ratings", required=True, help="ratings JSONL")
    common(p)
    p.set_defaults(func=cmd_build_gold)

    p = sub.add_parser("reliability", help="bucketed Beta fits for crowd agreement")
    p.add_argument("--ratings", required=True, help="crowd ratings JSONL (3 per rewrite)")
    p.add_argument("--expert", required=True, help="expert verdict JSONL")
    p.add_argument("--curves", help="density curve CSV path")
    common(p)
    p.set_defaults(func=cmd_reliability)

    p = sub.add_parser("correlate", help="sentence BLEU vs rating correlation")
    p.add_argument("--ratings", required=True)
    p.add_argument("--input", required=True, help="per-sentence BLEU JSONL")
    p.add_argument("--group-by", choices=["all", "model", "benchmark"], default="all")
    common(p)
    p.set_defaults(func=cmd_correlate)

    p = sub.add_parser("serve", help="run the local rating service")
    p.add_argument("--input", required=True, help="benchmark JSONL to work on")
    p.add_argument("--log", help="append-only event log path")
    p.add_argument("--static", help="directory with the web UI bundle")
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--port", type=int, default=8000)
    p.add_argument("--quota", type=int, default=2, help="ratings per rewrite")
    p.add_argument("--quota-rewrites", type=int, default=3, help="rewrites per pair")
    common(p)
    p.set_defaults(func=cmd_serve)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except CliError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.code
    except (AnnotationError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
