"""Batch export: benchmark JSONL in, CoNLL-U + SRL JSONL + manifest out."""

from __future__ import annotations

import json
import logging
from dataclasses import dataclass
from pathlib import Path

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class ExportJob:
    input_path: str
    conllu_path: str
    srl_path: str
    manifest_path: str
    backend: str = "heuristic"


def _read_pairs(path: str) -> list[tuple[str, str]]:
    pairs = []
    with open(path, encoding="utf-8") as fh:
        for line_no, line in enumerate(fh, start=1):
            if not line.strip():
                continue
            try:
                rec = json.loads(line)
                pairs.append((rec["pair_id"], rec["complex"]))
            except (json.JSONDecodeError, KeyError) as exc:
                raise ValueError(f"{path}:{line_no}: {exc}") from exc
    return pairs


def _conllu_block(sentence_id: str, parsed) -> str:
    lines = [f"# sent_id = {sentence_id}"]
    for tok in parsed.tokens:
        lines.append(
            "\t".join(
                [
                    str(tok.index),
                    tok.surface,
                    "_",
                    tok.pos or "_",
                    "_",
                    "_",
                    str(tok.head),
                    tok.deprel or "_",
                    "_",
                    "_",
                ]
            )
        )
    return "\n".join(lines)


def _srl_line(sentence_id: str, parsed) -> str:
    return json.dumps(
        {
            "sentence_id": sentence_id,
            "frames": [
                {
                    "predicate_index": frame.predicate_index,
                    "arguments": [
                        {"label": a.label, "start": a.start, "end": a.end}
                        for a in frame.arguments
                    ],
                }
                for frame in parsed.frames
            ],
        },
        ensure_ascii=False,
    )


def run_export(job: ExportJob, backend=None) -> dict:
    """Parse every complex sentence, writing the two files plus a manifest.

    Sentences the backend cannot process are skipped and logged; the manifest
    tallies them. Output order always follows input order.
    """
    from .backends import get_backend

    backend = backend or get_backend(job.backend)
    pairs = _read_pairs(job.input_path)

    blocks: list[str] = []
    srl_lines: list[str] = []
    skipped: list[str] = []
    for pair_id, text in pairs:
        try:
            parsed = backend.parse(text)
        except Exception as exc:  # backend-specific failures must not abort the batch
            logger.warning("skipping %s: %s", pair_id, exc)
            skipped.append(pair_id)
            continue
        blocks.append(_conllu_block(pair_id, parsed))
        srl_lines.append(_srl_line(pair_id, parsed))

    Path(job.conllu_path).write_text(
        "\n\n".join(blocks) + ("\n" if blocks else ""), encoding="utf-8"
    )
    Path(job.srl_path).write_text(
        "\n".join(srl_lines) + ("\n" if srl_lines else ""), encoding="utf-8"
    )
    manifest = {
        "backend": getattr(backend, "name", "unknown"),
        "input": str(job.input_path),
        "sentences": len(pairs),
        "exported": len(blocks),
        "skipped": skipped,
        "outputs": {"conllu": str(job.conllu_path), "srl": str(job.srl_path)},
    }
    Path(job.manifest_path).write_text(
        json.dumps(manifest, indent=2, sort_keys=True) + "\n", encoding="utf-8"
    )
    return manifest
