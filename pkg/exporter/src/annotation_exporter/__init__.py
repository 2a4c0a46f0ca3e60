"""Annotation exporter: benchmark sentences in, CoNLL-U + SRL JSONL out.

Thin glue over pluggable parsing backends. The emitted files follow the
splitrephrase interchange formats exactly (sentence_id = pair_id) so the
toolkit can consume them without any further conversion.
"""

__version__ = "0.1.0"

from .backends import HeuristicBackend, ParsedSentence, get_backend
from .export import ExportJob, run_export

__all__ = [
    "ExportJob",
    "HeuristicBackend",
    "ParsedSentence",
    "get_backend",
    "run_export",
]
