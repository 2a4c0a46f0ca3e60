"""Reproducibility manifests written alongside every CLI output artifact.

A manifest captures the command, the SHA-256 of every input file, the
effective configuration, and the tool version. Identical manifests imply
byte-identical outputs: nothing time- or host-dependent is recorded.
"""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass, field
from pathlib import Path


def sha256_file(path) -> str:
    digest = hashlib.sha256()
    with open(path, "rb") as fh:
        for block in iter(lambda: fh.read(65536), b""):
            digest.update(block)
    return digest.hexdigest()


@dataclass(frozen=True)
class RunManifest:
    command: str
    inputs: dict = field(default_factory=dict)
    config: dict = field(default_factory=dict)
    tool_version: str = ""

    @classmethod
    def collect(cls, command: str, input_paths: dict, config: dict) -> "RunManifest":
        from . import __version__

        return cls(
            command=command,
            inputs={
                name: sha256_file(path)
                for name, path in input_paths.items()
                if path is not None
            },
            config=config,
            tool_version=__version__,
        )

    def to_json(self) -> str:
        return json.dumps(
            {
                "command": self.command,
                "inputs": self.inputs,
                "config": self.config,
                "tool_version": self.tool_version,
            },
            indent=2,
            sort_keys=True,
        ) + "\n"

    def write(self, path) -> None:
        Path(path).write_text(self.to_json(), encoding="utf-8")
