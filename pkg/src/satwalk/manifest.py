"""Run manifests: parameters, versions, wall time, and output checksums."""

from __future__ import annotations

import hashlib
import json
import os
import time
from dataclasses import dataclass, field
from pathlib import Path

from .errors import ValidationError

OUTDIR_ENV = "SATWALK_OUTDIR"


def default_out_dir() -> Path:
    return Path(os.environ.get(OUTDIR_ENV, "satwalk_out"))


def _sha256(path: Path) -> str:
    digest = hashlib.sha256()
    with open(path, "rb") as fh:
        for chunk in iter(lambda: fh.read(1 << 16), b""):
            digest.update(chunk)
    return digest.hexdigest()


@dataclass
class RunManifest:
    """Serialized alongside every command's outputs for reproducibility."""

    command: str
    parameters: dict
    started: float = field(default_factory=time.time)
    library_version: str = ""
    wall_time_s: float = 0.0
    outputs: dict = field(default_factory=dict)

    def __post_init__(self):
        if not self.library_version:
            from . import __version__

            self.library_version = __version__

    def record(self, path: Path) -> None:
        self.outputs[path.name] = _sha256(path)

    def write(self, writer: "OutputWriter") -> Path:
        self.wall_time_s = time.time() - self.started
        target = writer.path("manifest.json")
        payload = {
            "command": self.command,
            "parameters": self.parameters,
            "library_version": self.library_version,
            "wall_time_s": self.wall_time_s,
            "outputs": self.outputs,
        }
        target.write_text(json.dumps(payload, indent=2, sort_keys=True) + "\n")
        return target


class OutputWriter:
    """Creates files under one directory, refusing to overwrite without force."""

    def __init__(self, out_dir: Path, force: bool = False):
        self.out_dir = Path(out_dir)
        self.force = force
        self.out_dir.mkdir(parents=True, exist_ok=True)

    def path(self, name: str) -> Path:
        target = self.out_dir / name
        if target.exists() and not self.force:
            raise ValidationError(f"{target} exists; pass --force to overwrite")
        return target
