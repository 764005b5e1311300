"""Run manifests: enough metadata to regenerate any output artifact."""

from __future__ import annotations

import hashlib
import json
from pathlib import Path


def sha256_file(path: str | Path) -> str:
    h = hashlib.sha256()
    with open(path, "rb") as fh:
        for block in iter(lambda: fh.read(1 << 20), b""):
            h.update(block)
    return h.hexdigest()


def canonical_json(obj) -> str:
    return json.dumps(obj, sort_keys=True, separators=(",", ":"), ensure_ascii=False)


def config_hash(config: dict) -> str:
    return hashlib.sha256(canonical_json(config).encode("utf-8")).hexdigest()


def write_manifest(
    output_path: str | Path,
    command: str,
    config: dict,
    inputs: list[str],
    counts: dict,
    version: str,
) -> Path:
    """Write <output>.manifest.json next to the artifact. Content is
    deterministic: no timestamps, sorted keys."""
    manifest = {
        "command": command,
        "version": version,
        "config": config,
        "config_hash": config_hash(config),
        "inputs": {str(p): sha256_file(p) for p in inputs},
        "output": {str(output_path): sha256_file(output_path)},
        "counts": counts,
    }
    path = Path(str(output_path) + ".manifest.json")
    path.write_text(canonical_json(manifest) + "\n", encoding="utf-8")
    return path
