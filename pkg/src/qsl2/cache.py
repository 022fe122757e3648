"""On-disk cache of operator matrices, keyed by (r, package version).

Every file is recorded in a manifest with its SHA-256; a hit whose checksum
does not match is discarded and rebuilt.
"""

from __future__ import annotations

import hashlib
import json
import logging
from pathlib import Path
from typing import Callable

from .linalg import LinOp

__all__ = ["OperatorCache"]

log = logging.getLogger(__name__)


class OperatorCache:
    def __init__(self, root: str | Path, r: int, version: str):
        self.dir = Path(root) / f"r{r}-v{version}"
        self.dir.mkdir(parents=True, exist_ok=True)
        self.manifest_path = self.dir / "manifest.json"
        self.hits = 0
        self.misses = 0

    def _manifest(self) -> dict:
        try:
            return json.loads(self.manifest_path.read_text())
        except (OSError, ValueError):
            return {}

    def get(self, name: str, build: Callable[[], LinOp]) -> LinOp:
        path = self.dir / f"{name}.json"
        digest = self._manifest().get(name)
        if digest is not None and path.exists():
            data = path.read_bytes()
            if hashlib.sha256(data).hexdigest() == digest:
                self.hits += 1
                return LinOp.from_json(data.decode())
            log.warning("checksum mismatch for %s, rebuilding", path)
        self.misses += 1
        op = build()
        data = op.to_json().encode()
        path.write_bytes(data)
        manifest = self._manifest()
        manifest[name] = hashlib.sha256(data).hexdigest()
        self.manifest_path.write_text(json.dumps(manifest, sort_keys=True, indent=1))
        return op

    def preload_complex(self, cx) -> None:
        """Fill the d_k cache of a complex from disk (building what is missing)."""
        for k in range(4):
            cx._d[k] = self.get(f"d{k}", lambda k=k: cx.d_matrix(k))
