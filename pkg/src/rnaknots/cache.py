"""One-JSON-file-per-key store for count tables.

Counts are written as decimal strings.  Entries from another schema version
or that fail to parse are ignored (and later overwritten); an entry that
parses but contradicts its own key is treated as corruption.
"""
from __future__ import annotations

import json
import logging
import os
import tempfile
from pathlib import Path
from typing import Optional, Sequence

log = logging.getLogger(__name__)

SCHEMA_VERSION = 1
ENV_VAR = "RNAKNOTS_CACHE_DIR"


class CacheError(RuntimeError):
    pass


def default_cache_dir() -> Path:
    env = os.environ.get(ENV_VAR)
    if env:
        return Path(env)
    return Path(os.environ.get("XDG_CACHE_HOME", Path.home() / ".cache")) / "rnaknots"


def _key_dict(k: int, lambda_min: int, method: str, order: int) -> dict:
    return {"k": k, "lambda": lambda_min, "method": method, "order": order}


class TableCache:
    def __init__(self, root: Path | str | None = None, schema_version: int = SCHEMA_VERSION):
        self.root = Path(root) if root is not None else default_cache_dir()
        self.schema_version = schema_version

    def path(self, k: int, lambda_min: int, method: str, order: int) -> Path:
        return self.root / f"k{k}_lambda{lambda_min}_{method}_order{order}.json"

    def get(self, k: int, lambda_min: int, method: str, order: int) -> Optional[list[int]]:
        p = self.path(k, lambda_min, method, order)
        if not p.exists():
            return None
        try:
            doc = json.loads(p.read_text(encoding="utf-8"))
        except (OSError, ValueError) as exc:
            log.warning("ignoring unreadable cache entry %s: %s", p, exc)
            return None
        if not isinstance(doc, dict) or doc.get("schema_version") != self.schema_version:
            return None
        if doc.get("key") != _key_dict(k, lambda_min, method, order):
            raise CacheError(f"cache entry {p} does not match its key; clear {self.root}")
        values = doc.get("values")
        if not isinstance(values, list) or not all(isinstance(v, str) and v.lstrip("-").isdigit()
                                                   for v in values):
            raise CacheError(f"cache entry {p} holds malformed values; clear {self.root}")
        return [int(v) for v in values]

    def put(self, k: int, lambda_min: int, method: str, order: int, values: Sequence[int]) -> Path:
        doc = {
            "schema_version": self.schema_version,
            "key": _key_dict(k, lambda_min, method, order),
            "values": [str(v) for v in values],
        }
        p = self.path(k, lambda_min, method, order)
        try:
            self.root.mkdir(parents=True, exist_ok=True)
            fd, tmp = tempfile.mkstemp(dir=self.root, prefix=p.name, suffix=".tmp")
            with os.fdopen(fd, "w", encoding="utf-8", newline="\n") as fh:
                json.dump(doc, fh, sort_keys=True)
            os.replace(tmp, p)
        except OSError as exc:
            raise CacheError(f"cannot write cache entry {p}: {exc}; check or clear {self.root}") from exc
        return p
