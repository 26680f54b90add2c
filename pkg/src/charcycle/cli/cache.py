"""Content-addressed JSON cache for component localizations.

One file per entry, named by the SHA-256 of its key.  Writes go through a
temporary file and ``os.replace``, so concurrent readers never see a torn
entry; there should be a single writer.
"""

from __future__ import annotations

import hashlib
import json
import os
import tempfile
import warnings
from pathlib import Path


class CacheWarning(RuntimeWarning):
    pass


def cache_key(subproblem: str) -> str:
    return hashlib.sha256(subproblem.encode("utf-8")).hexdigest()


class DiskCache:
    """Mapping-like store for ``Localizer``; values are JSON-serializable."""

    def __init__(self, directory: str | os.PathLike):
        self.root = Path(directory)
        self.root.mkdir(parents=True, exist_ok=True)
        self.hits = 0
        self.misses = 0

    def _path(self, key: str) -> Path:
        h = cache_key(key)
        return self.root / h[:2] / f"{h}.json"

    def get(self, key: str, default=None):
        path = self._path(key)
        try:
            raw = path.read_text(encoding="utf-8")
        except FileNotFoundError:
            self.misses += 1
            return default
        try:
            entry = json.loads(raw)
            if entry["key"] != key:
                raise ValueError("key mismatch")
            value = entry["value"]
        except (ValueError, KeyError, TypeError) as e:
            warnings.warn(f"corrupt cache entry {path.name} ({e}); recomputing", CacheWarning, stacklevel=2)
            self.misses += 1
            return default
        self.hits += 1
        return value

    def __getitem__(self, key: str):
        value = self.get(key, _MISSING)
        if value is _MISSING:
            raise KeyError(key)
        return value

    def __contains__(self, key: str) -> bool:
        return self._path(key).exists()

    def __setitem__(self, key: str, value) -> None:
        path = self._path(key)
        path.parent.mkdir(exist_ok=True)
        data = json.dumps({"key": key, "value": value}, sort_keys=True)
        fd, tmp = tempfile.mkstemp(dir=path.parent, suffix=".tmp")
        try:
            with os.fdopen(fd, "w", encoding="utf-8") as fh:
                fh.write(data)
            os.replace(tmp, path)
        except BaseException:
            Path(tmp).unlink(missing_ok=True)
            raise

    def __len__(self) -> int:
        return sum(1 for _ in self.root.glob("*/*.json"))


_MISSING = object()
