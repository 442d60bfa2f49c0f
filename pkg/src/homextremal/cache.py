"""Persistent JSON-lines store for component counts.

One line per entry: ``{"g": <component certificate>, "h": <target
certificate>, "count": "<decimal>"}``.  The file is append-only and held
under an exclusive lock for the life of a run.
"""

from __future__ import annotations

import fcntl
import json
import os
from pathlib import Path

from .hom import CacheIntegrityError, HomCache

ENV_VAR = "HOMEXTREMAL_CACHE_DIR"
FILENAME = "hom-cache.jsonl"


def default_dir() -> Path:
    env = os.environ.get(ENV_VAR)
    if env:
        return Path(env)
    return Path(os.environ.get("XDG_CACHE_HOME", Path.home() / ".cache")) / "homextremal"


class PersistentCache:
    def __init__(self, directory: Path, cache: HomCache):
        self.path = Path(directory) / FILENAME
        self.cache = cache
        self._fh = None
        self._loaded: set[tuple[bytes, bytes]] = set()

    def __enter__(self) -> "PersistentCache":
        self.path.parent.mkdir(parents=True, exist_ok=True)
        self._fh = open(self.path, "a+", encoding="ascii")
        fcntl.flock(self._fh, fcntl.LOCK_EX)
        self._fh.seek(0)
        for lineno, line in enumerate(self._fh, 1):
            line = line.strip()
            if not line:
                continue
            try:
                rec = json.loads(line)
                key = (rec["g"].encode("ascii"), rec["h"].encode("ascii"))
                value = int(rec["count"])
            except (ValueError, KeyError, TypeError) as exc:
                raise CacheIntegrityError(f"{self.path}:{lineno}: unreadable entry ({exc})") from exc
            self.cache.put(key, value)
            self._loaded.add(key)
        return self

    def flush(self) -> None:
        new = sorted((k, v) for k, v in self.cache.items() if k not in self._loaded)
        for (g, h), value in new:
            self._fh.write(json.dumps({"g": g.decode(), "h": h.decode(), "count": str(value)},
                                      sort_keys=True) + "\n")
            self._loaded.add((g, h))
        self._fh.flush()

    def __exit__(self, exc_type, exc, tb) -> None:
        try:
            if exc_type is None:
                self.flush()
        finally:
            fcntl.flock(self._fh, fcntl.LOCK_UN)
            self._fh.close()
            self._fh = None
