"""Storage providers and result callbacks.

A storage provider is a tiny save/restore-bytes interface used for
caching fitted artifacts; restores of absent keys return None rather
than raising. Artifacts travel inside a versioned binary envelope so a
cache written by an incompatible release refuses to load instead of
deserializing garbage.

Callbacks observe the pipeline (config echo, metrics, tables) and must
never break a run: exceptions are logged and swallowed.
"""

from __future__ import annotations

import json
import logging
import os
import struct
import tempfile
from dataclasses import dataclass, field
from pathlib import Path
from typing import Optional

from .errors import CacheCorruptError, PathTraversalError

log = logging.getLogger(__name__)

ARTIFACT_MAGIC = b"RBAF"
ARTIFACT_VERSION = 1


def pack_artifact(payload: bytes) -> bytes:
    return ARTIFACT_MAGIC + struct.pack(">H", ARTIFACT_VERSION) + payload


def unpack_artifact(blob: bytes) -> bytes:
    if len(blob) < 6 or blob[:4] != ARTIFACT_MAGIC:
        raise CacheCorruptError("not an artifact envelope")
    (version,) = struct.unpack(">H", blob[4:6])
    if version != ARTIFACT_VERSION:
        raise CacheCorruptError(
            f"artifact version {version} incompatible with {ARTIFACT_VERSION}")
    return blob[6:]


def _check_key(key: str) -> str:
    path = Path(key)
    if path.is_absolute() or ".." in path.parts:
        raise PathTraversalError(f"illegal storage key {key!r}")
    return key


def atomic_write(path: Path, data: bytes) -> None:
    """Write via a temp file + rename so readers never see partial bytes."""
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=".tmp-")
    try:
        with os.fdopen(fd, "wb") as fh:
            fh.write(data)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


class LocalStorage:
    """Filesystem-backed provider rooted at a directory."""

    def __init__(self, root):
        self.root = Path(root)

    def save(self, key: str, payload: bytes) -> None:
        atomic_write(self.root / _check_key(key), payload)

    def restore(self, key: str) -> Optional[bytes]:
        path = self.root / _check_key(key)
        if not path.exists():
            return None
        return path.read_bytes()

    def save_artifact(self, key: str, payload: bytes) -> None:
        self.save(key, pack_artifact(payload))

    def restore_artifact(self, key: str) -> Optional[bytes]:
        blob = self.restore(key)
        if blob is None:
            return None
        return unpack_artifact(blob)


@dataclass(frozen=True)
class Event:
    kind: str  # "config" | "metric" | "table"
    payload: dict = field(default_factory=dict)


class Callback:
    """Observer hooks; subclasses override what they care about."""

    def on_config(self, config: dict) -> None:
        pass

    def on_metric(self, name: str, value, tags: dict) -> None:
        pass

    def on_table(self, rows: list) -> None:
        pass


class JsonlCallback(Callback):
    """Append every event as one JSON line."""

    def __init__(self, path):
        self.path = Path(path)
        self.path.parent.mkdir(parents=True, exist_ok=True)

    def _append(self, record: dict) -> None:
        with open(self.path, "a", encoding="utf-8") as fh:
            fh.write(json.dumps(record, sort_keys=True) + "\n")

    def on_config(self, config: dict) -> None:
        self._append({"event": "config", "config": config})

    def on_metric(self, name: str, value, tags: dict) -> None:
        self._append({"event": "metric", "name": name, "value": value, "tags": tags})

    def on_table(self, rows: list) -> None:
        self._append({"event": "table", "rows": rows})


def emit(callbacks, event: Event) -> None:
    """Deliver an event to every callback in registration order.

    A failing callback is logged and skipped; the rest still run.
    """
    for cb in callbacks:
        try:
            if event.kind == "config":
                cb.on_config(event.payload.get("config", {}))
            elif event.kind == "metric":
                cb.on_metric(event.payload.get("name", ""),
                             event.payload.get("value"),
                             event.payload.get("tags", {}))
            elif event.kind == "table":
                cb.on_table(event.payload.get("rows", []))
            else:
                raise ValueError(f"unknown event kind {event.kind!r}")
        except Exception:
            log.exception("callback %r failed on %s event", cb, event.kind)
