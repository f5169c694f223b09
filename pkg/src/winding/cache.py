"""On-disk cache for expensive exact objects (basis tables, series).

Entries are JSON files named by (format version, kind, params hash).  A
version mismatch, or a file that fails to parse, counts as a miss.
"""
from __future__ import annotations

import hashlib
import json
import os
import time
from pathlib import Path
from typing import Callable

from .spectral import FORMAT_VERSION, BasisCoeffTable, basis_table

ENV_VAR = "WINDING_CACHE_DIR"


def canonical_json(obj) -> str:
    return json.dumps(obj, sort_keys=True, separators=(",", ":"))


def params_hash(params: dict) -> str:
    return hashlib.sha256(canonical_json(params).encode()).hexdigest()[:20]


class Cache:
    def __init__(self, root: str | os.PathLike | None = None) -> None:
        if root is None:
            root = os.environ.get(ENV_VAR)
        self.root = Path(root) if root else None

    @property
    def enabled(self) -> bool:
        return self.root is not None

    def path(self, kind: str, params: dict) -> Path:
        return self.root / f"v{FORMAT_VERSION}-{kind}-{params_hash(params)}.json"

    def get(self, kind: str, params: dict):
        if not self.enabled:
            return None
        p = self.path(kind, params)
        try:
            entry = json.loads(p.read_text(encoding="utf-8"))
        except (OSError, ValueError):
            return None
        if entry.get("version") != FORMAT_VERSION or entry.get("kind") != kind or entry.get("params") != params:
            return None
        return entry["payload"]

    def put(self, kind: str, params: dict, payload) -> None:
        if not self.enabled:
            return
        self.root.mkdir(parents=True, exist_ok=True)
        entry = {"version": FORMAT_VERSION, "kind": kind, "params": params,
                 "created": time.time(), "payload": payload}
        p = self.path(kind, params)
        tmp = p.with_suffix(".tmp")
        tmp.write_text(canonical_json(entry), encoding="utf-8")
        os.replace(tmp, p)

    def fetch(self, kind: str, params: dict, compute: Callable[[], dict]) -> tuple[dict, bool]:
        """(payload, hit)."""
        got = self.get(kind, params)
        if got is not None:
            return got, True
        payload = compute()
        self.put(kind, params, payload)
        return payload, False


def cached_basis_table(max_l: int, max_m: int, order: int, cache: Cache | None = None) -> BasisCoeffTable:
    cache = cache or Cache()
    params = {"max_l": max_l, "max_m": max_m, "order": order}
    payload, _ = cache.fetch("basis", params, lambda: basis_table(max_l, max_m, order).to_json())
    return BasisCoeffTable.from_json(payload)
