"""Scalar result cache for the expensive spectral constants.

Stores only (preset-key -> {Gamma_a, Delta_a, ...}) records with provenance;
never field grids. JSON round-trips Python floats exactly (shortest-repr),
so a cache hit reproduces the stored value bit for bit.
"""

from __future__ import annotations

import json
import time
from pathlib import Path

from . import __version__

__all__ = ["ResultCache"]


class ResultCache:
    def __init__(self, path: str | Path | None):
        self.path = Path(path) if path is not None else None
        self._data: dict = {}
        if self.path is not None and self.path.exists():
            self._data = json.loads(self.path.read_text())

    def get(self, key: str) -> dict | None:
        return self._data.get(key)

    def put(self, key: str, constants: dict, tolerances: dict | None = None) -> None:
        self._data[key] = {
            **constants,
            "provenance": {
                "version": __version__,
                "created": time.strftime("%Y-%m-%dT%H:%M:%SZ", time.gmtime()),
                "tolerances": tolerances or {},
            },
        }
        if self.path is not None:
            self.path.parent.mkdir(parents=True, exist_ok=True)
            self.path.write_text(json.dumps(self._data, indent=2, sort_keys=True))
