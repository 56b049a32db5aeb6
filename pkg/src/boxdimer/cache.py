"""On-disk cache of computed series.

Entries are keyed by (kind, params, N) and tagged with a hash of the source
files that produce them; a tag mismatch is a miss.  Writes go to a temporary
file in the same directory and are renamed into place.
"""

from __future__ import annotations

import hashlib
import json
import os
import tempfile
from functools import lru_cache
from pathlib import Path

ENV_VAR = "BOXDIMER_CACHE_DIR"
_ALGORITHM_SOURCES = ("qseries.py", "planepart.py", "hexlattice.py",
                      "doublebox.py", "doubledimer.py", "condense.py")


@lru_cache(maxsize=1)
def code_version() -> str:
    h = hashlib.sha256()
    here = Path(__file__).parent
    for name in _ALGORITHM_SOURCES:
        h.update(name.encode())
        h.update((here / name).read_bytes())
    return h.hexdigest()[:16]


def default_dir() -> Path:
    env = os.environ.get(ENV_VAR)
    if env:
        return Path(env)
    return Path(os.environ.get("XDG_CACHE_HOME", Path.home() / ".cache")) / "boxdimer"


def dumps(obj) -> str:
    """Deterministic JSON: sorted keys, fixed separators, trailing newline."""
    return json.dumps(obj, sort_keys=True, indent=2) + "\n"


class SeriesCache:
    def __init__(self, root: Path | str | None = None, enabled: bool = True):
        self.root = Path(root) if root is not None else default_dir()
        self.enabled = enabled
        if enabled:
            try:
                self.root.mkdir(parents=True, exist_ok=True)
            except OSError:
                self.enabled = False
            else:
                if not os.access(self.root, os.W_OK):
                    self.enabled = False

    def _path(self, kind: str, params: tuple, trunc_order: int) -> Path:
        tag = "_".join(str(p) for p in params) or "none"
        return self.root / f"{kind}-{tag}-N{trunc_order}.json"

    def get(self, kind: str, params: tuple, trunc_order: int) -> dict | None:
        if not self.enabled:
            return None
        path = self._path(kind, params, trunc_order)
        try:
            data = json.loads(path.read_text())
        except (OSError, ValueError):
            return None
        if data.get("code_version") != code_version():
            return None
        return data.get("value")

    def put(self, kind: str, params: tuple, trunc_order: int, value: dict) -> None:
        if not self.enabled:
            return
        path = self._path(kind, params, trunc_order)
        entry = {"kind": kind, "params": list(params), "trunc_order": trunc_order,
                 "code_version": code_version(), "value": value}
        fd, tmp = tempfile.mkstemp(dir=self.root, prefix=".tmp-", suffix=".json")
        try:
            with os.fdopen(fd, "w") as fh:
                fh.write(dumps(entry))
            os.replace(tmp, path)
        except BaseException:
            Path(tmp).unlink(missing_ok=True)
            raise
