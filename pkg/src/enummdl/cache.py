"""Persistent cache of exact NML parametric complexities.

Text format, one entry per line::

    m n lognat_value

with the value in nats printed with 17 significant digits, which round-trips
a float64 exactly. Missing entries are computed and appended with a single
``write`` on an ``O_APPEND`` descriptor.
"""
from __future__ import annotations

import logging
import os
import threading
from pathlib import Path
from typing import Dict, Tuple

from .multinomial import nml_log_comp_m

log = logging.getLogger(__name__)


class ComplexityCache:
    def __init__(self, path: "str | os.PathLike"):
        self.path = Path(path)
        self._values: Dict[Tuple[int, int], float] = {}
        self._lock = threading.Lock()
        if self.path.exists():
            self._load()

    def _load(self) -> None:
        with self.path.open() as fh:
            for lineno, line in enumerate(fh, 1):
                parts = line.split()
                if not parts:
                    continue
                try:
                    if len(parts) != 3:
                        raise ValueError
                    m, n, value = int(parts[0]), int(parts[1]), float(parts[2])
                except ValueError:
                    log.warning("%s:%d: skipping malformed line %r", self.path, lineno, line)
                    continue
                self._values[(m, n)] = value

    def __len__(self) -> int:
        return len(self._values)

    def __contains__(self, key: Tuple[int, int]) -> bool:
        return key in self._values

    def get(self, n: int, m: int) -> float:
        """``ln COMP`` for ``(n, m)``, computed and persisted on a miss."""
        key = (m, n)
        with self._lock:
            if key in self._values:
                return self._values[key]
        value = nml_log_comp_m(n, m)
        with self._lock:
            if key not in self._values:
                self._values[key] = value
                self._append(m, n, value)
        return self._values[key]

    def _append(self, m: int, n: int, value: float) -> None:
        self.path.parent.mkdir(parents=True, exist_ok=True)
        line = f"{m} {n} {value:.17g}\n".encode()
        fd = os.open(self.path, os.O_WRONLY | os.O_APPEND | os.O_CREAT, 0o644)
        try:
            os.write(fd, line)
        finally:
            os.close(fd)
