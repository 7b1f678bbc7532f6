"""Append-only JSON-lines cache of Pell solutions and sqrt(p) periods."""
from __future__ import annotations

import json
import logging
import os
from dataclasses import dataclass

from class16.pell import PellSolution, period_matrix

log = logging.getLogger(__name__)

SCHEMA_VERSION = 1
DEFAULT_PATH = "class16-cache.jsonl"


@dataclass(frozen=True)
class CacheRecord:
    p: int
    d: int
    c: int
    period: tuple[int, ...]

    def to_json(self) -> str:
        return json.dumps(
            {"p": self.p, "d": str(self.d), "c": str(self.c), "period": list(self.period), "v": SCHEMA_VERSION},
            sort_keys=True,
            separators=(",", ":"),
        )

    @classmethod
    def from_json(cls, line: str) -> "CacheRecord":
        obj = json.loads(line)
        if obj.get("v") != SCHEMA_VERSION:
            raise ValueError(f"schema version {obj.get('v')!r}")
        rec = cls(int(obj["p"]), int(obj["d"]), int(obj["c"]), tuple(int(b) for b in obj["period"]))
        rec.validate()
        return rec

    def validate(self) -> None:
        if self.d * self.d - self.p * self.c * self.c != 1:
            raise ValueError(f"d^2 - p c^2 != 1 for p={self.p}")
        a, _, _, d = period_matrix(self.period)
        if a + d != 2 * self.d:
            raise ValueError(f"period inconsistent with d for p={self.p}")

    def pell(self) -> PellSolution:
        return PellSolution(self.p, self.d, self.c)


class PellCache:
    """Loaded once; new records are appended by the single owning writer."""

    def __init__(self, path: str | os.PathLike):
        self.path = os.fspath(path)
        self.records: dict[int, CacheRecord] = {}
        self._load()

    def _load(self) -> None:
        if not os.path.exists(self.path):
            return
        with open(self.path, encoding="utf-8") as fh:
            for lineno, line in enumerate(fh, 1):
                if not line.strip():
                    continue
                try:
                    rec = CacheRecord.from_json(line)
                except (ValueError, KeyError, TypeError) as exc:
                    log.warning("%s:%d: skipping corrupt cache line (%s)", self.path, lineno, exc)
                    continue
                self.records.setdefault(rec.p, rec)

    def get(self, p: int) -> CacheRecord | None:
        return self.records.get(p)

    def __contains__(self, p: int) -> bool:
        return p in self.records

    def __len__(self) -> int:
        return len(self.records)

    def append(self, records) -> int:
        new = [r for r in records if r.p not in self.records]
        if not new:
            return 0
        with open(self.path, "a", encoding="utf-8") as fh:
            for rec in new:
                fh.write(rec.to_json() + "\n")
                self.records[rec.p] = rec
        return len(new)
