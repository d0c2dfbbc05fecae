"""Append-only result cache: one JSON record per line, later lines win."""

from __future__ import annotations

import os
from pathlib import Path

from .bounds import ScanRecord


class ResultCache:
    """Sweep results keyed by (n,k,r,s,mode); appends are whole lines."""

    def __init__(self, path: str | os.PathLike):
        self.path = Path(path)

    def load(self) -> dict[str, ScanRecord]:
        if not self.path.exists():
            return {}
        records: dict[str, ScanRecord] = {}
        with self.path.open("r", encoding="utf-8") as handle:
            for line in handle:
                line = line.strip()
                if not line:
                    continue
                record = ScanRecord.from_json(line)
                records[record.key] = record
        return records

    def append(self, record: ScanRecord) -> None:
        with self.path.open("a", encoding="utf-8") as handle:
            handle.write(record.to_json() + "\n")
