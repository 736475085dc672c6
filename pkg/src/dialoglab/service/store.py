"""Append-only JSONL persistence for sessions, messages, and surveys.

One events file per calendar day plus a small index mapping session ids to
their file. Surveys rewrite the index through a temp file and rename, so a
crash can lose at most the line being written, never corrupt existing data.
"""

from __future__ import annotations

import json
import math
import os
import time
from pathlib import Path
from typing import Iterable, Iterator

SURVEY_SCALES = ("satisfaction", "efficiency", "naturalness", "rule_likeness")


class EventStore:
    def __init__(self, root: str | Path, clock=time.time):
        self.root = Path(root)
        self.root.mkdir(parents=True, exist_ok=True)
        self.clock = clock

    def _index_path(self) -> Path:
        return self.root / "index.json"

    def _day_file(self) -> Path:
        day = time.strftime("%Y-%m-%d", time.gmtime(self.clock()))
        return self.root / f"events-{day}.jsonl"

    def _read_index(self) -> dict:
        path = self._index_path()
        if not path.exists():
            return {"files": [], "sessions": {}}
        return json.loads(path.read_text())

    def _write_index(self, index: dict) -> None:
        tmp = self._index_path().with_suffix(".json.tmp")
        tmp.write_text(json.dumps(index, sort_keys=True, indent=2) + "\n")
        os.replace(tmp, self._index_path())

    def append(self, record: dict) -> None:
        """One event per line; the index learns new files and session homes."""
        path = self._day_file()
        line = json.dumps(record, sort_keys=True) + "\n"
        with path.open("a", encoding="utf-8") as handle:
            handle.write(line)
        index = self._read_index()
        changed = False
        if path.name not in index["files"]:
            index["files"].append(path.name)
            changed = True
        session_id = record.get("session_id")
        if session_id and session_id not in index["sessions"]:
            index["sessions"][session_id] = path.name
            changed = True
        if changed or record.get("kind") == "survey":
            self._write_index(index)

    def records(self) -> Iterator[dict]:
        for name in self._read_index()["files"]:
            path = self.root / name
            if not path.exists():
                continue
            with path.open(encoding="utf-8") as handle:
                for line in handle:
                    if line.strip():
                        yield json.loads(line)


def _mean_ci(values: list[float]) -> dict:
    n = len(values)
    mean = sum(values) / n
    if n < 2:
        return {"mean": mean, "ci": 0.0, "n": n}
    variance = sum((v - mean) ** 2 for v in values) / (n - 1)
    return {"mean": mean, "ci": 1.96 * math.sqrt(variance) / math.sqrt(n), "n": n}


def survey_report(surveys: Iterable[dict]) -> dict:
    """Per-system means with 95% normal-approximation confidence intervals."""
    grouped: dict[str, list[dict]] = {}
    for survey in surveys:
        grouped.setdefault(survey["system_id"], []).append(survey)
    report = {}
    for system_id, rows in sorted(grouped.items()):
        entry = {"solved": _mean_ci([float(r["solved"]) for r in rows])}
        for scale in SURVEY_SCALES:
            entry[scale] = _mean_ci([float(r[scale]) for r in rows])
        report[system_id] = entry
    return report
