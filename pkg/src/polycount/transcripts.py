"""Replayable logs of oracle queries made by the reduction pipelines."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Any, Callable


@dataclass(frozen=True)
class TranscriptEntry:
    purpose: str
    query: dict[str, Any]  # enough data to re-issue the query
    answer: str  # exact decimal / rational string
    derived: str  # value the pipeline computed from the answer


@dataclass
class OracleTranscript:
    entries: list[TranscriptEntry] = field(default_factory=list)

    def record(self, purpose: str, query: dict[str, Any], answer: Any, derived: Any) -> None:
        self.entries.append(TranscriptEntry(purpose, dict(query), str(answer), str(derived)))

    def __len__(self) -> int:
        return len(self.entries)

    def write_jsonl(self, path: str) -> None:
        with open(path, "w", encoding="utf-8") as f:
            for i, e in enumerate(self.entries):
                f.write(
                    json.dumps(
                        {
                            "index": i,
                            "purpose": e.purpose,
                            "query": e.query,
                            "answer": e.answer,
                            "derived": e.derived,
                        }
                    )
                    + "\n"
                )

    def replay(self, runner: Callable[[dict[str, Any]], Any]) -> list[int]:
        """Re-run every recorded query; return indices whose answers changed."""
        return [
            i for i, e in enumerate(self.entries) if str(runner(e.query)) != e.answer
        ]
