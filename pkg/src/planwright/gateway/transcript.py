"""Recorded chat transcripts: the determinism harness.

A transcript pairs each outgoing request's fingerprint with the response
that was served. Replaying consumes the pairs in order; a request whose
fingerprint differs from the recorded one means the code under test
diverged from the fixture, which is an error, not a fallback.
"""
from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass, field
from pathlib import Path
from typing import Union

from .messages import AgentMessage, ChatRequest


class TranscriptError(ValueError):
    pass


class FingerprintMismatch(TranscriptError):
    def __init__(self, position: int, detail: str):
        self.position = position
        super().__init__(f"replay diverged at exchange {position}: {detail}")


def fingerprint(request: ChatRequest) -> str:
    """Hash of the semantic request content: roles, texts, tool calls, and
    the tool schemas offered. Timestamps, model ids, and sampling settings
    are deliberately excluded so fixtures stay stable."""
    payload = {
        "messages": [m.to_json() for m in request.messages],
        "tools": [t.to_json() for t in request.tools],
    }
    canonical = json.dumps(payload, sort_keys=True, separators=(",", ":"))
    return hashlib.sha256(canonical.encode("utf-8")).hexdigest()


@dataclass
class Exchange:
    fingerprint: str
    response: AgentMessage


@dataclass
class Transcript:
    exchanges: list[Exchange] = field(default_factory=list)
    embeddings: dict[str, tuple] = field(default_factory=dict)

    def append(self, fp: str, response: AgentMessage) -> None:
        self.exchanges.append(Exchange(fp, response))

    def to_json(self) -> dict:
        return {
            "version": 1,
            "exchanges": [
                {"fingerprint": e.fingerprint, "response": e.response.to_json()}
                for e in self.exchanges
            ],
            "embeddings": {text: list(vec) for text, vec in sorted(self.embeddings.items())},
        }

    def save(self, path: Union[str, Path]) -> None:
        Path(path).write_text(json.dumps(self.to_json(), indent=2) + "\n", encoding="utf-8")

    @staticmethod
    def from_json(data: dict) -> "Transcript":
        if data.get("version") != 1:
            raise TranscriptError(f"unsupported transcript version {data.get('version')!r}")
        exchanges = []
        for entry in data.get("exchanges", []):
            # Replay is positional, so the same fingerprint may legitimately
            # recur when two identical requests happen at different points.
            exchanges.append(Exchange(entry["fingerprint"], AgentMessage.from_json(entry["response"])))
        embeddings = {text: tuple(vec) for text, vec in data.get("embeddings", {}).items()}
        return Transcript(exchanges, embeddings)

    @staticmethod
    def load(path: Union[str, Path]) -> "Transcript":
        try:
            data = json.loads(Path(path).read_text(encoding="utf-8"))
        except FileNotFoundError:
            raise
        except json.JSONDecodeError as exc:
            raise TranscriptError(f"transcript {path} is not valid JSON: {exc}") from exc
        return Transcript.from_json(data)
