"""The user clarification channel: interactive in live runs, scripted in replay."""
from __future__ import annotations

from typing import Protocol


class InteractionError(RuntimeError):
    """The user channel cannot produce an answer (script exhausted, no tty)."""


class UserChannel(Protocol):
    def ask(self, question: str) -> str: ...


class ScriptedUserChannel:
    def __init__(self, answers: list[str]):
        self.answers = list(answers)
        self.position = 0

    def ask(self, question: str) -> str:
        if self.position >= len(self.answers):
            raise InteractionError(f"scripted answers exhausted at question: {question!r}")
        answer = self.answers[self.position]
        self.position += 1
        return answer


class TerminalUserChannel:
    def ask(self, question: str) -> str:
        try:
            return input(f"{question}\n> ")
        except EOFError as exc:
            raise InteractionError("no interactive terminal attached") from exc


class RefusingUserChannel:
    """Default when no channel is configured: any question is a failure."""

    def ask(self, question: str) -> str:
        raise InteractionError(f"no user channel available for question: {question!r}")
