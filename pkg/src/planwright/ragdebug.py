"""Retrieval-assisted repair of rejected planning artifacts.

When the solver or validator rejects a generated problem, the debugger
retrieves the closest reference-documentation snippets for the error
message and asks the model for a concrete correction. A proposal is
re-validated before being returned; if it still fails after one retry, the
best attempt is returned flagged unverified.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path
from typing import Callable, Iterable, Optional, Sequence, Union

from .agents.generation import extract_json
from .agents.prompts import load_prompt
from .gateway import ChatRequest, Gateway, system, user
from .gateway.embedding import Embedder, HashedBagOfWordsEmbedder
from .memory import CosineScore

SECTION_MARKER = "## "


@dataclass(frozen=True)
class DocSnippet:
    title: str
    text: str
    source: str
    embedding: tuple


@dataclass
class DocIndex:
    snippets: list[DocSnippet] = field(default_factory=list)
    embedder_id: str = ""

    def to_json(self) -> dict:
        return {
            "embedder": self.embedder_id,
            "snippets": [
                {"title": s.title, "text": s.text, "source": s.source, "embedding": list(s.embedding)}
                for s in self.snippets
            ],
        }

    def save(self, path: Union[str, Path]) -> None:
        Path(path).write_text(json.dumps(self.to_json(), indent=2) + "\n", encoding="utf-8")

    @staticmethod
    def from_json(data: dict) -> "DocIndex":
        return DocIndex(
            snippets=[
                DocSnippet(s["title"], s["text"], s.get("source", ""), tuple(s["embedding"]))
                for s in data.get("snippets", [])
            ],
            embedder_id=data.get("embedder", ""),
        )

    @staticmethod
    def load(path: Union[str, Path]) -> "DocIndex":
        return DocIndex.from_json(json.loads(Path(path).read_text(encoding="utf-8")))


def split_sections(text: str, source: str) -> list[tuple[str, str, str]]:
    """Split on '## ' markers; prose before the first marker is preamble."""
    sections: list[tuple[str, str, str]] = []
    title: Optional[str] = None
    body: list[str] = []
    for line in text.splitlines():
        if line.startswith(SECTION_MARKER):
            if title is not None:
                sections.append((title, "\n".join(body).strip(), source))
            title = line[len(SECTION_MARKER):].strip()
            body = []
        elif title is not None:
            body.append(line)
    if title is not None:
        sections.append((title, "\n".join(body).strip(), source))
    return sections


def index_docs(corpus_files: Iterable[Union[str, Path]], embedder: Optional[Embedder] = None) -> DocIndex:
    """Build the offline index: one entry per documented section."""
    embedder = embedder or HashedBagOfWordsEmbedder()
    paths = sorted(Path(p) for p in corpus_files)
    if not paths:
        raise ValueError("empty corpus")
    index = DocIndex(embedder_id=embedder.id)
    for path in paths:
        text = path.read_text(encoding="utf-8")
        for title, body, source in split_sections(text, path.name):
            content = f"{title}\n{body}" if body else title
            index.snippets.append(DocSnippet(title, body, source, tuple(embedder.embed(content))))
    if not index.snippets:
        raise ValueError("corpus contained no '## ' sections")
    return index


def retrieve_snippets(index: DocIndex, query: str, k: int, embedder: Optional[Embedder] = None) -> list[tuple[DocSnippet, float]]:
    """Exact top-k cosine over the index, ties in index order."""
    if k < 1:
        raise ValueError("k must be >= 1")
    embedder = embedder or HashedBagOfWordsEmbedder()
    query_vec = embedder.embed(query)
    scored = [
        (CosineScore.of(query_vec, snippet.embedding), position, snippet)
        for position, snippet in enumerate(index.snippets)
    ]
    scored.sort(key=lambda item: item[1])
    scored.sort(key=lambda item: item[0], reverse=True)
    return [(snippet, score.as_float()) for score, _, snippet in scored[:k]]


@dataclass
class Diagnosis:
    snippets: list[str]
    proposal: str
    note: str
    verified: bool

    def to_json(self) -> dict:
        return {"snippets": self.snippets, "proposal": self.proposal, "note": self.note, "verified": self.verified}


def bundled_index() -> DocIndex:
    """The prebuilt index over the shipped documentation corpus."""
    from .data_paths import data_root

    path = data_root() / "doc_index.json"
    if path.exists():
        return DocIndex.load(path)
    from .data_paths import bundled_corpus_paths

    return index_docs(bundled_corpus_paths())


CheckFn = Callable[[str], Sequence[str]]


def _default_check(proposal: str) -> list[str]:
    try:
        json.loads(proposal)
        return []
    except json.JSONDecodeError as exc:
        return [f"proposal is not valid JSON: {exc}"]


def diagnose(
    error_message: str,
    artifact_text: str,
    index: DocIndex,
    gateway: Gateway,
    k: int = 4,
    check: CheckFn = _default_check,
    model: str = "default",
    temperature: float = 0.0,
) -> Diagnosis:
    hits = retrieve_snippets(index, error_message, k) if index.snippets else []
    snippet_texts = [f"{s.title}: {s.text}" for s, _ in hits]
    body = (
        f"Error:\n{error_message}\n\nOffending artifact:\n{artifact_text}\n\n"
        + ("Documentation:\n" + "\n---\n".join(snippet_texts) if snippet_texts else "Documentation: (none retrieved)")
    )
    messages = (system(load_prompt("rag_debugger")), user(body))
    proposal_text = ""
    note = ""
    for attempt in range(2):
        response = gateway.chat(ChatRequest(messages, temperature=temperature, model=model))
        try:
            data = extract_json(response.content)
            proposal_text = json.dumps(data["proposal"], indent=2)
            note = str(data.get("note", ""))
        except (json.JSONDecodeError, KeyError, TypeError):
            proposal_text, note = response.content, "debugger answer was not in the expected format"
            problems: Sequence[str] = ["debugger answer was not parseable"]
        else:
            problems = check(proposal_text)
        if not problems:
            return Diagnosis(snippet_texts, proposal_text, note, verified=True)
        if attempt == 0:
            messages = messages + (
                response,
                user("Your proposal failed validation:\n- " + "\n- ".join(problems) + "\nSend a corrected proposal."),
            )
    return Diagnosis(snippet_texts, proposal_text, note, verified=False)
