from __future__ import annotations

import json

import pytest

from planwright.data_paths import bundled_corpus_paths as corpus_paths
from planwright.domains import blocksworld_domain
from planwright.gateway import Gateway, HashedBagOfWordsEmbedder, ScriptedBackend, assistant
from planwright.ir import jsonio, validate_domain
from planwright.memory import CosineScore
from planwright.ragdebug import DocIndex, diagnose, index_docs, retrieve_snippets


@pytest.fixture(scope="module")
def index() -> DocIndex:
    return index_docs(corpus_paths())


class TestIndex:
    def test_bundled_corpus_has_forty_snippets(self, index):
        assert len(index.snippets) == 40

    def test_empty_corpus_is_an_error(self):
        with pytest.raises(ValueError):
            index_docs([])

    def test_reindex_is_identical(self, index, tmp_path):
        again = index_docs(corpus_paths())
        a, b = tmp_path / "a.json", tmp_path / "b.json"
        index.save(a)
        again.save(b)
        assert a.read_bytes() == b.read_bytes()

    def test_index_file_round_trip(self, index, tmp_path):
        path = tmp_path / "index.json"
        index.save(path)
        loaded = DocIndex.load(path)
        assert loaded.to_json() == index.to_json()


class TestRetrieve:
    def test_matches_brute_force_ranking(self, index):
        query = "unknown-fluent color is not declared"
        embedder = HashedBagOfWordsEmbedder()
        qvec = embedder.embed(query)
        scored = [
            (CosineScore.of(qvec, s.embedding), pos, s)
            for pos, s in enumerate(index.snippets)
        ]
        scored.sort(key=lambda item: item[1])
        scored.sort(key=lambda item: item[0], reverse=True)
        expected = [s.title for _, _, s in scored[:4]]
        got = [s.title for s, _ in retrieve_snippets(index, query, k=4)]
        assert got == expected

    def test_relevant_snippet_found_for_unknown_fluent(self, index):
        hits = retrieve_snippets(index, "unknown-fluent: fluent color in goal is not declared", k=4)
        assert any(s.title == "unknown-fluent" for s, _ in hits)


class TestDiagnose:
    def broken_domain_text(self) -> str:
        domain = blocksworld_domain()
        data = jsonio.domain_to_json(domain)
        data["actions"][2]["precondition"]["children"][0]["fluent"] = "grasping"  # undeclared
        return json.dumps(data, indent=2)

    def domain_check(self, proposal: str) -> list[str]:
        try:
            domain = jsonio.domain_from_json(json.loads(proposal))
        except (json.JSONDecodeError, jsonio.IRDecodeError) as exc:
            return [str(exc)]
        return [str(v) for v in validate_domain(domain)]

    def test_verified_fix(self, index):
        fixed = jsonio.domain_to_json(blocksworld_domain())
        gw = Gateway(ScriptedBackend([assistant(json.dumps({"proposal": fixed, "note": "renamed grasping back to holding"}))]))
        result = diagnose("unknown-fluent: grasping", self.broken_domain_text(), index, gw, check=self.domain_check)
        assert result.verified
        assert self.domain_check(result.proposal) == []
        assert result.snippets

    def test_empty_index_still_consults_gateway(self):
        fixed = jsonio.domain_to_json(blocksworld_domain())
        gw = Gateway(ScriptedBackend([assistant(json.dumps({"proposal": fixed, "note": "ok"}))]))
        result = diagnose("some error", "{}", DocIndex(), gw, check=self.domain_check)
        assert result.verified
        assert result.snippets == []

    def test_retry_then_unverified(self, index):
        bad = assistant(json.dumps({"proposal": {"name": 42}, "note": "dubious"}))
        gw = Gateway(ScriptedBackend([bad, bad]))
        result = diagnose("unknown-fluent: grasping", self.broken_domain_text(), index, gw, check=self.domain_check)
        assert not result.verified

    def test_retry_then_success(self, index):
        fixed = jsonio.domain_to_json(blocksworld_domain())
        gw = Gateway(
            ScriptedBackend(
                [
                    assistant(json.dumps({"proposal": {"name": 42}, "note": "wrong"})),
                    assistant(json.dumps({"proposal": fixed, "note": "second try"})),
                ]
            )
        )
        result = diagnose("unknown-fluent: grasping", self.broken_domain_text(), index, gw, check=self.domain_check)
        assert result.verified
