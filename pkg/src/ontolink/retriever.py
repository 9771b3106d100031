"""Fuse lexical and semantic hits into one rule-ordered candidate list.

Fusion never mixes scores across branches: the lexical list is concatenated
ahead of the semantic list, deduplicated by CURIE (first occurrence wins),
and then re-tiered: exact surface matches of the mention first, candidates
whose label or a single synonym covers every mention token second, everything
else third, each tier keeping its prior relative order.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Literal as LiteralType
from typing import Mapping

from .errors import UnknownCurieError
from .ingest.dump import records_by_curie
from .ingest.model import EntityRecord
from .lexical import (
    BM25Params,
    LexicalIndex,
    ScoredHit,
    build_lexical_index,
    search_lexical,
    tokenize,
)
from .vectors import (
    EmbeddingProvider,
    HashingEmbedder,
    VectorIndex,
    build_vector_index,
    embed_query,
    search_semantic,
)

Branch = LiteralType["lexical", "semantic"]


@dataclass(frozen=True)
class RetrievalConfig:
    k_lex: int = 15
    k_sem: int = 15
    k_tot: int | None = None  # defaults to k_lex + k_sem
    snippet_chars: int = 300
    top_synonyms: int = 5

    def __post_init__(self) -> None:
        if min(self.k_lex, self.k_sem, self.snippet_chars, self.top_synonyms) < 0:
            raise ValueError("retrieval counts must be non-negative")
        if self.k_tot is None:
            object.__setattr__(self, "k_tot", self.k_lex + self.k_sem)
        elif self.k_tot < 0 or self.k_tot > self.k_lex + self.k_sem:
            raise ValueError("k_tot must lie in [0, k_lex + k_sem]")


@dataclass(frozen=True)
class Mention:
    text: str
    context: str | None = None

    def __post_init__(self) -> None:
        object.__setattr__(self, "text", self.text.strip())
        if not self.text:
            raise ValueError("mention text must be non-empty")

    def semantic_query(self) -> str:
        return f"{self.text} {self.context}" if self.context else self.text


@dataclass
class Candidate:
    curie: str
    label: str
    matched_surface: str | None
    synonyms_shown: list[str]
    definition_snippet: str
    relations_shown: list[tuple[str, list[str]]]
    branch: Branch
    branch_rank: int


@dataclass
class SearchIndexes:
    """Everything retrieval needs, built over one dump."""

    records: dict[str, EntityRecord]
    lexical: LexicalIndex
    vectors: VectorIndex
    embedder: EmbeddingProvider

    @classmethod
    def build(
        cls,
        records: list[EntityRecord],
        params: BM25Params | None = None,
        embedder: EmbeddingProvider | None = None,
    ) -> "SearchIndexes":
        embedder = embedder or HashingEmbedder()
        return cls(
            records=records_by_curie(records),
            lexical=build_lexical_index(records, params),
            vectors=build_vector_index(records, embedder),
            embedder=embedder,
        )


def candidate_payload(
    records: Mapping[str, EntityRecord],
    hit: ScoredHit,
    branch: Branch,
    rank: int,
    config: RetrievalConfig,
) -> Candidate:
    record = records.get(hit.curie)
    if record is None:
        raise UnknownCurieError(f"hit references {hit.curie}, which is not in the dump")
    definition = record.definition
    if len(definition) > config.snippet_chars:
        definition = definition[: config.snippet_chars] + "…"
    return Candidate(
        curie=record.curie,
        label=record.label,
        matched_surface=hit.matched_surface,
        synonyms_shown=record.synonyms[: config.top_synonyms],
        definition_snippet=definition,
        relations_shown=[(name, targets[:3]) for name, targets in record.relations.items()],
        branch=branch,
        branch_rank=rank,
    )


def _exact_surface(record: EntityRecord, mention_text: str) -> str | None:
    wanted = mention_text.lower()
    if record.label.lower() == wanted:
        return record.label
    for synonym in record.synonyms:
        if synonym.lower() == wanted:
            return synonym
    return None


def _covers_tokens(record: EntityRecord, mention_tokens: set[str]) -> bool:
    # Coverage is judged against the label or one synonym at a time, never
    # their union: a surface form is a single string.
    for surface in (record.label, *record.synonyms):
        if mention_tokens <= set(tokenize(surface)):
            return True
    return False


def fuse_candidates(
    candidates: list[Candidate],
    mention: Mention,
    records: Mapping[str, EntityRecord],
    k_tot: int,
) -> list[Candidate]:
    """Dedup by CURIE (first wins), promote exact matches, then token-covering
    candidates, then the rest, all order-stable; truncate to k_tot."""
    deduped: list[Candidate] = []
    seen: set[str] = set()
    for candidate in candidates:
        if candidate.curie not in seen:
            seen.add(candidate.curie)
            deduped.append(candidate)

    mention_tokens = set(tokenize(mention.text))
    exact: list[Candidate] = []
    covering: list[Candidate] = []
    rest: list[Candidate] = []
    for candidate in deduped:
        record = records.get(candidate.curie)
        if record is None:
            raise UnknownCurieError(f"candidate {candidate.curie} is not in the dump")
        surface = _exact_surface(record, mention.text)
        if surface is not None:
            if candidate.matched_surface is None:
                candidate.matched_surface = surface
            exact.append(candidate)
        elif mention_tokens and _covers_tokens(record, mention_tokens):
            covering.append(candidate)
        else:
            rest.append(candidate)
    return (exact + covering + rest)[:k_tot]


def retrieve(
    mention: Mention, indexes: SearchIndexes, config: RetrievalConfig | None = None
) -> list[Candidate]:
    """Hybrid candidate retrieval for one mention. Context, when present, only
    feeds the semantic query."""
    config = config or RetrievalConfig()
    lex_hits = search_lexical(indexes.lexical, mention.text, config.k_lex)
    query_vector = embed_query(indexes.embedder, mention.semantic_query())
    sem_hits = search_semantic(indexes.vectors, query_vector, config.k_sem)

    candidates = [
        candidate_payload(indexes.records, hit, "lexical", rank, config)
        for rank, hit in enumerate(lex_hits)
    ]
    candidates += [
        candidate_payload(indexes.records, hit, "semantic", rank, config)
        for rank, hit in enumerate(sem_hits)
    ]
    assert config.k_tot is not None
    return fuse_candidates(candidates, mention, indexes.records, config.k_tot)
