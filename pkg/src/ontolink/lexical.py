"""Inverted index with field-wise BM25 over concept text facets.

Each concept becomes one document with four fields: label, synonyms (all of
them, concatenated), definition, and relations (the human-readable relation
names). Query scores are the boost-weighted sum of an independent BM25 score
per field, idf = ln(1 + (N - df + 0.5) / (df + 0.5)) with df and average
length computed within the field. Repeated query tokens contribute once per
occurrence.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass, field
from math import log
from pathlib import Path
from typing import Iterable

from .errors import DuplicateCurieError, SchemaError
from .ingest.model import EntityRecord

FIELDS = ("label", "synonyms", "definition", "relations")

_TOKEN_RE = re.compile(r"[^\W_]+", re.UNICODE)


def tokenize(text: str) -> list[str]:
    """Lowercase and split on any non-alphanumeric run; no stemming, no stopwords."""
    return _TOKEN_RE.findall(text.lower())


@dataclass(frozen=True)
class BM25Params:
    k1: float = 1.2
    b: float = 0.75
    boosts: tuple[tuple[str, float], ...] = (
        ("label", 3.0),
        ("synonyms", 2.0),
        ("definition", 1.0),
        ("relations", 0.5),
    )

    def boost_map(self) -> dict[str, float]:
        return dict(self.boosts)


@dataclass(frozen=True)
class ScoredHit:
    curie: str
    score: float
    matched_surface: str | None = None


@dataclass
class LexicalIndex:
    # token -> [(doc_id, field, term_frequency)]
    postings: dict[str, list[tuple[int, str, int]]]
    doc_table: list[str]  # doc_id -> curie
    field_lengths: list[dict[str, int]]  # per doc, tokens per field
    avg_field_lengths: dict[str, float]
    params: BM25Params
    # label first, then synonyms, original casing; used for exact-surface reporting
    surfaces: list[list[str]] = field(default_factory=list)

    @property
    def doc_count(self) -> int:
        return len(self.doc_table)


def _field_texts(record: EntityRecord) -> dict[str, str]:
    return {
        "label": record.label,
        "synonyms": " ".join(record.synonyms),
        "definition": record.definition,
        "relations": " ".join(record.relations.keys()),
    }


def build_lexical_index(
    records: Iterable[EntityRecord], params: BM25Params | None = None
) -> LexicalIndex:
    params = params or BM25Params()
    ordered = sorted(records, key=lambda r: r.curie)
    for i in range(1, len(ordered)):
        if ordered[i].curie == ordered[i - 1].curie:
            raise DuplicateCurieError(f"duplicate CURIE in corpus: {ordered[i].curie}")

    postings: dict[str, list[tuple[int, str, int]]] = {}
    field_lengths: list[dict[str, int]] = []
    surfaces: list[list[str]] = []
    totals = {f: 0 for f in FIELDS}

    for doc_id, record in enumerate(ordered):
        lengths: dict[str, int] = {}
        for fname, text in _field_texts(record).items():
            tokens = tokenize(text)
            lengths[fname] = len(tokens)
            totals[fname] += len(tokens)
            counts: dict[str, int] = {}
            for token in tokens:
                counts[token] = counts.get(token, 0) + 1
            for token, tf in sorted(counts.items()):
                postings.setdefault(token, []).append((doc_id, fname, tf))
        field_lengths.append(lengths)
        surfaces.append([record.label, *record.synonyms])

    n = len(ordered)
    avg = {f: (totals[f] / n if n else 0.0) for f in FIELDS}
    return LexicalIndex(
        postings=postings,
        doc_table=[r.curie for r in ordered],
        field_lengths=field_lengths,
        avg_field_lengths=avg,
        params=params,
        surfaces=surfaces,
    )


def search_lexical(index: LexicalIndex, query: str, k: int) -> list[ScoredHit]:
    """Top-k documents by summed per-field BM25, ties broken by ascending CURIE.

    Only documents with a positive score are returned. matched_surface is set
    when the raw query equals the label or a synonym case-insensitively.
    """
    if k <= 0 or index.doc_count == 0:
        return []
    k1 = index.params.k1
    b = index.params.b
    boosts = index.params.boost_map()
    n = index.doc_count

    scores: dict[int, float] = {}
    for token in tokenize(query):
        entries = index.postings.get(token)
        if not entries:
            continue
        df_by_field: dict[str, int] = {}
        for _, fname, _ in entries:
            df_by_field[fname] = df_by_field.get(fname, 0) + 1
        for doc_id, fname, tf in entries:
            avg_len = index.avg_field_lengths[fname]
            if avg_len == 0.0:
                continue
            df = df_by_field[fname]
            idf = log(1.0 + (n - df + 0.5) / (df + 0.5))
            norm = k1 * (1.0 - b + b * index.field_lengths[doc_id][fname] / avg_len)
            gain = idf * tf * (k1 + 1.0) / (tf + norm)
            scores[doc_id] = scores.get(doc_id, 0.0) + boosts[fname] * gain

    query_lower = query.strip().lower()
    hits = []
    for doc_id, score in scores.items():
        if score <= 0.0:
            continue
        surface = next((s for s in index.surfaces[doc_id] if s.lower() == query_lower), None)
        hits.append(ScoredHit(index.doc_table[doc_id], score, surface))
    hits.sort(key=lambda h: (-h.score, h.curie))
    return hits[:k]


def save_lexical_index(index: LexicalIndex, path: str | Path) -> None:
    payload = {
        "format": "ontolink-lexical",
        "version": 1,
        "params": {"k1": index.params.k1, "b": index.params.b, "boosts": list(index.params.boosts)},
        "doc_table": index.doc_table,
        "field_lengths": index.field_lengths,
        "avg_field_lengths": index.avg_field_lengths,
        "postings": {token: entries for token, entries in sorted(index.postings.items())},
        "surfaces": index.surfaces,
    }
    Path(path).write_text(
        json.dumps(payload, ensure_ascii=False, sort_keys=True, separators=(",", ":")) + "\n",
        encoding="utf-8",
    )


def load_lexical_index(path: str | Path) -> LexicalIndex:
    try:
        payload = json.loads(Path(path).read_text(encoding="utf-8"))
    except json.JSONDecodeError as exc:
        raise SchemaError(f"lexical index is not valid JSON: {exc}") from exc
    if not isinstance(payload, dict) or payload.get("format") != "ontolink-lexical":
        raise SchemaError("not a lexical index file")
    params = BM25Params(
        k1=payload["params"]["k1"],
        b=payload["params"]["b"],
        boosts=tuple((f, w) for f, w in payload["params"]["boosts"]),
    )
    return LexicalIndex(
        postings={
            token: [(doc, fname, tf) for doc, fname, tf in entries]
            for token, entries in payload["postings"].items()
        },
        doc_table=payload["doc_table"],
        field_lengths=payload["field_lengths"],
        avg_field_lengths=payload["avg_field_lengths"],
        params=params,
        surfaces=payload["surfaces"],
    )
