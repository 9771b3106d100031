"""Dense retrieval: embedding providers, concept vectors, exact cosine kNN.

The index holds one unit-norm float32 row per concept. Search is exact: with
unit vectors, cosine similarity is the dot product, computed in float64 so
that rankings are stable and reproducible. The default provider is a hashed
bag-of-tokens embedder, so the whole system runs offline; neural encoders
plug in behind the same protocol.
"""

from __future__ import annotations

import hashlib
import json
import os
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Protocol, Sequence

import httpx
import numpy as np

from .constants import UNDEFINED_DEFINITION
from .errors import DimensionMismatchError, ProviderError, SchemaError
from .ingest.model import EntityRecord
from .lexical import ScoredHit, tokenize

DEFAULT_DIMENSION = 384

_HASH_PERSON = b"olink-embed-v1"  # fixed seed: changing it invalidates stored indexes


class EmbeddingProvider(Protocol):
    name: str
    dimension: int

    def embed(self, texts: Sequence[str]) -> np.ndarray: ...


def embedding_text(record: EntityRecord) -> str:
    """Deterministic text a concept is embedded from: label, synonyms, definition."""
    parts = [record.label]
    if record.synonyms:
        parts.append("; synonyms: " + ", ".join(record.synonyms))
    if record.definition != UNDEFINED_DEFINITION:
        parts.append("; " + record.definition)
    return "".join(parts)


def _bucket(token: str, dimension: int) -> int:
    digest = hashlib.blake2b(token.encode("utf-8"), digest_size=8, person=_HASH_PERSON).digest()
    return int.from_bytes(digest, "big") % dimension


def fallback_embed(text: str, dimension: int = DEFAULT_DIMENSION) -> np.ndarray:
    """Hashed bag-of-tokens unit vector; the empty token case maps to e_0."""
    if dimension < 1:
        raise ValueError("dimension must be >= 1")
    vec = np.zeros(dimension, dtype=np.float64)
    for token in tokenize(text):
        vec[_bucket(token, dimension)] += 1.0
    norm = float(np.linalg.norm(vec))
    if norm == 0.0:
        vec[0] = 1.0
        return vec
    return vec / norm


@dataclass
class HashingEmbedder:
    """Deterministic offline stand-in for a neural text encoder."""

    dimension: int = DEFAULT_DIMENSION
    name: str = "hashing-bow-v1"

    def embed(self, texts: Sequence[str]) -> np.ndarray:
        return np.stack([fallback_embed(t, self.dimension) for t in texts]) if texts else np.zeros(
            (0, self.dimension)
        )


class HttpEmbeddingProvider:
    """Embeddings from an OpenAI-style HTTP endpoint ({"model", "input"} in,
    {"data": [{"embedding": [...]}]} out)."""

    def __init__(
        self,
        endpoint: str,
        model: str,
        dimension: int,
        api_key_env: str = "ONTOLINK_API_KEY",
        timeout: float = 30.0,
        retries: int = 2,
        transport: httpx.BaseTransport | None = None,
    ):
        self.name = f"http:{model}"
        self.dimension = dimension
        self.endpoint = endpoint
        self.model = model
        self.api_key_env = api_key_env
        self.timeout = timeout
        self.retries = retries
        self._transport = transport

    def embed(self, texts: Sequence[str]) -> np.ndarray:
        headers = {}
        key = os.environ.get(self.api_key_env, "")
        if key:
            headers["Authorization"] = f"Bearer {key}"
        payload = {"model": self.model, "input": list(texts)}
        last_error: Exception | None = None
        for _ in range(self.retries + 1):
            try:
                with httpx.Client(transport=self._transport, timeout=self.timeout) as client:
                    response = client.post(self.endpoint, json=payload, headers=headers)
                if response.status_code >= 500:
                    last_error = ProviderError(f"embedding endpoint returned {response.status_code}")
                    continue
                if response.status_code != 200:
                    raise ProviderError(f"embedding endpoint returned {response.status_code}")
                rows = [item["embedding"] for item in response.json()["data"]]
                matrix = np.asarray(rows, dtype=np.float64)
                if matrix.shape != (len(texts), self.dimension):
                    raise ProviderError(f"unexpected embedding shape {matrix.shape}")
                return matrix
            except (httpx.HTTPError, KeyError, ValueError) as exc:
                last_error = exc
        raise ProviderError(f"embedding request failed: {last_error}")


@dataclass
class VectorIndex:
    vectors: np.ndarray  # (n, dimension) float32, unit rows
    curies: list[str]
    provider_name: str

    @property
    def dimension(self) -> int:
        return int(self.vectors.shape[1])

    def row_for(self, curie: str) -> np.ndarray:
        return self.vectors[self.curies.index(curie)]


def _normalize_rows(matrix: np.ndarray) -> np.ndarray:
    matrix = np.asarray(matrix, dtype=np.float64)
    norms = np.linalg.norm(matrix, axis=1)
    out = np.empty_like(matrix)
    for i, norm in enumerate(norms):
        if norm == 0.0:
            out[i] = 0.0
            out[i, 0] = 1.0
        else:
            out[i] = matrix[i] / norm
    return out.astype(np.float32)


def build_vector_index(
    records: Iterable[EntityRecord], provider: EmbeddingProvider
) -> VectorIndex:
    ordered = sorted(records, key=lambda r: r.curie)
    dimension = provider.dimension
    rows = np.zeros((len(ordered), dimension), dtype=np.float64)
    for i, record in enumerate(ordered):
        try:
            rows[i] = provider.embed([embedding_text(record)])[0]
        except ProviderError as exc:
            raise ProviderError(f"embedding failed for {record.curie}: {exc}") from exc
    return VectorIndex(
        vectors=_normalize_rows(rows) if len(ordered) else np.zeros((0, dimension), dtype=np.float32),
        curies=[r.curie for r in ordered],
        provider_name=provider.name,
    )


def embed_query(provider: EmbeddingProvider, text: str) -> np.ndarray:
    """Unit query vector for free text."""
    return _normalize_rows(provider.embed([text]))[0]


def search_semantic(index: VectorIndex, query_vector: np.ndarray, k: int) -> list[ScoredHit]:
    """Exact top-k by cosine similarity, descending, ties by ascending CURIE."""
    query = np.asarray(query_vector, dtype=np.float64).reshape(-1)
    if query.shape[0] != index.dimension:
        raise DimensionMismatchError(
            f"query has dimension {query.shape[0]}, index expects {index.dimension}"
        )
    if k <= 0 or len(index.curies) == 0:
        return []
    norm = float(np.linalg.norm(query))
    if norm == 0.0:
        query = np.zeros_like(query)
        query[0] = 1.0
    elif abs(norm - 1.0) > 1e-6:
        query = query / norm
    # Row-wise float64 dots: bit-for-bit reproducible regardless of the BLAS
    # matrix-vector kernel in use.
    matrix = index.vectors.astype(np.float64)
    scores = [float(np.dot(matrix[i], query)) for i in range(matrix.shape[0])]
    order = sorted(range(len(index.curies)), key=lambda i: (-scores[i], index.curies[i]))
    return [ScoredHit(index.curies[i], scores[i]) for i in order[:k]]


def save_vector_index(index: VectorIndex, path: str | Path) -> None:
    header = {
        "count": len(index.curies),
        "dimension": index.dimension,
        "format": "ontolink-vector",
        "provider_name": index.provider_name,
        "version": 1,
    }
    with open(path, "wb") as handle:
        handle.write(json.dumps(header, sort_keys=True).encode("utf-8") + b"\n")
        handle.write(np.ascontiguousarray(index.vectors, dtype="<f4").tobytes())
        handle.write(json.dumps(index.curies, ensure_ascii=False).encode("utf-8"))


def load_vector_index(path: str | Path) -> VectorIndex:
    data = Path(path).read_bytes()
    newline = data.find(b"\n")
    if newline < 0:
        raise SchemaError("vector index file has no header line")
    try:
        header = json.loads(data[:newline].decode("utf-8"))
    except (UnicodeDecodeError, json.JSONDecodeError) as exc:
        raise SchemaError(f"vector index header is invalid: {exc}") from exc
    if not isinstance(header, dict) or header.get("format") != "ontolink-vector":
        raise SchemaError("not a vector index file")
    count, dimension = header["count"], header["dimension"]
    body_start = newline + 1
    body_len = count * dimension * 4
    blob = data[body_start : body_start + body_len]
    if len(blob) != body_len:
        raise SchemaError("vector index body is truncated")
    vectors = np.frombuffer(blob, dtype="<f4").reshape(count, dimension).copy()
    try:
        curies = json.loads(data[body_start + body_len :].decode("utf-8"))
    except (UnicodeDecodeError, json.JSONDecodeError) as exc:
        raise SchemaError(f"vector index CURIE list is invalid: {exc}") from exc
    if not isinstance(curies, list) or len(curies) != count:
        raise SchemaError("vector index CURIE list does not match the header count")
    return VectorIndex(vectors=vectors, curies=curies, provider_name=header["provider_name"])
