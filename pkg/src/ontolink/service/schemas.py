"""Pydantic request/response models for the linking service."""

from __future__ import annotations

from typing import Literal

from pydantic import BaseModel, Field


class HealthResponse(BaseModel):
    status: str
    version: str


class IngestRequest(BaseModel):
    ontology_path: str
    config_path: str | None = None
    dump_path: str
    report_path: str | None = None


class IngestResponse(BaseModel):
    dump_path: str
    report: dict


class EmbeddingSpec(BaseModel):
    kind: Literal["hash", "http"] = "hash"
    dimension: int = Field(default=384, ge=1)
    endpoint: str = ""
    model: str = ""
    api_key_env: str = "ONTOLINK_API_KEY"
    timeout: float = 30.0
    retries: int = 2


class IndexRequest(BaseModel):
    dump_path: str
    lexical_index_path: str
    vector_index_path: str
    embedding: EmbeddingSpec = Field(default_factory=EmbeddingSpec)


class IndexResponse(BaseModel):
    documents: int
    lexical_index_path: str
    vector_index_path: str


class MentionIn(BaseModel):
    mention: str
    context: str | None = None


class ProviderSpec(BaseModel):
    kind: Literal["mock", "http"] = "mock"
    endpoint: str = ""
    model: str = ""
    api_key_env: str = "ONTOLINK_API_KEY"
    timeout: float = 60.0
    retries: int = 2
    # Mock-only knobs: scripted responses and the synonym lookup table.
    mock_script: dict[str, str] = Field(default_factory=dict)
    mock_synonyms: dict[str, list[str]] = Field(default_factory=dict)


class LinkOptions(BaseModel):
    tau: float = Field(default=0.6, ge=0.0, le=1.0)
    k_lex: int = Field(default=15, ge=0)
    k_sem: int = Field(default=15, ge=0)
    max_hops: int = Field(default=1, ge=0)
    jobs: int = Field(default=1, ge=1)


class LinkRequest(BaseModel):
    mentions: list[MentionIn]
    dump_path: str
    lexical_index_path: str | None = None
    vector_index_path: str | None = None
    options: LinkOptions = Field(default_factory=LinkOptions)
    provider: ProviderSpec = Field(default_factory=ProviderSpec)
    embedding: EmbeddingSpec = Field(default_factory=EmbeddingSpec)
    include_log: bool = False


class LinkResponse(BaseModel):
    results: list[dict]
    error_count: int
    log: list[dict] | None = None


class EvalRequest(BaseModel):
    results_path: str
    gold_path: str
    tau: float = Field(default=0.6, ge=0.0, le=1.0)


class EvalResponse(BaseModel):
    m: int
    acc1_overall: float
    acc1_first: float
    acc1_final: float
    retry_rate: float
    synonym_rate: float
    tau: float


class AdjudicateRequest(BaseModel):
    mismatches_path: str
    dump_path: str
    provider: ProviderSpec = Field(default_factory=ProviderSpec)
    out_path: str | None = None


class AdjudicateResponse(BaseModel):
    rows: list[dict]
    distribution: dict[str, list]  # category -> [count, percentage]
    out_path: str | None = None


class CompareRequest(BaseModel):
    run_a_path: str
    run_b_path: str
    dump_path: str
    out_path: str | None = None


class CompareResponse(BaseModel):
    rows: int
    out_path: str | None = None
    comparison: dict | None = None
