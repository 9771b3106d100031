"""FastAPI service wrapping the linking engine.

Each endpoint is a stateless job: paths in requests are resolved on the
service host, outputs are written there, and small payloads travel inline.
The CLI drives these endpoints either in-process or over HTTP.
"""

from __future__ import annotations

import json
from pathlib import Path

from fastapi import FastAPI, Request
from fastapi.responses import JSONResponse

from .. import __version__
from ..agents.providers import HttpChatProvider, MockCompletionProvider
from ..config import default_ingest_config, load_ingest_config
from ..errors import OntolinkError, SchemaError
from ..evaluation import (
    GoldAnnotation,
    RunRecord,
    adjudicate,
    compute_metrics,
    export_comparison,
    label_distribution,
)
from ..ingest import extract_entities, load_dump, parse_ntriples, records_by_curie, write_dump
from ..lexical import build_lexical_index, load_lexical_index, save_lexical_index
from ..pipeline import LinkResult, PipelineConfig, link_batch, parse_result, serialize_result
from ..retriever import Mention, RetrievalConfig, SearchIndexes
from ..vectors import (
    HashingEmbedder,
    HttpEmbeddingProvider,
    build_vector_index,
    load_vector_index,
    save_vector_index,
)
from . import schemas


def _embedder(spec: schemas.EmbeddingSpec):
    if spec.kind == "hash":
        return HashingEmbedder(dimension=spec.dimension)
    return HttpEmbeddingProvider(
        endpoint=spec.endpoint,
        model=spec.model,
        dimension=spec.dimension,
        api_key_env=spec.api_key_env,
        timeout=spec.timeout,
        retries=spec.retries,
    )


def _completion_provider(spec: schemas.ProviderSpec):
    if spec.kind == "mock":
        return MockCompletionProvider(scripted=spec.mock_script, synonym_table=spec.mock_synonyms)
    return HttpChatProvider(
        endpoint=spec.endpoint,
        model=spec.model,
        api_key_env=spec.api_key_env,
        timeout=spec.timeout,
        retries=spec.retries,
    )


def _load_results(path: str) -> list[LinkResult]:
    lines = Path(path).read_text(encoding="utf-8").splitlines()
    return [parse_result(line) for line in lines if line.strip()]


def _load_gold(path: str) -> list[GoldAnnotation]:
    try:
        payload = json.loads(Path(path).read_text(encoding="utf-8"))
    except json.JSONDecodeError as exc:
        raise SchemaError(f"gold file is not valid JSON: {exc}") from exc
    if not isinstance(payload, list):
        raise SchemaError("gold file must be a JSON array")
    gold = []
    for i, entry in enumerate(payload):
        if not isinstance(entry, dict) or "mention" not in entry or "targets" not in entry:
            raise SchemaError(f"gold entry {i} must carry mention and targets")
        try:
            gold.append(GoldAnnotation(entry["mention"], frozenset(entry["targets"])))
        except (TypeError, ValueError) as exc:
            raise SchemaError(f"gold entry {i}: {exc}") from exc
    return gold


def create_app() -> FastAPI:
    app = FastAPI(title="ontolink", version=__version__)

    @app.exception_handler(OntolinkError)
    async def _domain_error(request: Request, exc: OntolinkError) -> JSONResponse:
        return JSONResponse(
            status_code=422,
            content={"error": type(exc).__name__, "detail": str(exc)},
        )

    @app.exception_handler(FileNotFoundError)
    async def _missing_file(request: Request, exc: FileNotFoundError) -> JSONResponse:
        return JSONResponse(
            status_code=422,
            content={"error": "FileNotFound", "detail": str(exc)},
        )

    @app.exception_handler(ValueError)
    async def _value_error(request: Request, exc: ValueError) -> JSONResponse:
        return JSONResponse(
            status_code=422,
            content={"error": "ValueError", "detail": str(exc)},
        )

    @app.get("/health", response_model=schemas.HealthResponse)
    def health() -> schemas.HealthResponse:
        return schemas.HealthResponse(status="ok", version=__version__)

    @app.post("/ingest", response_model=schemas.IngestResponse)
    def ingest(request: schemas.IngestRequest) -> schemas.IngestResponse:
        config = (
            load_ingest_config(request.config_path)
            if request.config_path
            else default_ingest_config()
        )
        triples = parse_ntriples(Path(request.ontology_path))
        records, report = extract_entities(triples, config)
        write_dump(records, request.dump_path)
        report_dict = report.as_dict()
        if request.report_path:
            Path(request.report_path).write_text(
                json.dumps(report_dict, indent=2, sort_keys=True) + "\n", encoding="utf-8"
            )
        return schemas.IngestResponse(dump_path=request.dump_path, report=report_dict)

    @app.post("/index", response_model=schemas.IndexResponse)
    def index(request: schemas.IndexRequest) -> schemas.IndexResponse:
        records = load_dump(request.dump_path)
        save_lexical_index(build_lexical_index(records), request.lexical_index_path)
        save_vector_index(
            build_vector_index(records, _embedder(request.embedding)), request.vector_index_path
        )
        return schemas.IndexResponse(
            documents=len(records),
            lexical_index_path=request.lexical_index_path,
            vector_index_path=request.vector_index_path,
        )

    @app.post("/link", response_model=schemas.LinkResponse)
    def link_mentions(request: schemas.LinkRequest) -> schemas.LinkResponse:
        records = load_dump(request.dump_path)
        lexical = (
            load_lexical_index(request.lexical_index_path)
            if request.lexical_index_path
            else build_lexical_index(records)
        )
        embedding_spec = request.embedding
        if request.vector_index_path:
            vectors = load_vector_index(request.vector_index_path)
            # query embeddings must live in the same space as the stored index
            embedding_spec = embedding_spec.model_copy(update={"dimension": vectors.dimension})
            embedder = _embedder(embedding_spec)
        else:
            embedder = _embedder(embedding_spec)
            vectors = build_vector_index(records, embedder)
        indexes = SearchIndexes(
            records=records_by_curie(records),
            lexical=lexical,
            vectors=vectors,
            embedder=embedder,
        )
        options = request.options
        config = PipelineConfig(
            tau=options.tau,
            max_hops=options.max_hops,
            retrieval=RetrievalConfig(k_lex=options.k_lex, k_sem=options.k_sem),
        )
        mentions = [Mention(m.mention, m.context) for m in request.mentions]
        provider = _completion_provider(request.provider)
        results, log = link_batch(mentions, indexes, provider, config, jobs=options.jobs)
        return schemas.LinkResponse(
            results=[json.loads(serialize_result(r)) for r in results],
            error_count=sum(1 for r in results if r.error is not None),
            log=log.as_dicts() if request.include_log else None,
        )

    @app.post("/eval", response_model=schemas.EvalResponse)
    def evaluate(request: schemas.EvalRequest) -> schemas.EvalResponse:
        results = _load_results(request.results_path)
        gold = _load_gold(request.gold_path)
        report = compute_metrics([RunRecord.from_result(r) for r in results], gold)
        return schemas.EvalResponse(**report.as_dict(), tau=request.tau)

    @app.post("/adjudicate", response_model=schemas.AdjudicateResponse)
    def adjudicate_cases(request: schemas.AdjudicateRequest) -> schemas.AdjudicateResponse:
        dump = records_by_curie(load_dump(request.dump_path))
        try:
            payload = json.loads(Path(request.mismatches_path).read_text(encoding="utf-8"))
        except json.JSONDecodeError as exc:
            raise SchemaError(f"mismatches file is not valid JSON: {exc}") from exc
        if not isinstance(payload, list):
            raise SchemaError("mismatches file must be a JSON array")
        provider = _completion_provider(request.provider)
        rows = []
        labels = []
        for i, case in enumerate(payload):
            if not isinstance(case, dict) or not {"query", "chosen", "gold"} <= case.keys():
                raise SchemaError(f"mismatch case {i} must carry query, chosen, gold")
            chosen = dump.get(case["chosen"])
            if chosen is None:
                raise SchemaError(f"mismatch case {i}: chosen CURIE {case['chosen']} not in dump")
            gold_records = []
            for curie in case["gold"]:
                record = dump.get(curie)
                if record is not None:
                    gold_records.append(record)
            if not gold_records:
                raise SchemaError(f"mismatch case {i}: no gold CURIE is present in the dump")
            adjudication = adjudicate(provider, case["query"], chosen, gold_records)
            labels.append(adjudication)
            rows.append(
                {
                    "query": case["query"],
                    "chosen": case["chosen"],
                    "selected_gold": adjudication.selected_gold,
                    "label": adjudication.label.value,
                    "note": adjudication.note,
                }
            )
        if request.out_path:
            # report schema is exactly query/chosen/selected_gold/label per line
            file_rows = [
                {k: row[k] for k in ("query", "chosen", "selected_gold", "label")}
                for row in rows
            ]
            Path(request.out_path).write_text(
                "".join(json.dumps(row, ensure_ascii=False) + "\n" for row in file_rows),
                encoding="utf-8",
            )
        distribution = {
            category.value: [count, pct]
            for category, (count, pct) in label_distribution(labels).items()
        }
        return schemas.AdjudicateResponse(
            rows=rows, distribution=distribution, out_path=request.out_path
        )

    @app.post("/compare", response_model=schemas.CompareResponse)
    def compare(request: schemas.CompareRequest) -> schemas.CompareResponse:
        run_a = _load_results(request.run_a_path)
        run_b = _load_results(request.run_b_path)
        dump = records_by_curie(load_dump(request.dump_path))
        payload = export_comparison(run_a, run_b, dump)
        if request.out_path:
            Path(request.out_path).write_text(
                json.dumps(payload, indent=2, ensure_ascii=False) + "\n", encoding="utf-8"
            )
            return schemas.CompareResponse(rows=len(payload["rows"]), out_path=request.out_path)
        return schemas.CompareResponse(rows=len(payload["rows"]), comparison=payload)

    return app


app = create_app()
