"""Command-line client for the linking service.

Every command speaks the service's request/response models. By default the
service runs in-process, so no daemon is needed; --server points the same
commands at a remote instance instead. Exit codes: 0 success, 1 partial
(some mentions error-tagged), 2 invalid input or configuration.
"""

from __future__ import annotations

import json
import sys
from pathlib import Path

import click
import httpx

from .config import AppConfig, load_app_config

EXIT_PARTIAL = 1
EXIT_INVALID = 2


def _client(server: str | None) -> httpx.Client:
    if server:
        return httpx.Client(base_url=server, timeout=600.0)
    import warnings

    with warnings.catch_warnings():
        # starlette's in-process client warns about the httpx major it rides on;
        # irrelevant for local command dispatch.
        warnings.simplefilter("ignore")
        from fastapi.testclient import TestClient

    from .service.app import create_app

    return TestClient(create_app())


def _post(client: httpx.Client, path: str, payload: dict) -> dict:
    response = client.post(path, json=payload)
    if response.status_code != 200:
        try:
            detail = response.json()
        except json.JSONDecodeError:
            detail = {"detail": response.text}
        click.echo(f"error: {json.dumps(detail)}", err=True)
        sys.exit(EXIT_INVALID)
    return response.json()


def _app_config(path: str | None) -> AppConfig:
    if path is None:
        return AppConfig()
    try:
        return load_app_config(path)
    except Exception as exc:
        click.echo(f"error: cannot load config {path}: {exc}", err=True)
        sys.exit(EXIT_INVALID)


def _provider_spec(config: AppConfig, kind: str | None, mock_script: str | None) -> dict:
    settings = config.provider
    spec = {
        "kind": kind or settings.kind,
        "endpoint": settings.endpoint,
        "model": settings.model,
        "api_key_env": settings.api_key_env,
        "timeout": settings.timeout,
        "retries": settings.retries,
    }
    if mock_script:
        loaded = json.loads(Path(mock_script).read_text(encoding="utf-8"))
        spec["mock_script"] = loaded.get("script", {})
        spec["mock_synonyms"] = loaded.get("synonyms", {})
    return spec


@click.group()
@click.option("--server", default=None, help="Base URL of a running service; default is in-process.")
@click.option("--config", "config_path", default=None, type=click.Path(exists=True, dir_okay=False),
              help="App config file (JSON or TOML) providing defaults.")
@click.pass_context
def main(ctx: click.Context, server: str | None, config_path: str | None) -> None:
    """Link free-text food mentions to ontology concepts."""
    ctx.ensure_object(dict)
    ctx.obj["server"] = server
    ctx.obj["config"] = _app_config(config_path)


@main.command()
@click.argument("ontology", type=click.Path(exists=True, dir_okay=False))
@click.option("-c", "--ingest-config", default=None, type=click.Path(exists=True, dir_okay=False))
@click.option("-o", "--out", "dump_path", required=True, type=click.Path(dir_okay=False))
@click.option("--report", "report_path", default=None, type=click.Path(dir_okay=False))
@click.pass_context
def ingest(ctx, ontology, ingest_config, dump_path, report_path) -> None:
    """Parse an N-Triples ontology and write the concept dump."""
    config: AppConfig = ctx.obj["config"]
    with _client(ctx.obj["server"]) as client:
        payload = {
            "ontology_path": str(Path(ontology).resolve()),
            "config_path": ingest_config or config.ingest_config_path,
            "dump_path": str(Path(dump_path).resolve()),
            "report_path": str(Path(report_path).resolve()) if report_path else None,
        }
        response = _post(client, "/ingest", payload)
    click.echo(json.dumps(response["report"], sort_keys=True))


@main.command()
@click.argument("dump", type=click.Path(exists=True, dir_okay=False))
@click.option("--lexical", "lexical_path", required=True, type=click.Path(dir_okay=False))
@click.option("--vector", "vector_path", required=True, type=click.Path(dir_okay=False))
@click.option("--dimension", default=None, type=int)
@click.pass_context
def index(ctx, dump, lexical_path, vector_path, dimension) -> None:
    """Build and persist the lexical and vector indexes for a dump."""
    config: AppConfig = ctx.obj["config"]
    with _client(ctx.obj["server"]) as client:
        payload = {
            "dump_path": str(Path(dump).resolve()),
            "lexical_index_path": str(Path(lexical_path).resolve()),
            "vector_index_path": str(Path(vector_path).resolve()),
            "embedding": {"kind": "hash", "dimension": dimension or config.dimension},
        }
        response = _post(client, "/index", payload)
    click.echo(json.dumps(response, sort_keys=True))


@main.command()
@click.argument("mentions_file", required=False, type=click.Path(exists=True, dir_okay=False))
@click.option("--mention", "single_mention", default=None, help="Link one mention instead of a file.")
@click.option("--dump", "dump_path", required=True, type=click.Path(exists=True, dir_okay=False))
@click.option("--lexical", "lexical_path", default=None, type=click.Path(exists=True, dir_okay=False))
@click.option("--vector", "vector_path", default=None, type=click.Path(exists=True, dir_okay=False))
@click.option("--tau", default=None, type=float)
@click.option("--k-lex", default=None, type=int)
@click.option("--k-sem", default=None, type=int)
@click.option("--max-hops", default=None, type=int)
@click.option("--provider", "provider_kind", default=None, type=click.Choice(["mock", "http"]))
@click.option("--mock-script", default=None, type=click.Path(exists=True, dir_okay=False),
              help="JSON file with scripted mock responses ({'script': {...}, 'synonyms': {...}}).")
@click.option("--jobs", default=1, type=int)
@click.option("--out", "out_path", default=None, type=click.Path(dir_okay=False))
@click.option("--log-file", default=None, type=click.Path(dir_okay=False))
@click.pass_context
def link(ctx, mentions_file, single_mention, dump_path, lexical_path, vector_path, tau,
         k_lex, k_sem, max_hops, provider_kind, mock_script, jobs, out_path, log_file) -> None:
    """Link mentions from a JSON array file (or one --mention) to concepts.

    Results are JSON lines, one object per mention, written to --out or stdout.
    """
    config: AppConfig = ctx.obj["config"]
    if (mentions_file is None) == (single_mention is None):
        click.echo("error: provide either MENTIONS_FILE or --mention", err=True)
        sys.exit(EXIT_INVALID)
    if single_mention is not None:
        mentions = [{"mention": single_mention}]
    else:
        try:
            raw = json.loads(Path(mentions_file).read_text(encoding="utf-8"))
        except json.JSONDecodeError as exc:
            click.echo(f"error: mentions file is not valid JSON: {exc}", err=True)
            sys.exit(EXIT_INVALID)
        if not isinstance(raw, list):
            click.echo("error: mentions file must be a JSON array", err=True)
            sys.exit(EXIT_INVALID)
        mentions = raw

    payload = {
        "mentions": mentions,
        "dump_path": str(Path(dump_path).resolve()),
        "lexical_index_path": str(Path(lexical_path).resolve()) if lexical_path else None,
        "vector_index_path": str(Path(vector_path).resolve()) if vector_path else None,
        "options": {
            "tau": config.tau if tau is None else tau,
            "k_lex": config.k_lex if k_lex is None else k_lex,
            "k_sem": config.k_sem if k_sem is None else k_sem,
            "max_hops": config.max_hops if max_hops is None else max_hops,
            "jobs": jobs,
        },
        "provider": _provider_spec(config, provider_kind, mock_script),
        "embedding": {"kind": "hash", "dimension": config.dimension},
        "include_log": log_file is not None,
    }
    with _client(ctx.obj["server"]) as client:
        response = _post(client, "/link", payload)

    lines = "".join(json.dumps(row, ensure_ascii=False) + "\n" for row in response["results"])
    if out_path:
        Path(out_path).write_text(lines, encoding="utf-8")
    else:
        click.echo(lines, nl=False)
    if log_file:
        Path(log_file).write_text(
            json.dumps(response["log"], indent=2, ensure_ascii=False) + "\n", encoding="utf-8"
        )
    if response["error_count"]:
        click.echo(f"{response['error_count']} mention(s) failed", err=True)
        sys.exit(EXIT_PARTIAL)


@main.command("eval")
@click.argument("results", type=click.Path(exists=True, dir_okay=False))
@click.argument("gold", type=click.Path(exists=True, dir_okay=False))
@click.option("--tau", default=None, type=float, help="Threshold the run used; recorded in the report.")
@click.option("--out", "out_path", default=None, type=click.Path(dir_okay=False))
@click.pass_context
def eval_cmd(ctx, results, gold, tau, out_path) -> None:
    """Compute accuracy/retry/synonym metrics for a results file against gold."""
    config: AppConfig = ctx.obj["config"]
    with _client(ctx.obj["server"]) as client:
        response = _post(client, "/eval", {
            "results_path": str(Path(results).resolve()),
            "gold_path": str(Path(gold).resolve()),
            "tau": config.tau if tau is None else tau,
        })
    text = json.dumps(response, indent=2, sort_keys=True) + "\n"
    if out_path:
        Path(out_path).write_text(text, encoding="utf-8")
    else:
        click.echo(text, nl=False)


@main.command()
@click.argument("mismatches", type=click.Path(exists=True, dir_okay=False))
@click.option("--dump", "dump_path", required=True, type=click.Path(exists=True, dir_okay=False))
@click.option("--provider", "provider_kind", default=None, type=click.Choice(["mock", "http"]))
@click.option("--mock-script", default=None, type=click.Path(exists=True, dir_okay=False))
@click.option("--out", "out_path", default=None, type=click.Path(dir_okay=False))
@click.pass_context
def adjudicate(ctx, mismatches, dump_path, provider_kind, mock_script, out_path) -> None:
    """Classify prediction-gold disagreements into drift categories."""
    config: AppConfig = ctx.obj["config"]
    with _client(ctx.obj["server"]) as client:
        response = _post(client, "/adjudicate", {
            "mismatches_path": str(Path(mismatches).resolve()),
            "dump_path": str(Path(dump_path).resolve()),
            "provider": _provider_spec(config, provider_kind, mock_script),
            "out_path": str(Path(out_path).resolve()) if out_path else None,
        })
    if not out_path:
        for row in response["rows"]:
            click.echo(json.dumps(row, ensure_ascii=False))
    click.echo(json.dumps({"distribution": response["distribution"]}, sort_keys=True), err=True)


@main.command("compare-export")
@click.argument("run_a", type=click.Path(exists=True, dir_okay=False))
@click.argument("run_b", type=click.Path(exists=True, dir_okay=False))
@click.option("--dump", "dump_path", required=True, type=click.Path(exists=True, dir_okay=False))
@click.option("-o", "--out", "out_path", required=True, type=click.Path(dir_okay=False))
@click.pass_context
def compare_export(ctx, run_a, run_b, dump_path, out_path) -> None:
    """Align two result files into the side-by-side comparator input format."""
    with _client(ctx.obj["server"]) as client:
        response = _post(client, "/compare", {
            "run_a_path": str(Path(run_a).resolve()),
            "run_b_path": str(Path(run_b).resolve()),
            "dump_path": str(Path(dump_path).resolve()),
            "out_path": str(Path(out_path).resolve()),
        })
    click.echo(json.dumps({"rows": response["rows"], "out_path": response["out_path"]}, sort_keys=True))


@main.command()
@click.option("--host", default="127.0.0.1")
@click.option("--port", default=8000, type=int)
def serve(host: str, port: int) -> None:
    """Run the linking service."""
    import uvicorn

    from .service.app import create_app

    uvicorn.run(create_app(), host=host, port=port)


if __name__ == "__main__":
    main()
