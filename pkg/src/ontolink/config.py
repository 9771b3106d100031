"""Configuration files: ingest settings and application defaults.

Both accept JSON or TOML. The ingest config carries the prefix map, the
relations to extract, and per-prefix identifier patterns; the app config
bundles default paths, pipeline knobs, and provider settings for the CLI.
"""

from __future__ import annotations

import json
import sys
from dataclasses import dataclass, field
from pathlib import Path

from .errors import SchemaError
from .ingest.model import IngestConfig, PrefixMap

if sys.version_info >= (3, 11):
    import tomllib
else:
    import tomli as tomllib

DEFAULT_PREFIXES = {
    "FOODON": "http://purl.obolibrary.org/obo/FOODON_",
    "NCBITaxon": "http://purl.obolibrary.org/obo/NCBITaxon_",
    "UBERON": "http://purl.obolibrary.org/obo/UBERON_",
    "CHEBI": "http://purl.obolibrary.org/obo/CHEBI_",
    "RO": "http://purl.obolibrary.org/obo/RO_",
    "IAO": "http://purl.obolibrary.org/obo/IAO_",
    "rdfs": "http://www.w3.org/2000/01/rdf-schema#",
}

DEFAULT_RELATIONS = (
    ("rdfs:subClassOf", "is_a"),
    ("RO:0001000", "derives_from"),
    ("RO:0002162", "in_taxon"),
)

DEFAULT_ID_PATTERNS = (
    ("FOODON", r"^FOODON:\d{8}$"),
    ("NCBITaxon", r"^NCBITaxon:\d+$"),
    ("UBERON", r"^UBERON:\d{7}$"),
    ("CHEBI", r"^CHEBI:\d+$"),
)


def default_ingest_config() -> IngestConfig:
    return IngestConfig(
        prefix_map=PrefixMap.from_dict(DEFAULT_PREFIXES),
        relation_curies=DEFAULT_RELATIONS,
        id_patterns=DEFAULT_ID_PATTERNS,
    )


def _load_table(path: str | Path) -> dict:
    path = Path(path)
    text = path.read_text(encoding="utf-8")
    if path.suffix.lower() == ".toml":
        try:
            return tomllib.loads(text)
        except tomllib.TOMLDecodeError as exc:
            raise SchemaError(f"{path}: invalid TOML: {exc}") from exc
    try:
        payload = json.loads(text)
    except json.JSONDecodeError as exc:
        raise SchemaError(f"{path}: invalid JSON: {exc}") from exc
    if not isinstance(payload, dict):
        raise SchemaError(f"{path}: top level must be an object")
    return payload


def load_ingest_config(path: str | Path) -> IngestConfig:
    payload = _load_table(path)
    try:
        prefixes = payload["prefixes"]
        relations = payload.get("relations", [])
        id_patterns = payload["id_patterns"]
    except KeyError as exc:
        raise SchemaError(f"ingest config lacks key {exc}") from exc
    kwargs = {}
    if "concept_classes" in payload:
        kwargs["concept_classes"] = tuple(payload["concept_classes"])
    try:
        return IngestConfig(
            prefix_map=PrefixMap.from_dict(dict(prefixes)),
            relation_curies=tuple((c, n) for c, n in relations),
            id_patterns=tuple(id_patterns.items()),
            **kwargs,
        )
    except (TypeError, ValueError, AttributeError) as exc:
        raise SchemaError(f"invalid ingest config: {exc}") from exc


@dataclass
class ProviderSettings:
    kind: str = "mock"  # mock | http
    endpoint: str = ""
    model: str = ""
    api_key_env: str = "ONTOLINK_API_KEY"
    timeout: float = 60.0
    retries: int = 2


@dataclass
class AppConfig:
    """CLI defaults; any command-line flag overrides the matching field."""

    ontology_path: str | None = None
    ingest_config_path: str | None = None
    dump_path: str | None = None
    lexical_index_path: str | None = None
    vector_index_path: str | None = None
    tau: float = 0.6
    max_hops: int = 1
    k_lex: int = 15
    k_sem: int = 15
    dimension: int = 384
    provider: ProviderSettings = field(default_factory=ProviderSettings)

    def __post_init__(self) -> None:
        if not 0.0 <= self.tau <= 1.0:
            raise ValueError("tau must lie in [0, 1]")


def load_app_config(path: str | Path) -> AppConfig:
    payload = _load_table(path)
    provider = ProviderSettings(**payload.pop("provider", {}))
    try:
        return AppConfig(provider=provider, **payload)
    except TypeError as exc:
        raise SchemaError(f"invalid app config: {exc}") from exc
