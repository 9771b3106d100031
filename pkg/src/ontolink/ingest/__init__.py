"""Ontology ingestion: RDF parsing, entity filtering, and the JSON dump."""

from .dump import dump_text, load_dump, records_by_curie, write_dump
from .extract import extract_entities, transitive_ancestors
from .model import (
    EntityRecord,
    IngestConfig,
    IngestReport,
    PrefixMap,
    check_record,
    to_curie,
    validate_curie,
)
from .ntriples import BlankNode, Literal, Triple, parse_ntriples

# N-Triples is the one required serialization; parse_graph is the
# format-agnostic entry point other front-ends would plug into.
parse_graph = parse_ntriples

__all__ = [
    "BlankNode",
    "EntityRecord",
    "IngestConfig",
    "IngestReport",
    "Literal",
    "PrefixMap",
    "Triple",
    "check_record",
    "dump_text",
    "extract_entities",
    "load_dump",
    "parse_graph",
    "parse_ntriples",
    "records_by_curie",
    "to_curie",
    "transitive_ancestors",
    "validate_curie",
    "write_dump",
]
