"""JSON dump serialization for concept records.

The dump is the contract between ingest and everything downstream: a JSON
array sorted by CURIE, two-space indented, each object carrying exactly the
keys curie, label, synonyms, definition, relations, parents, ancestors in
that order.
"""

from __future__ import annotations

import json
from pathlib import Path
from typing import IO, Union

from ..errors import SchemaError
from .model import EntityRecord, check_record

DUMP_KEYS = ("curie", "label", "synonyms", "definition", "relations", "parents", "ancestors")

Sink = Union[str, Path, IO[str]]


def record_to_dict(record: EntityRecord) -> dict:
    return {
        "curie": record.curie,
        "label": record.label,
        "synonyms": list(record.synonyms),
        "definition": record.definition,
        "relations": {name: list(targets) for name, targets in record.relations.items()},
        "parents": list(record.parents),
        "ancestors": list(record.ancestors),
    }


def dump_text(records: list[EntityRecord]) -> str:
    for record in records:
        check_record(record)
    ordered = sorted(records, key=lambda r: r.curie)
    return json.dumps([record_to_dict(r) for r in ordered], indent=2, ensure_ascii=False) + "\n"


def write_dump(records: list[EntityRecord], sink: Sink) -> None:
    text = dump_text(records)
    if isinstance(sink, (str, Path)):
        Path(sink).write_text(text, encoding="utf-8")
    else:
        sink.write(text)


def _record_from_dict(obj: object, index: int) -> EntityRecord:
    if not isinstance(obj, dict):
        raise SchemaError(f"record {index}: expected an object")
    missing = [k for k in DUMP_KEYS if k not in obj]
    unknown = [k for k in obj if k not in DUMP_KEYS]
    if missing:
        raise SchemaError(f"record {index}: missing keys {missing}")
    if unknown:
        raise SchemaError(f"record {index}: unknown keys {unknown}")
    if not isinstance(obj["curie"], str) or not isinstance(obj["label"], str):
        raise SchemaError(f"record {index}: curie and label must be strings")
    if not isinstance(obj["definition"], str):
        raise SchemaError(f"record {index}: definition must be a string")
    for key in ("synonyms", "parents", "ancestors"):
        value = obj[key]
        if not isinstance(value, list) or not all(isinstance(v, str) for v in value):
            raise SchemaError(f"record {index}: {key} must be a list of strings")
    relations = obj["relations"]
    if not isinstance(relations, dict) or not all(
        isinstance(name, str) and isinstance(targets, list) and all(isinstance(t, str) for t in targets)
        for name, targets in relations.items()
    ):
        raise SchemaError(f"record {index}: relations must map names to CURIE lists")
    return EntityRecord(
        curie=obj["curie"],
        label=obj["label"],
        synonyms=list(obj["synonyms"]),
        definition=obj["definition"],
        relations={name: list(targets) for name, targets in relations.items()},
        parents=list(obj["parents"]),
        ancestors=list(obj["ancestors"]),
    )


def load_dump(source: Sink) -> list[EntityRecord]:
    if isinstance(source, (str, Path)):
        text = Path(source).read_text(encoding="utf-8")
    else:
        text = source.read()
    try:
        payload = json.loads(text)
    except json.JSONDecodeError as exc:
        raise SchemaError(f"dump is not valid JSON: {exc}") from exc
    if not isinstance(payload, list):
        raise SchemaError("dump must be a JSON array of records")
    return [_record_from_dict(obj, i) for i, obj in enumerate(payload)]


def records_by_curie(records: list[EntityRecord]) -> dict[str, EntityRecord]:
    return {record.curie: record for record in records}
