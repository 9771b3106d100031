import json
from pathlib import Path

import pytest

from ontolink.ingest.model import EntityRecord, IngestConfig, PrefixMap

FIXTURES = Path(__file__).parent / "fixtures"


@pytest.fixture
def flour_path() -> Path:
    return FIXTURES / "flour.nt"


@pytest.fixture
def flour_golden_path() -> Path:
    return FIXTURES / "flour_dump.golden.json"


@pytest.fixture
def foodon_config() -> IngestConfig:
    return IngestConfig(
        prefix_map=PrefixMap.from_dict(
            {
                "FOODON": "http://purl.obolibrary.org/obo/FOODON_",
                "NCBITaxon": "http://purl.obolibrary.org/obo/NCBITaxon_",
                "rdfs": "http://www.w3.org/2000/01/rdf-schema#",
            }
        ),
        relation_curies=(("rdfs:subClassOf", "is_a"),),
        id_patterns=(
            ("FOODON", r"^FOODON:\d{8}$"),
            ("NCBITaxon", r"^NCBITaxon:\d+$"),
        ),
    )


@pytest.fixture
def flour_record() -> EntityRecord:
    return EntityRecord(
        curie="FOODON:03302340",
        label="whole wheat flour",
        synonyms=["wholemeal flour", "graham flour"],
        definition="Undefined",
        relations={"is_a": ["FOODON:00001210"]},
        parents=[],
        ancestors=[],
    )


@pytest.fixture
def lebanese_records() -> list[EntityRecord]:
    """The three candidates of the worked LEBANESE scenario."""
    return [
        EntityRecord(
            curie="FOODON:03540141",
            label="01410 - pita bread (efsa foodex2)",
            synonyms=["pita", "pitta bread"],
            definition=(
                "A flat, round bread baked at high temperature; "
                "Lebanese bread is an alternative name."
            ),
        ),
        EntityRecord(
            curie="FOODON:00005570",
            label="lebanon bologna",
            synonyms=[],
            definition="A smoked, fermented beef sausage from Lebanon County, Pennsylvania.",
        ),
        EntityRecord(
            curie="FOODON:03302684",
            label="middle east bread",
            synonyms=[],
            definition="A broad category covering breads of the Middle East.",
        ),
    ]


def write_json(path: Path, payload) -> None:
    path.write_text(json.dumps(payload, ensure_ascii=False, indent=2) + "\n", encoding="utf-8")
