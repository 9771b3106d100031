"""Configuration and record types for ontology ingestion."""

from __future__ import annotations

import re
from dataclasses import dataclass, field

from ..constants import OWL_CLASS, SKOS_CONCEPT, UNDEFINED_DEFINITION


@dataclass(frozen=True)
class PrefixMap:
    """Ordered (prefix, iri_base) pairs used for CURIE/IRI conversion.

    Bases are matched longest-first, so a specific base such as
    ``.../obo/FOODON_`` wins over a generic ``.../obo/`` one.
    """

    entries: tuple[tuple[str, str], ...]

    def __post_init__(self) -> None:
        prefixes = [p for p, _ in self.entries]
        bases = [b for _, b in self.entries]
        if len(set(prefixes)) != len(prefixes):
            raise ValueError("prefixes must be unique")
        if any(not b for b in bases):
            raise ValueError("iri_bases must be non-empty")
        if len(set(bases)) != len(bases):
            raise ValueError("iri_bases must be unique")

    @classmethod
    def from_dict(cls, mapping: dict[str, str]) -> "PrefixMap":
        return cls(tuple(mapping.items()))

    def curie_from_iri(self, iri: str) -> str | None:
        """CURIE for an IRI, or None when no configured base matches.

        The remainder after the longest matching base becomes the local id. A
        remainder of the OBO form ``<PREFIX>_<local>`` is collapsed so both
        per-ontology bases (``.../FOODON_``) and shared bases (``.../obo/``)
        yield ``FOODON:03302340``-style CURIEs. Empty local ids are invalid.
        """
        best: tuple[str, str] | None = None
        for prefix, base in self.entries:
            if iri.startswith(base) and (best is None or len(base) > len(best[1])):
                best = (prefix, base)
        if best is None:
            return None
        prefix, base = best
        local = iri[len(base):]
        if local.startswith(prefix + "_"):
            local = local[len(prefix) + 1:]
        if not local:
            return None
        return f"{prefix}:{local}"

    def iri_from_curie(self, curie: str) -> str | None:
        prefix, _, local = curie.partition(":")
        if not local:
            return None
        for p, base in self.entries:
            if p == prefix:
                return base + local
        return None


def to_curie(iri: str, prefix_map: PrefixMap) -> str | None:
    """Convert an IRI to a CURIE; None signals that no configured base matches."""
    return prefix_map.curie_from_iri(iri)


@dataclass(frozen=True)
class IngestConfig:
    prefix_map: PrefixMap
    # Relations to extract, as (curie, human-readable name), e.g. ("rdfs:subClassOf", "is_a").
    relation_curies: tuple[tuple[str, str], ...]
    # Per-prefix anchored regexes a full CURIE must match, e.g. ("FOODON", r"^FOODON:\d{8}$").
    id_patterns: tuple[tuple[str, str], ...]
    concept_classes: tuple[str, ...] = (OWL_CLASS, SKOS_CONCEPT)

    def __post_init__(self) -> None:
        for prefix, pattern in self.id_patterns:
            if not pattern.startswith("^") or not pattern.endswith("$"):
                raise ValueError(f"id_pattern for {prefix} must be anchored with ^...$")
            re.compile(pattern)
        for curie, name in self.relation_curies:
            if not name:
                raise ValueError(f"relation {curie} has an empty human name")

    def pattern_for(self, prefix: str) -> re.Pattern[str] | None:
        for p, pattern in self.id_patterns:
            if p == prefix:
                return re.compile(pattern)
        return None


def validate_curie(curie: str, config: IngestConfig) -> bool:
    """True iff the CURIE's prefix has a configured pattern and the CURIE matches it."""
    prefix = curie.split(":", 1)[0]
    pattern = config.pattern_for(prefix)
    if pattern is None:
        return False
    return pattern.fullmatch(curie) is not None


@dataclass
class EntityRecord:
    """One ontology concept as stored in the JSON dump."""

    curie: str
    label: str
    synonyms: list[str] = field(default_factory=list)
    definition: str = UNDEFINED_DEFINITION
    relations: dict[str, list[str]] = field(default_factory=dict)
    parents: list[str] = field(default_factory=list)
    ancestors: list[str] = field(default_factory=list)


def check_record(record: EntityRecord) -> None:
    """Raise ValueError when a record violates its structural invariants."""
    if not record.curie or ":" not in record.curie:
        raise ValueError(f"malformed CURIE: {record.curie!r}")
    if not record.label:
        raise ValueError(f"{record.curie}: label must be non-empty")
    if not record.definition:
        raise ValueError(f"{record.curie}: empty definition (use {UNDEFINED_DEFINITION!r})")
    lowered = [s.lower() for s in record.synonyms]
    if len(set(lowered)) != len(lowered):
        raise ValueError(f"{record.curie}: duplicate synonyms")
    if record.label.lower() in lowered:
        raise ValueError(f"{record.curie}: label repeated in synonyms")
    if not set(record.parents) <= set(record.ancestors):
        raise ValueError(f"{record.curie}: parents must be a subset of ancestors")
    if record.curie in record.ancestors:
        raise ValueError(f"{record.curie}: record lists itself as ancestor")


@dataclass
class IngestReport:
    """Outcome counts for one extraction pass: candidates = emitted + skipped."""

    candidates: int = 0
    emitted: int = 0
    skipped: int = 0
    reasons: dict[str, int] = field(default_factory=dict)

    def skip(self, reason: str) -> None:
        self.skipped += 1
        self.reasons[reason] = self.reasons.get(reason, 0) + 1

    def as_dict(self) -> dict:
        return {
            "candidates": self.candidates,
            "emitted": self.emitted,
            "skipped": self.skipped,
            "reasons": dict(sorted(self.reasons.items())),
        }
