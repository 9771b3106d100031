"""Run metrics, drift adjudication, and the two-system comparison export."""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from decimal import ROUND_HALF_UP, Decimal
from enum import Enum
from typing import Iterable, Mapping

from .agents.parsing import parse_agent_json
from .agents.prompts import render_adjudicate_prompt
from .agents.providers import CompletionProvider
from .constants import ABSTAIN, purl_from_curie
from .errors import (
    EmptyRunError,
    MalformedResponseError,
    MentionMismatchError,
    MissingGoldError,
    SchemaError,
)
from .ingest.model import EntityRecord
from .pipeline import LinkResult

_CURIE_SHAPE = re.compile(r"^\S+:\S+$")


@dataclass(frozen=True)
class GoldAnnotation:
    mention: str
    targets: frozenset[str]

    def __post_init__(self) -> None:
        if not self.targets:
            raise ValueError(f"gold entry for {self.mention!r} has no targets")
        for target in self.targets:
            if not _CURIE_SHAPE.fullmatch(target) or target == ABSTAIN:
                raise ValueError(f"gold target {target!r} is not a CURIE")


@dataclass(frozen=True)
class RunRecord:
    mention: str
    y_first: str  # CURIE or ABSTAIN
    y_final: str  # CURIE or ABSTAIN; failed runs count as ABSTAIN
    hops: int
    used_synonyms: bool

    def __post_init__(self) -> None:
        if self.hops < 1:
            raise ValueError("hops must be >= 1")

    @classmethod
    def from_result(cls, result: LinkResult) -> "RunRecord":
        return cls(
            mention=result.mention,
            y_first=result.first_id,
            y_final=ABSTAIN if result.error is not None else result.final_id,
            hops=result.hops,
            used_synonyms=result.used_synonyms,
        )


@dataclass(frozen=True)
class EvalReport:
    m: int
    acc1_overall: float
    acc1_first: float
    acc1_final: float
    retry_rate: float
    synonym_rate: float

    def as_dict(self) -> dict:
        return {
            "m": self.m,
            "acc1_overall": self.acc1_overall,
            "acc1_first": self.acc1_first,
            "acc1_final": self.acc1_final,
            "retry_rate": self.retry_rate,
            "synonym_rate": self.synonym_rate,
        }


def compute_metrics(records: list[RunRecord], gold: list[GoldAnnotation]) -> EvalReport:
    """Accuracy, retry, and synonym rates over a run.

    Overall accuracy counts a mention correct when either pass hit a gold
    target; a retry is any run with more than one hop. Abstentions and failed
    runs are never correct. Records join gold by exact mention string.
    """
    if not records:
        raise EmptyRunError("no run records to evaluate")
    by_mention: dict[str, GoldAnnotation] = {}
    for annotation in gold:
        if annotation.mention in by_mention:
            raise SchemaError(f"duplicate gold mention: {annotation.mention!r}")
        by_mention[annotation.mention] = annotation

    overall = first = final = retries = synonyms = 0
    for record in records:
        annotation = by_mention.get(record.mention)
        if annotation is None:
            raise MissingGoldError(f"no gold annotation for mention {record.mention!r}")
        first_hit = record.y_first in annotation.targets
        final_hit = record.y_final in annotation.targets
        overall += first_hit or final_hit
        first += first_hit
        final += final_hit
        retries += record.hops > 1
        synonyms += record.used_synonyms

    m = len(records)
    return EvalReport(
        m=m,
        acc1_overall=overall / m,
        acc1_first=first / m,
        acc1_final=final / m,
        retry_rate=retries / m,
        synonym_rate=synonyms / m,
    )


class AdjudicationCategory(str, Enum):
    EXACT_MATCH = "Exact_Match"
    CLASS_VS_TAXON = "Class_vs_Taxon"
    HIERARCHY_DRIFT = "Hierarchy_Drift"
    SYNONYM_OR_LEXICAL = "Synonym_or_Lexical"
    CROSS_ONTOLOGY_EQUIVALENT = "Cross_Ontology_Equivalent"
    DATASET_ANNOTATION_ERROR = "Dataset_Annotation_Error"
    MODEL_INCORRECT = "Model_Incorrect"
    OTHER = "Other"


@dataclass(frozen=True)
class AdjudicationLabel:
    label: AdjudicationCategory
    selected_gold: str
    note: str = ""


def adjudicate(
    provider: CompletionProvider,
    query: str,
    chosen: EntityRecord,
    gold_records: list[EntityRecord],
) -> AdjudicationLabel:
    """Classify one prediction-gold disagreement.

    An identical CURIE short-circuits to Exact_Match without any provider
    call. Responses outside the eight categories, or naming a gold id that
    was never offered, coerce to Other with a validation note.
    """
    if not gold_records:
        raise ValueError("adjudication needs at least one gold record")
    gold_curies = {record.curie for record in gold_records}
    if chosen.curie in gold_curies:
        return AdjudicationLabel(AdjudicationCategory.EXACT_MATCH, chosen.curie)

    system_text, user_text = render_adjudicate_prompt(query, chosen, gold_records)
    response = provider.complete(system_text, user_text)
    fallback_gold = gold_records[0].curie
    try:
        parsed = parse_agent_json(response, ("selected_gold", "label"))
    except MalformedResponseError as exc:
        return AdjudicationLabel(
            AdjudicationCategory.OTHER, fallback_gold, f"unparseable adjudication ({exc})"
        )
    selected_gold = str(parsed["selected_gold"])
    raw_label = str(parsed["label"])
    try:
        label = AdjudicationCategory(raw_label)
    except ValueError:
        return AdjudicationLabel(
            AdjudicationCategory.OTHER,
            selected_gold if selected_gold in gold_curies else fallback_gold,
            f"label {raw_label!r} is not a known category",
        )
    if selected_gold not in gold_curies:
        return AdjudicationLabel(
            AdjudicationCategory.OTHER,
            fallback_gold,
            f"selected gold {selected_gold!r} was not among the offered terms",
        )
    return AdjudicationLabel(label, selected_gold)


def label_distribution(
    labels: Iterable[AdjudicationLabel | AdjudicationCategory],
) -> dict[AdjudicationCategory, tuple[int, float]]:
    """Counts and half-up one-decimal percentages per category, in category
    declaration order; only categories that occur are present."""
    counts: dict[AdjudicationCategory, int] = {}
    total = 0
    for item in labels:
        category = item.label if isinstance(item, AdjudicationLabel) else item
        counts[category] = counts.get(category, 0) + 1
        total += 1
    if total == 0:
        return {}
    result: dict[AdjudicationCategory, tuple[int, float]] = {}
    for category in AdjudicationCategory:
        if category in counts:
            count = counts[category]
            pct = Decimal(count * 100) / Decimal(total)
            result[category] = (count, float(pct.quantize(Decimal("0.1"), rounding=ROUND_HALF_UP)))
    return result


@dataclass
class ComparisonSide:
    curie: str
    label: str | None
    definition: str | None
    synonyms: list[str] = field(default_factory=list)
    purl: str | None = None

    def as_dict(self) -> dict:
        return {
            "curie": self.curie,
            "label": self.label,
            "definition": self.definition,
            "synonyms": self.synonyms,
            "purl": self.purl,
        }


def _side_for(result: LinkResult, dump: Mapping[str, EntityRecord]) -> ComparisonSide:
    if result.final_id == ABSTAIN:
        return ComparisonSide(curie=ABSTAIN, label=None, definition=None)
    record = dump.get(result.final_id)
    if record is None:
        return ComparisonSide(
            curie=result.final_id,
            label=result.label,
            definition=None,
            purl=purl_from_curie(result.final_id),
        )
    return ComparisonSide(
        curie=record.curie,
        label=record.label,
        definition=record.definition,
        synonyms=list(record.synonyms),
        purl=purl_from_curie(record.curie),
    )


def export_comparison(
    run_a: list[LinkResult],
    run_b: list[LinkResult],
    dump: Mapping[str, EntityRecord],
) -> dict:
    """Aligned side-by-side rows for the comparator UI. Both runs must cover
    exactly the same mentions, each mention once."""
    mentions_a = [r.mention for r in run_a]
    mentions_b = [r.mention for r in run_b]
    duplicates = sorted(
        {m for ms in (mentions_a, mentions_b) for m in ms if ms.count(m) > 1}
    )
    if duplicates:
        raise MentionMismatchError(f"duplicate mentions: {duplicates}", duplicates)
    only_a = sorted(set(mentions_a) - set(mentions_b))
    only_b = sorted(set(mentions_b) - set(mentions_a))
    if only_a or only_b:
        unaligned = only_a + only_b
        raise MentionMismatchError(f"unaligned mentions: {unaligned}", unaligned)

    b_by_mention = {r.mention: r for r in run_b}
    rows = [
        {
            "mention": result_a.mention,
            "side_a": _side_for(result_a, dump).as_dict(),
            "side_b": _side_for(b_by_mention[result_a.mention], dump).as_dict(),
        }
        for result_a in run_a
    ]
    return {"format": "ontolink-comparison", "version": 1, "rows": rows}
