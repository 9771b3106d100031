"""Scorer agent: calibrated confidence for a selection, with alternatives."""

from __future__ import annotations

from dataclasses import dataclass, field

from ..errors import MalformedResponseError
from ..ingest.model import EntityRecord
from ..retriever import Candidate, Mention
from .parsing import parse_agent_json
from .prompts import render_scorer_prompt
from .providers import CompletionProvider
from .selector import SelectorDecision


@dataclass
class ConfidenceAssessment:
    score: float  # in [0, 1]
    explanation: str
    alternatives: list[str] = field(default_factory=list)  # <= 3 candidate CURIEs


def score(
    provider: CompletionProvider,
    mention: Mention,
    decision: SelectorDecision,
    chosen_record: EntityRecord,
    candidates: list[Candidate],
    tau: float = 0.6,
) -> ConfidenceAssessment:
    """Assess the chosen term against the mention.

    The mention passed here is always the original user mention, also on retry
    passes. Scoring fails closed: an unparseable response becomes confidence
    0.0 so that abstention-gating stays safe. Alternatives survive only below
    tau, filtered to candidate CURIEs and capped at three.
    """
    if decision.abstained:
        raise ValueError("cannot score an abstained selection")
    system_text, user_text = render_scorer_prompt(mention, chosen_record, candidates, tau)
    response = provider.complete(system_text, user_text)
    try:
        parsed = parse_agent_json(response, ("score", "explanation"))
        value = float(parsed["score"])
    except (MalformedResponseError, TypeError, ValueError):
        return ConfidenceAssessment(0.0, "unparseable assessment")

    value = min(1.0, max(0.0, value))
    explanation = str(parsed["explanation"])

    alternatives: list[str] = []
    if value < tau:
        candidate_curies = {c.curie for c in candidates}
        raw = parsed.get("alternatives") or []
        if isinstance(raw, list):
            for item in raw:
                curie = str(item)
                if curie in candidate_curies and curie != decision.chosen_id and curie not in alternatives:
                    alternatives.append(curie)
                if len(alternatives) == 3:
                    break
    return ConfidenceAssessment(value, explanation, alternatives)
