"""Selector agent: choose one candidate or abstain."""

from __future__ import annotations

from dataclasses import dataclass

from ..constants import ABSTAIN
from ..errors import MalformedResponseError
from ..retriever import Candidate, Mention
from .parsing import parse_agent_json
from .prompts import render_selector_prompt
from .providers import CompletionProvider


@dataclass
class SelectorDecision:
    chosen_id: str  # a candidate CURIE, or ABSTAIN
    explanation: str

    @property
    def abstained(self) -> bool:
        return self.chosen_id == ABSTAIN


def select(
    provider: CompletionProvider, mention: Mention, candidates: list[Candidate]
) -> SelectorDecision:
    """One selection round. Any answer outside the prompted candidate set is
    coerced to ABSTAIN so the downstream loop keeps well-defined semantics."""
    system_text, user_text = render_selector_prompt(mention, candidates)
    response = provider.complete(system_text, user_text)
    try:
        parsed = parse_agent_json(response, ("chosen_id", "explanation"))
    except MalformedResponseError as exc:
        return SelectorDecision(ABSTAIN, f"unparseable selector response ({exc})")
    chosen_id = str(parsed["chosen_id"])
    explanation = str(parsed["explanation"])
    if chosen_id == ABSTAIN:
        return SelectorDecision(ABSTAIN, explanation)
    if chosen_id not in {c.curie for c in candidates}:
        return SelectorDecision(
            ABSTAIN, f"selector answered {chosen_id!r}, which is not a prompted candidate"
        )
    return SelectorDecision(chosen_id, explanation)
