"""Synonym generator agent: failure-conditioned query reformulations."""

from __future__ import annotations

from dataclasses import dataclass, field

from ..errors import MalformedResponseError
from ..retriever import Mention
from .parsing import parse_agent_json
from .prompts import render_synonyms_prompt
from .providers import CompletionProvider

MAX_SYNONYMS = 5


@dataclass
class SynonymProposal:
    synonyms: list[str] = field(default_factory=list)  # <= 5, never the original mention
    failure_reason: str = ""

    def __bool__(self) -> bool:
        return bool(self.synonyms)


def generate_synonyms(
    provider: CompletionProvider, mention: Mention, failure_reason: str
) -> SynonymProposal:
    """Up to five reformulations conditioned on the scorer's failure reason.

    An unparseable response yields an empty proposal, which ends the retry
    loop instead of erroring the mention.
    """
    if not failure_reason.strip():
        raise ValueError("failure_reason must be non-empty")
    system_text, user_text = render_synonyms_prompt(mention, failure_reason)
    response = provider.complete(system_text, user_text)
    try:
        parsed = parse_agent_json(response, ("synonyms",))
    except MalformedResponseError:
        return SynonymProposal([], failure_reason)
    raw = parsed.get("synonyms")
    if not isinstance(raw, list):
        return SynonymProposal([], failure_reason)

    original = mention.text.lower()
    cleaned: list[str] = []
    seen: set[str] = set()
    for item in raw:
        text = str(item).strip()
        lowered = text.lower()
        if not text or lowered == original or lowered in seen:
            continue
        seen.add(lowered)
        cleaned.append(text)
        if len(cleaned) == MAX_SYNONYMS:
            break
    return SynonymProposal(cleaned, failure_reason)
