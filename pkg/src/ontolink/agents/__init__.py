"""LLM agents: selection, confidence scoring, synonym generation."""

from .parsing import parse_agent_json
from .prompts import (
    render_adjudicate_prompt,
    render_scorer_prompt,
    render_selector_prompt,
    render_synonyms_prompt,
)
from .providers import (
    CompletionProvider,
    HttpChatProvider,
    MockCompletionProvider,
    ProviderCall,
    RecordingProvider,
)
from .scorer import ConfidenceAssessment, score
from .selector import SelectorDecision, select
from .synonyms import SynonymProposal, generate_synonyms

__all__ = [
    "CompletionProvider",
    "ConfidenceAssessment",
    "HttpChatProvider",
    "MockCompletionProvider",
    "ProviderCall",
    "RecordingProvider",
    "SelectorDecision",
    "SynonymProposal",
    "generate_synonyms",
    "parse_agent_json",
    "render_adjudicate_prompt",
    "render_scorer_prompt",
    "render_selector_prompt",
    "render_synonyms_prompt",
    "score",
    "select",
]
