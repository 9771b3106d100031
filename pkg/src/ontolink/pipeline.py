"""The linking loop: retrieve, select, score, and retry once on rejection.

A mention is accepted as soon as the scorer's confidence reaches tau. Below
tau, the synonym generator proposes reformulations conditioned on the
scorer's explanation; retrieval re-runs over the original mention plus the
reformulations, their candidate lists are round-robin interleaved, and
selection and scoring run again - the scorer always judging against the
original mention so reformulations cannot drift the target. If the second
pass still falls short, the higher-confidence pass of the two is reported,
together with the synonym proposals and up to three alternatives for review.
"""

from __future__ import annotations

import json
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

from .agents.providers import CompletionProvider, ProviderCall, RecordingProvider
from .agents.scorer import ConfidenceAssessment, score
from .agents.selector import SelectorDecision, select
from .agents.synonyms import generate_synonyms
from .constants import ABSTAIN
from .errors import ProviderError, SchemaError
from .retriever import Candidate, Mention, RetrievalConfig, SearchIndexes, fuse_candidates, retrieve


@dataclass(frozen=True)
class PipelineConfig:
    tau: float = 0.6
    max_hops: int = 1
    retrieval: RetrievalConfig = field(default_factory=RetrievalConfig)

    def __post_init__(self) -> None:
        if not 0.0 <= self.tau <= 1.0:
            raise ValueError("tau must lie in [0, 1]")
        if self.max_hops < 0:
            raise ValueError("max_hops must be >= 0")


@dataclass
class LinkResult:
    mention: str
    final_id: str  # CURIE or ABSTAIN
    first_id: str  # CURIE or ABSTAIN, from the first pass
    label: str | None
    selector_rationale: str
    scorer_rationale: str
    confidence: float
    hops: int
    used_synonyms: bool
    # The three review fields are set iff the final confidence is below tau.
    rejection_rationale: str | None = None
    synonym_proposals: list[str] | None = None
    alternatives: list[str] | None = None
    error: str | None = None

    @property
    def rejected(self) -> bool:
        return self.synonym_proposals is not None


@dataclass
class _Pass:
    decision: SelectorDecision
    assessment: ConfidenceAssessment
    candidates: list[Candidate]


def _run_pass(
    provider: CompletionProvider,
    mention: Mention,
    candidates: list[Candidate],
    indexes: SearchIndexes,
    tau: float,
) -> _Pass:
    if not candidates:
        return _Pass(
            SelectorDecision(ABSTAIN, "no candidates retrieved"),
            ConfidenceAssessment(0.0, "no candidates retrieved"),
            candidates,
        )
    decision = select(provider, mention, candidates)
    if decision.abstained:
        return _Pass(
            decision,
            ConfidenceAssessment(0.0, f"selector abstained: {decision.explanation}"),
            candidates,
        )
    assessment = score(
        provider, mention, decision, indexes.records[decision.chosen_id], candidates, tau
    )
    return _Pass(decision, assessment, candidates)


def _retry_candidates(
    mention: Mention,
    proposals: list[str],
    indexes: SearchIndexes,
    config: RetrievalConfig,
) -> list[Candidate]:
    """Second-pass retrieval: the original query plus every reformulation, one
    hybrid retrieval each, round-robin interleaved, then re-ranked against the
    original mention."""
    queries = [mention] + [Mention(text, mention.context) for text in proposals]
    per_query = [retrieve(q, indexes, config) for q in queries]
    interleaved: list[Candidate] = []
    for rank in range(max(len(lst) for lst in per_query)):
        for lst in per_query:
            if rank < len(lst):
                interleaved.append(lst[rank])
    assert config.k_tot is not None
    return fuse_candidates(interleaved, mention, indexes.records, config.k_tot)


def link(
    mention: Mention,
    indexes: SearchIndexes,
    provider: CompletionProvider,
    config: PipelineConfig | None = None,
) -> LinkResult:
    """Link one mention. Provider failures produce an error-tagged result
    rather than an exception, so batch runs stay isolated per mention."""
    config = config or PipelineConfig()
    first_id = ABSTAIN
    try:
        candidates = retrieve(mention, indexes, config.retrieval)
        first = _run_pass(provider, mention, candidates, indexes, config.tau)
        first_id = first.decision.chosen_id

        accepted = first.assessment.score >= config.tau
        no_candidates = not candidates
        if accepted or no_candidates or config.max_hops == 0:
            return _finalize(mention, first, first_id, hops=1, used_synonyms=False,
                             proposals=[], config=config, indexes=indexes)

        proposal = generate_synonyms(
            provider, mention, failure_reason=first.assessment.explanation
        )
        if not proposal.synonyms:
            return _finalize(mention, first, first_id, hops=1, used_synonyms=False,
                             proposals=[], config=config, indexes=indexes)

        retry_pool = _retry_candidates(mention, proposal.synonyms, indexes, config.retrieval)
        second = _run_pass(provider, mention, retry_pool, indexes, config.tau)
        best = second if second.assessment.score > first.assessment.score else first
        return _finalize(mention, best, first_id, hops=2, used_synonyms=True,
                         proposals=proposal.synonyms, config=config, indexes=indexes)
    except ProviderError as exc:
        return LinkResult(
            mention=mention.text,
            final_id=ABSTAIN,
            first_id=first_id,
            label=None,
            selector_rationale="",
            scorer_rationale="",
            confidence=0.0,
            hops=1,
            used_synonyms=False,
            error=str(exc),
        )


def _finalize(
    mention: Mention,
    chosen: _Pass,
    first_id: str,
    hops: int,
    used_synonyms: bool,
    proposals: list[str],
    config: PipelineConfig,
    indexes: SearchIndexes,
) -> LinkResult:
    final_id = chosen.decision.chosen_id
    label = indexes.records[final_id].label if final_id != ABSTAIN else None
    result = LinkResult(
        mention=mention.text,
        final_id=final_id,
        first_id=first_id,
        label=label,
        selector_rationale=chosen.decision.explanation,
        scorer_rationale=chosen.assessment.explanation,
        confidence=chosen.assessment.score,
        hops=hops,
        used_synonyms=used_synonyms,
    )
    if result.confidence < config.tau:
        result.rejection_rationale = chosen.assessment.explanation
        result.synonym_proposals = list(proposals)
        result.alternatives = chosen.assessment.alternatives[:3]
    return result


_BASE_KEYS = (
    "mention",
    "final_id",
    "first_id",
    "label",
    "selector_rationale",
    "scorer_rationale",
    "confidence",
    "hops",
    "used_synonyms",
)
_REVIEW_KEYS = ("rejection_rationale", "synonym_proposals", "alternatives")


def serialize_result(result: LinkResult) -> str:
    """One JSON object per result, fixed key order; the review keys appear iff
    the final confidence fell below tau; ABSTAIN stays the literal "-1"."""
    payload: dict = {key: getattr(result, key) for key in _BASE_KEYS}
    if result.synonym_proposals is not None:
        for key in _REVIEW_KEYS:
            payload[key] = getattr(result, key)
    if result.error is not None:
        payload["error"] = result.error
    return json.dumps(payload, ensure_ascii=False)


def parse_result(text: str) -> LinkResult:
    try:
        payload = json.loads(text)
    except json.JSONDecodeError as exc:
        raise SchemaError(f"result line is not valid JSON: {exc}") from exc
    if not isinstance(payload, dict):
        raise SchemaError("result line must be a JSON object")
    missing = [k for k in _BASE_KEYS if k not in payload]
    if missing:
        raise SchemaError(f"result line lacks keys: {missing}")
    return LinkResult(
        mention=payload["mention"],
        final_id=payload["final_id"],
        first_id=payload["first_id"],
        label=payload["label"],
        selector_rationale=payload["selector_rationale"],
        scorer_rationale=payload["scorer_rationale"],
        confidence=payload["confidence"],
        hops=payload["hops"],
        used_synonyms=payload["used_synonyms"],
        rejection_rationale=payload.get("rejection_rationale"),
        synonym_proposals=payload.get("synonym_proposals"),
        alternatives=payload.get("alternatives"),
        error=payload.get("error"),
    )


@dataclass
class RunLog:
    entries: list[dict] = field(default_factory=list)

    def as_dicts(self) -> list[dict]:
        return self.entries


def _log_entry(index: int, mention: str, calls: list[ProviderCall]) -> dict:
    return {
        "index": index,
        "mention": mention,
        "calls": [
            {
                "agent": c.agent,
                "prompt_version": c.prompt_version,
                "system_text": c.system_text,
                "user_text": c.user_text,
                "response_text": c.response_text,
                "elapsed_ms": c.elapsed_ms,
            }
            for c in calls
        ],
    }


def link_batch(
    mentions: list[Mention],
    indexes: SearchIndexes,
    provider: CompletionProvider,
    config: PipelineConfig | None = None,
    jobs: int = 1,
) -> tuple[list[LinkResult], RunLog]:
    """Order-preserving batch linking with per-mention isolation. The run log
    captures every prompt, response, and timing, grouped by mention index."""
    config = config or PipelineConfig()
    log = RunLog()

    def run_one(indexed: tuple[int, Mention]) -> tuple[int, LinkResult, list[ProviderCall]]:
        index, mention = indexed
        recorder = RecordingProvider(provider)
        result = link(mention, indexes, recorder, config)
        return index, result, recorder.log

    if jobs <= 1:
        outcomes = [run_one(item) for item in enumerate(mentions)]
    else:
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            outcomes = list(pool.map(run_one, enumerate(mentions)))

    outcomes.sort(key=lambda item: item[0])
    results = [result for _, result, _ in outcomes]
    for index, result, calls in outcomes:
        log.entries.append(_log_entry(index, result.mention, calls))
    return results, log
