"""Prompt assembly from the plain-text templates shipped with the package."""

from __future__ import annotations

from functools import lru_cache
from pathlib import Path
from string import Template

from ..errors import EmptyCandidatesError
from ..ingest.model import EntityRecord
from ..retriever import Candidate, Mention

_TEMPLATE_DIR = Path(__file__).parent / "templates"


@lru_cache(maxsize=None)
def _template(name: str) -> Template:
    return Template((_TEMPLATE_DIR / name).read_text(encoding="utf-8"))


def _one_line(text: str) -> str:
    return " ".join(text.split())


def _candidate_entry(index: int, candidate: Candidate) -> str:
    synonyms = "; ".join(candidate.synonyms_shown) if candidate.synonyms_shown else "(none)"
    parts = [
        f"{index}. id: {candidate.curie}",
        f"label: {_one_line(candidate.label)}",
        f"synonyms: {_one_line(synonyms)}",
        f"definition: {_one_line(candidate.definition_snippet)}",
    ]
    if candidate.matched_surface:
        parts.append(f"matched: {_one_line(candidate.matched_surface)}")
    if candidate.relations_shown:
        rendered = "; ".join(
            f"{name} -> {', '.join(targets)}" for name, targets in candidate.relations_shown
        )
        parts.append(f"relations: {rendered}")
    return " | ".join(parts)


def render_selector_prompt(mention: Mention, candidates: list[Candidate]) -> tuple[str, str]:
    if not candidates:
        raise EmptyCandidatesError("selector needs at least one candidate")
    context_line = f"Context: {_one_line(mention.context)}" if mention.context else "Context: (none)"
    user = _template("selector.user.txt").substitute(
        mention=_one_line(mention.text),
        context_line=context_line,
        candidates="\n".join(_candidate_entry(i + 1, c) for i, c in enumerate(candidates)),
    )
    return _template("selector.system.txt").template, user


def render_scorer_prompt(
    mention: Mention,
    chosen: EntityRecord,
    candidates: list[Candidate],
    tau: float,
) -> tuple[str, str]:
    others = [c for c in candidates if c.curie != chosen.curie]
    listing = "\n".join(_candidate_entry(i + 1, c) for i, c in enumerate(others)) or "(none)"
    user = _template("scorer.user.txt").substitute(
        mention=_one_line(mention.text),
        chosen_id=chosen.curie,
        chosen_label=_one_line(chosen.label),
        chosen_synonyms="; ".join(chosen.synonyms) if chosen.synonyms else "(none)",
        chosen_definition=_one_line(chosen.definition),
        tau=f"{tau:g}",
        candidates=listing,
    )
    return _template("scorer.system.txt").template, user


def render_synonyms_prompt(mention: Mention, failure_reason: str) -> tuple[str, str]:
    user = _template("synonyms.user.txt").substitute(
        mention=_one_line(mention.text),
        failure_reason=_one_line(failure_reason),
    )
    return _template("synonyms.system.txt").template, user


def render_adjudicate_prompt(
    query: str, chosen: EntityRecord, gold_records: list[EntityRecord]
) -> tuple[str, str]:
    entries = "\n".join(
        f"- id: {r.curie} | label: {_one_line(r.label)}" for r in gold_records
    )
    user = _template("adjudicate.user.txt").substitute(
        query=_one_line(query),
        chosen_id=chosen.curie,
        chosen_label=_one_line(chosen.label),
        gold_entries=entries,
    )
    return _template("adjudicate.system.txt").template, user
