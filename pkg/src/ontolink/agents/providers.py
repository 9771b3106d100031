"""Completion providers: the shared protocol, an HTTP client, a deterministic
mock for offline runs, and a recording wrapper for run logs."""

from __future__ import annotations

import json
import os
import re
import threading
import time
from dataclasses import dataclass, field
from typing import Protocol, Sequence

import httpx

from ..errors import ProviderError

_VERSION_RE = re.compile(r"\(prompt-version: ([a-z]+)-v(\d+)\)")
_MENTION_RE = re.compile(r"^(?:Mention|Query): (.*)$", re.MULTILINE)
_ENTRY_RE = re.compile(r"^(?:\d+\.|-) id: (\S+)((?: \| [a-z]+: [^|\n]*)*)$", re.MULTILINE)
_CHOSEN_RE = re.compile(r"^Chosen: id: (\S+)((?: \| [a-z]+: [^|\n]*)*)$", re.MULTILINE)


class CompletionProvider(Protocol):
    name: str

    def complete(self, system_text: str, user_text: str) -> str: ...


def agent_kind(system_text: str) -> str:
    """Agent family an assembled prompt belongs to, from its version marker."""
    match = _VERSION_RE.search(system_text)
    return match.group(1) if match else "unknown"


def prompt_version(system_text: str) -> str:
    match = _VERSION_RE.search(system_text)
    return f"{match.group(1)}-v{match.group(2)}" if match else "unknown"


def _parse_fields(tail: str) -> dict[str, str]:
    fields: dict[str, str] = {}
    for part in tail.split(" | "):
        key, sep, value = part.partition(": ")
        if sep:
            fields[key.strip()] = value.strip()
    return fields


@dataclass
class _PromptEntry:
    curie: str
    label: str
    synonyms: list[str]


def _parse_entries(user_text: str, pattern: re.Pattern[str]) -> list[_PromptEntry]:
    entries = []
    for match in pattern.finditer(user_text):
        fields = _parse_fields(match.group(2))
        synonyms = fields.get("synonyms", "")
        entries.append(
            _PromptEntry(
                curie=match.group(1),
                label=fields.get("label", ""),
                synonyms=[] if synonyms in ("", "(none)") else synonyms.split("; "),
            )
        )
    return entries


@dataclass
class MockCall:
    agent: str
    mention: str


class MockCompletionProvider:
    """Deterministic stand-in for a chat model.

    Unscripted behavior: the selector picks the first candidate whose label or
    synonym equals the mention case-insensitively, else the first candidate;
    the scorer returns 1.0 on such an exact correspondence and 0.2 otherwise;
    the synonym generator answers from a fixed table. Individual responses can
    be scripted per agent and mention, which is how worked scenarios are
    replayed in tests.
    """

    LOW_SCORE = 0.2

    def __init__(
        self,
        scripted: dict[str, str] | None = None,
        synonym_table: dict[str, Sequence[str]] | None = None,
    ):
        self.name = "mock"
        self.scripted = dict(scripted or {})
        self.synonym_table = {k.lower(): list(v) for k, v in (synonym_table or {}).items()}
        self.calls: list[MockCall] = []
        self._lock = threading.Lock()

    def complete(self, system_text: str, user_text: str) -> str:
        kind = agent_kind(system_text)
        mention_match = _MENTION_RE.search(user_text)
        mention = mention_match.group(1) if mention_match else ""
        with self._lock:
            self.calls.append(MockCall(kind, mention))

        key = f"{kind}:{mention.lower()}"
        if kind == "adjudicate":
            chosen = _CHOSEN_RE.search(user_text)
            key = f"adjudicate:{mention.lower()}|{chosen.group(1) if chosen else ''}"
        if key in self.scripted:
            response = self.scripted[key]
            # scripted failure injection: "!error:<message>"
            if response.startswith("!error:"):
                raise ProviderError(response[len("!error:"):])
            return response

        if kind == "selector":
            return self._select(mention, user_text)
        if kind == "scorer":
            return self._score(mention, user_text)
        if kind == "synonyms":
            proposals = self.synonym_table.get(mention.lower(), [])
            return json.dumps({"synonyms": proposals})
        if kind == "adjudicate":
            entries = _parse_entries(user_text, _ENTRY_RE)
            gold = entries[0].curie if entries else ""
            return json.dumps({"selected_gold": gold, "label": "Other"})
        raise ProviderError(f"mock cannot serve prompt of kind {kind!r}")

    def _select(self, mention: str, user_text: str) -> str:
        entries = _parse_entries(user_text, _ENTRY_RE)
        if not entries:
            return json.dumps({"chosen_id": "-1", "explanation": "no candidates listed"})
        wanted = mention.lower()
        for entry in entries:
            if entry.label.lower() == wanted or any(s.lower() == wanted for s in entry.synonyms):
                return json.dumps(
                    {"chosen_id": entry.curie, "explanation": "label or synonym equals the mention"}
                )
        return json.dumps(
            {"chosen_id": entries[0].curie, "explanation": "defaulted to the first candidate"}
        )

    def _score(self, mention: str, user_text: str) -> str:
        chosen_match = _CHOSEN_RE.search(user_text)
        wanted = mention.lower()
        if chosen_match:
            fields = _parse_fields(chosen_match.group(2))
            label = fields.get("label", "")
            synonyms = fields.get("synonyms", "")
            surfaces = [label] + ([] if synonyms in ("", "(none)") else synonyms.split("; "))
            if any(s.lower() == wanted for s in surfaces if s):
                return json.dumps(
                    {"score": 1.0, "explanation": "exact label or synonym match with the mention"}
                )
        others = _parse_entries(user_text, _ENTRY_RE)
        return json.dumps(
            {
                "score": self.LOW_SCORE,
                "explanation": "no exact surface correspondence between the mention and the chosen term",
                "alternatives": [e.curie for e in others[:3]],
            }
        )


@dataclass
class ProviderCall:
    agent: str
    prompt_version: str
    system_text: str
    user_text: str
    response_text: str
    elapsed_ms: float


@dataclass
class RecordingProvider:
    """Wraps a provider and keeps an append-only log of every exchange."""

    inner: CompletionProvider
    log: list[ProviderCall] = field(default_factory=list)

    @property
    def name(self) -> str:
        return self.inner.name

    def complete(self, system_text: str, user_text: str) -> str:
        started = time.perf_counter()
        response = self.inner.complete(system_text, user_text)
        elapsed_ms = (time.perf_counter() - started) * 1000.0
        self.log.append(
            ProviderCall(
                agent=agent_kind(system_text),
                prompt_version=prompt_version(system_text),
                system_text=system_text,
                user_text=user_text,
                response_text=response,
                elapsed_ms=elapsed_ms,
            )
        )
        return response


class HttpChatProvider:
    """Chat-completions client for an OpenAI-style JSON endpoint.

    The endpoint URL is used as-is; the API key is read from the named
    environment variable at call time and sent as a bearer token when set.
    """

    def __init__(
        self,
        endpoint: str,
        model: str,
        api_key_env: str = "ONTOLINK_API_KEY",
        timeout: float = 60.0,
        retries: int = 2,
        transport: httpx.BaseTransport | None = None,
    ):
        self.name = f"http:{model}"
        self.endpoint = endpoint
        self.model = model
        self.api_key_env = api_key_env
        self.timeout = timeout
        self.retries = retries
        self._transport = transport

    def complete(self, system_text: str, user_text: str) -> str:
        headers = {}
        key = os.environ.get(self.api_key_env, "")
        if key:
            headers["Authorization"] = f"Bearer {key}"
        payload = {
            "model": self.model,
            "messages": [
                {"role": "system", "content": system_text},
                {"role": "user", "content": user_text},
            ],
        }
        last_error: Exception | None = None
        for _ in range(self.retries + 1):
            try:
                with httpx.Client(transport=self._transport, timeout=self.timeout) as client:
                    response = client.post(self.endpoint, json=payload, headers=headers)
                if response.status_code >= 500:
                    last_error = ProviderError(f"chat endpoint returned {response.status_code}")
                    continue
                if response.status_code != 200:
                    raise ProviderError(f"chat endpoint returned {response.status_code}")
                content = response.json()["choices"][0]["message"]["content"]
                if not isinstance(content, str):
                    raise ProviderError("chat endpoint returned a non-text message")
                return content
            except (httpx.HTTPError, KeyError, IndexError, ValueError) as exc:
                last_error = exc
        raise ProviderError(f"chat request failed: {last_error}")
