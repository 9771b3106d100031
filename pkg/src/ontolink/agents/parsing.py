"""Tolerant extraction of JSON objects from LLM responses."""

from __future__ import annotations

import json
from typing import Iterable

from ..errors import MalformedResponseError, MissingKeyError


def _object_slices(text: str) -> Iterable[str]:
    """Candidate top-level ``{...}`` slices, found by brace matching that is
    aware of string literals."""
    start = text.find("{")
    while start >= 0:
        depth = 0
        in_string = False
        escaped = False
        for i in range(start, len(text)):
            ch = text[i]
            if in_string:
                if escaped:
                    escaped = False
                elif ch == "\\":
                    escaped = True
                elif ch == '"':
                    in_string = False
                continue
            if ch == '"':
                in_string = True
            elif ch == "{":
                depth += 1
            elif ch == "}":
                depth -= 1
                if depth == 0:
                    yield text[start : i + 1]
                    break
        start = text.find("{", start + 1)


def parse_agent_json(response_text: str, expected_keys: Iterable[str]) -> dict:
    """First parseable JSON object in the response, fences and prose stripped.

    Raises MalformedResponseError when no object parses, MissingKeyError when
    one parses but lacks a required key.
    """
    for slice_ in _object_slices(response_text):
        try:
            parsed = json.loads(slice_)
        except json.JSONDecodeError:
            continue
        if isinstance(parsed, dict):
            missing = [k for k in expected_keys if k not in parsed]
            if missing:
                raise MissingKeyError(f"agent response lacks keys: {missing}")
            return parsed
    raise MalformedResponseError("no JSON object found in agent response")
