"""Line-oriented N-Triples parser.

The only serialization the ingest pipeline requires. Richer RDF formats can be
normalized to the same triple stream by external tooling before ingest.
"""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path
from typing import IO, Union

from ..errors import RdfSyntaxError


@dataclass(frozen=True)
class Literal:
    value: str
    lang: str = ""
    datatype: str = ""


@dataclass(frozen=True)
class BlankNode:
    label: str


# IRIs are plain strings; literals and blank nodes carry their own wrappers.
Term = Union[str, Literal, BlankNode]
Triple = tuple[Union[str, BlankNode], str, Term]

_ECHAR = {
    "t": "\t",
    "b": "\b",
    "n": "\n",
    "r": "\r",
    "f": "\f",
    '"': '"',
    "'": "'",
    "\\": "\\",
}


class _LineScanner:
    def __init__(self, text: str, line_no: int):
        self.text = text
        self.pos = 0
        self.line_no = line_no

    def error(self, message: str) -> RdfSyntaxError:
        return RdfSyntaxError(message, self.line_no)

    def skip_ws(self) -> None:
        while self.pos < len(self.text) and self.text[self.pos] in " \t":
            self.pos += 1

    def at_end(self) -> bool:
        return self.pos >= len(self.text)

    def peek(self) -> str:
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def _unescape(self, raw: str, what: str) -> str:
        out: list[str] = []
        i = 0
        while i < len(raw):
            ch = raw[i]
            if ch != "\\":
                out.append(ch)
                i += 1
                continue
            if i + 1 >= len(raw):
                raise self.error(f"dangling escape in {what}")
            esc = raw[i + 1]
            if esc in _ECHAR:
                out.append(_ECHAR[esc])
                i += 2
            elif esc == "u" or esc == "U":
                width = 4 if esc == "u" else 8
                hexdigits = raw[i + 2 : i + 2 + width]
                if len(hexdigits) != width:
                    raise self.error(f"truncated \\{esc} escape in {what}")
                try:
                    out.append(chr(int(hexdigits, 16)))
                except ValueError:
                    raise self.error(f"invalid \\{esc} escape in {what}") from None
                i += 2 + width
            else:
                raise self.error(f"unknown escape '\\{esc}' in {what}")
        return "".join(out)

    def read_iri(self) -> str:
        end = self.text.find(">", self.pos + 1)
        if end < 0:
            raise self.error("unterminated IRI")
        raw = self.text[self.pos + 1 : end]
        self.pos = end + 1
        iri = self._unescape(raw, "IRI")
        if not iri:
            raise self.error("empty IRI")
        return iri

    def read_blank(self) -> BlankNode:
        if not self.text.startswith("_:", self.pos):
            raise self.error("expected blank node")
        i = self.pos + 2
        start = i
        while i < len(self.text) and (self.text[i].isalnum() or self.text[i] in "_-."):
            i += 1
        if i == start:
            raise self.error("blank node with empty label")
        self.pos = i
        return BlankNode(self.text[start:i])

    def read_literal(self) -> Literal:
        # Find the closing quote, honoring backslash escapes.
        i = self.pos + 1
        while True:
            if i >= len(self.text):
                raise self.error("unterminated literal")
            ch = self.text[i]
            if ch == "\\":
                i += 2
                continue
            if ch == '"':
                break
            i += 1
        raw = self.text[self.pos + 1 : i]
        self.pos = i + 1
        value = self._unescape(raw, "literal")
        lang = ""
        datatype = ""
        if self.peek() == "@":
            self.pos += 1
            start = self.pos
            while self.pos < len(self.text) and (self.text[self.pos].isalnum() or self.text[self.pos] == "-"):
                self.pos += 1
            lang = self.text[start : self.pos]
            if not lang:
                raise self.error("empty language tag")
        elif self.text.startswith("^^", self.pos):
            self.pos += 2
            if self.peek() != "<":
                raise self.error("datatype must be an IRI")
            datatype = self.read_iri()
        return Literal(value, lang, datatype)

    def read_subject(self) -> Union[str, BlankNode]:
        ch = self.peek()
        if ch == "<":
            return self.read_iri()
        if ch == "_":
            return self.read_blank()
        raise self.error("subject must be an IRI or blank node")

    def read_object(self) -> Term:
        ch = self.peek()
        if ch == "<":
            return self.read_iri()
        if ch == "_":
            return self.read_blank()
        if ch == '"':
            return self.read_literal()
        raise self.error("object must be an IRI, blank node, or literal")


def parse_ntriples(source: Union[bytes, str, Path, IO[bytes]]) -> list[Triple]:
    """Parse N-Triples into a duplicate-free triple list in document order.

    Raises RdfSyntaxError (with the offending 1-based line number) on malformed
    input. Blank lines and full-line ``#`` comments are skipped.
    """
    if isinstance(source, Path):
        text = source.read_text(encoding="utf-8")
    elif isinstance(source, bytes):
        text = source.decode("utf-8")
    elif isinstance(source, str):
        text = source
    else:
        data = source.read()
        text = data.decode("utf-8") if isinstance(data, bytes) else data

    triples: list[Triple] = []
    seen: set[Triple] = set()
    for line_no, raw_line in enumerate(text.split("\n"), start=1):
        line = raw_line.strip()
        if not line or line.startswith("#"):
            continue
        scanner = _LineScanner(line, line_no)
        subject = scanner.read_subject()
        scanner.skip_ws()
        if scanner.peek() != "<":
            raise scanner.error("predicate must be an IRI")
        predicate = scanner.read_iri()
        scanner.skip_ws()
        obj = scanner.read_object()
        scanner.skip_ws()
        if scanner.peek() != ".":
            raise scanner.error("missing terminating '.'")
        scanner.pos += 1
        scanner.skip_ws()
        if not scanner.at_end() and scanner.peek() != "#":
            raise scanner.error("unexpected content after terminating '.'")
        triple = (subject, predicate, obj)
        if triple not in seen:
            seen.add(triple)
            triples.append(triple)
    return triples
