import pytest

from ontolink.errors import RdfSyntaxError
from ontolink.ingest.ntriples import BlankNode, Literal, parse_ntriples


def test_empty_file_gives_empty_tripleset():
    assert parse_ntriples("") == []
    assert parse_ntriples(b"\n\n# only a comment\n") == []


def test_flour_fixture_has_six_triples(flour_path):
    triples = parse_ntriples(flour_path)
    assert len(triples) == 6


def test_unterminated_literal_names_the_line():
    text = (
        '<http://x.org/a> <http://x.org/p> <http://x.org/b> .\n'
        '<http://x.org/a> <http://x.org/label> "broken .\n'
    )
    with pytest.raises(RdfSyntaxError) as excinfo:
        parse_ntriples(text)
    assert excinfo.value.line == 2
    assert "line 2" in str(excinfo.value)


def test_missing_dot_is_an_error():
    with pytest.raises(RdfSyntaxError):
        parse_ntriples('<http://x.org/a> <http://x.org/p> "v"\n')


def test_literal_flavors():
    text = (
        '<http://x/s> <http://x/p> "plain" .\n'
        '<http://x/s> <http://x/p2> "tagged"@en .\n'
        '<http://x/s> <http://x/p3> "typed"^^<http://www.w3.org/2001/XMLSchema#string> .\n'
        '<http://x/s> <http://x/p4> "esc \\"q\\" \\n \\u00e9" .\n'
    )
    triples = parse_ntriples(text)
    objects = [t[2] for t in triples]
    assert objects[0] == Literal("plain")
    assert objects[1] == Literal("tagged", lang="en")
    assert objects[2] == Literal("typed", datatype="http://www.w3.org/2001/XMLSchema#string")
    assert objects[3] == Literal('esc "q" \n é')


def test_blank_nodes_and_duplicates():
    text = (
        '_:b0 <http://x/p> <http://x/o> .\n'
        '_:b0 <http://x/p> <http://x/o> .\n'
    )
    triples = parse_ntriples(text)
    assert triples == [(BlankNode("b0"), "http://x/p", "http://x/o")]


def test_trailing_comment_allowed():
    triples = parse_ntriples('<http://x/s> <http://x/p> <http://x/o> . # good\n')
    assert len(triples) == 1


def test_garbage_after_dot_is_an_error():
    with pytest.raises(RdfSyntaxError):
        parse_ntriples('<http://x/s> <http://x/p> <http://x/o> . <extra>\n')
