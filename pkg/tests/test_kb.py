from __future__ import annotations

import gzip
import warnings

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from triplebench.errors import NTriplesSyntaxError
from triplebench.kb import (
    RDFS_LABEL,
    BNode,
    IRI,
    KnowledgeBase,
    Literal,
    Triple,
    expand_curie,
    load_ntriples,
    local_name_label,
    parse_ntriples,
)

from conftest import DBO, DBR, EINSTEIN, data_path

ULM = IRI(DBR + "Ulm")
GERMANY = IRI(DBR + "Germany")


@pytest.fixture
def sample():
    return load_ntriples(data_path("einstein.nt"))


def test_sample_parses_to_six_triples(sample):
    assert len(sample) == 6
    assert len(sample.triples_with_subject(EINSTEIN)) == 5


def test_subject_and_object_lookups(sample):
    assert sample.triples_with_subject(GERMANY) == []
    assert [t.predicate.value for t in sample.triples_with_subject(ULM)] == [DBO + "country"]
    assert [t.subject for t in sample.triples_with_object(ULM)] == [EINSTEIN]
    assert len(sample.triples_with_object(GERMANY)) == 1
    assert sample.triples_with_object(IRI("http://example.org/nothing")) == []


def test_literal_subject_rejected(sample):
    with pytest.raises(ValueError):
        sample.triples_with_subject(Literal("x"))


def test_labels(sample):
    assert sample.label_of(EINSTEIN, "en") == "Albert Einstein"
    assert sample.label_of(ULM) == "Ulm"
    assert sample.label_of(IRI(DBO + "birthPlace")) == "birth place"
    assert EINSTEIN in sample.label_index


def test_label_language_fallback():
    r = IRI("http://example.org/r")
    kb = KnowledgeBase([
        Triple(r, IRI(RDFS_LABEL), Literal("Munich", lang="de")),
        Triple(r, IRI(RDFS_LABEL), Literal("München", lang="de")),
    ])
    assert kb.label_of(r, "en") == "Munich"
    kb2 = KnowledgeBase([
        Triple(r, IRI(RDFS_LABEL), Literal("Munich", lang="de")),
        Triple(r, IRI(RDFS_LABEL), Literal("Monaco", lang="it")),
    ])
    assert kb2.label_of(r, "it") == "Monaco"


@pytest.mark.parametrize("iri,expected", [
    (DBO + "birthPlace", "birth place"),
    (DBR + "Albert_Einstein", "Albert Einstein"),
    (DBR + "Ulm", "Ulm"),
    (DBO + "NationalHistoricLandmark", "National Historic Landmark"),
    ("http://example.org/x#populationTotal", "population total"),
])
def test_local_name_label(iri, expected):
    assert local_name_label(iri) == expected


def test_instances_of_classes(sample):
    assert sample.instances_of_classes([DBO + "Scientist"]) == [EINSTEIN]
    assert sample.instances_of_classes([DBO + "Place"]) == []
    assert sample.instances_of_classes([DBO + "Scientist", DBO + "Place"]) == [EINSTEIN]
    with pytest.raises(ValueError):
        sample.instances_of_classes([])


def test_duplicates_collapse(sample):
    text = sample.serialize()
    kb = parse_ntriples(text + text)
    assert len(kb) == 6


def test_round_trip(sample):
    again = parse_ntriples(sample.serialize())
    assert again.triples == sample.triples


def test_escapes_and_datatypes_round_trip():
    s = IRI("http://example.org/s")
    kb = KnowledgeBase([
        Triple(s, IRI("http://example.org/p"), Literal('say "hi"\n\ttab \\ done')),
        Triple(s, IRI("http://example.org/p"), Literal("ünïcödé ☃", lang="de-CH")),
        Triple(s, IRI("http://example.org/p"), Literal("7", "http://www.w3.org/2001/XMLSchema#integer")),
        Triple(BNode("b0"), IRI("http://example.org/p"), s),
    ])
    assert parse_ntriples(kb.serialize()).triples == kb.triples


def test_unicode_escape_in_literal():
    kb = parse_ntriples('<http://e.org/s> <http://e.org/p> "caf\\u00E9" .\n')
    assert next(iter(kb)).object.value == "café"


@pytest.mark.parametrize("text,line,column", [
    ('<http://e.org/s> <http://e.org/p> <http://e.org/o>\n', 1, 51),
    ('# comment\n\n<http://e.org/s> "lit" <http://e.org/o> .\n', 3, 18),
    ('<http://e.org/s> <http://e.org/p> <http://e.org/o> . junk\n', 1, 54),
])
def test_syntax_errors_carry_position(text, line, column):
    with pytest.raises(NTriplesSyntaxError) as info:
        parse_ntriples(text)
    assert (info.value.line, info.value.column) == (line, column)


def test_lenient_mode_skips_bad_lines():
    text = '<http://e.org/s> <http://e.org/p> <http://e.org/o> .\nnot a triple\n'
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always")
        kb = parse_ntriples(text, lenient=True)
    assert len(kb) == 1
    assert caught


def test_gzip_input(tmp_path, sample):
    path = tmp_path / "kb.nt.gz"
    with gzip.open(path, "wt", encoding="utf-8") as fh:
        fh.write(sample.serialize())
    assert load_ntriples(path).triples == sample.triples


def test_expand_curie():
    assert expand_curie("dbo:Person") == DBO + "Person"
    assert expand_curie("<http://x.org/A>") == "http://x.org/A"
    assert expand_curie("http://x.org/A") == "http://x.org/A"


# -- properties -----------------------------------------------------------------

_names = st.sampled_from([f"http://example.org/r{i}" for i in range(8)])
_preds = st.sampled_from([f"http://example.org/p{i}" for i in range(3)])
_objects = st.one_of(
    _names.map(IRI),
    st.text(min_size=0, max_size=8).map(Literal),
    st.sampled_from(["b1", "b2"]).map(BNode),
)
_triples = st.builds(Triple, _names.map(IRI), _preds.map(IRI), _objects)


@settings(max_examples=60, deadline=None)
@given(st.lists(_triples, max_size=30))
def test_every_triple_is_indexed_both_ways(triples):
    kb = KnowledgeBase(triples)
    for t in kb:
        assert t in kb.triples_with_subject(t.subject)
        assert t in kb.triples_with_object(t.object)


@settings(max_examples=60, deadline=None)
@given(st.lists(_triples, max_size=30))
def test_serialize_parse_is_idempotent(triples):
    kb = KnowledgeBase(triples)
    once = parse_ntriples(kb.serialize())
    assert once.triples == kb.triples
    assert parse_ntriples(once.serialize()).serialize() == once.serialize()


@settings(max_examples=60, deadline=None)
@given(
    st.lists(st.tuples(_names, st.sampled_from("ABCD")), max_size=20),
    st.sets(st.sampled_from("ABCD"), min_size=1),
    st.sets(st.sampled_from("ABCD"), min_size=1),
)
def test_instances_distribute_over_union(typings, a, b):
    kb = KnowledgeBase(
        Triple(IRI(s), IRI("http://www.w3.org/1999/02/22-rdf-syntax-ns#type"), IRI("http://example.org/" + c))
        for s, c in typings
    )
    cls = lambda names: ["http://example.org/" + c for c in names]  # noqa: E731
    union = set(kb.instances_of_classes(cls(a | b)))
    assert union == set(kb.instances_of_classes(cls(a))) | set(kb.instances_of_classes(cls(b)))
