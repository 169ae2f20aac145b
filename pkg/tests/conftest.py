from __future__ import annotations

import sys
from importlib import resources

import pytest

from triplebench.kb import RDF_TYPE, RDFS_LABEL, XSD, IRI, KnowledgeBase, Literal, Triple, load_ntriples
from triplebench.lexicon import FOAF_GENDER, load_lexicon
from triplebench.synthetic import synthetic_kb

DBR = "http://dbpedia.org/resource/"
DBO = "http://dbpedia.org/ontology/"
DBP = "http://dbpedia.org/property/"

EINSTEIN = IRI(DBR + "Albert_Einstein")


def data_path(name: str) -> str:
    return str(resources.files("triplebench.data").joinpath(name))


def einstein_kb() -> KnowledgeBase:
    """The six-triple running example plus a gender so that "his" is derivable."""
    kb = load_ntriples(data_path("einstein.nt"))
    return KnowledgeBase(list(kb) + [Triple(EINSTEIN, IRI(FOAF_GENDER), Literal("male"))])


def pettus_kb() -> KnowledgeBase:
    bridge = IRI(DBR + "Edmund_Pettus_Bridge")
    river = IRI(DBR + "Alabama_River")
    arch = IRI(DBR + "Through_arch_bridge")
    rosen = IRI(DBR + "Nathan_Rosen")
    return KnowledgeBase([
        Triple(bridge, IRI(RDFS_LABEL), Literal("Edmund Pettus Bridge", lang="en")),
        Triple(bridge, IRI(RDF_TYPE), IRI(DBO + "Bridge")),
        Triple(bridge, IRI(DBO + "crosses"), river),
        Triple(bridge, IRI(DBO + "type"), arch),
        Triple(bridge, IRI(DBP + "nhlDate"), Literal("2013-03-11", XSD + "date")),
        Triple(river, IRI(RDFS_LABEL), Literal("Alabama River", lang="en")),
        Triple(arch, IRI(RDFS_LABEL), Literal("Through arch bridge", lang="en")),
        Triple(rosen, IRI(RDFS_LABEL), Literal("Nathan Rosen", lang="en")),
        Triple(rosen, IRI(DBO + "influencedBy"), EINSTEIN),
        Triple(EINSTEIN, IRI(RDFS_LABEL), Literal("Albert Einstein", lang="en")),
        Triple(EINSTEIN, IRI(RDFS_LABEL), Literal("A. Einstein", lang="en")),
    ])


@pytest.fixture
def einstein():
    return einstein_kb()


@pytest.fixture
def pettus():
    return pettus_kb()


@pytest.fixture(scope="session")
def lexicon():
    return load_lexicon()


@pytest.fixture(scope="session")
def synth():
    return synthetic_kb(500, seed=11)


def clustering_kb() -> KnowledgeBase:
    """Frequencies 10/10/8: birth and death places always together, spouse mostly apart.

    16 persons; 0-9 have birth and death places, 8-15 a spouse.  Spouse
    coverage is therefore 0.5, so callers cluster at that threshold.
    """
    person = IRI(DBO + "Person")
    city = IRI(DBR + "Ulm")
    triples = []
    for i in range(16):
        r = IRI(f"{DBR}P{i}")
        triples.append(Triple(r, IRI(RDF_TYPE), person))
        if i < 10:
            triples.append(Triple(r, IRI(DBO + "birthPlace"), city))
            triples.append(Triple(r, IRI(DBO + "deathPlace"), city))
        if i >= 8:
            triples.append(Triple(r, IRI(DBO + "spouse"), IRI(f"{DBR}P{(i + 1) % 16}")))
    return KnowledgeBase(triples)


class ScriptedRng:
    """Stand-in generator replaying fixed coin flips and index choices."""

    def __init__(self, coins=(), picks=()):
        self.coins = list(coins)
        self.picks = list(picks)

    def random(self):
        return self.coins.pop(0)

    def integers(self, low, high=None):
        pick = self.picks.pop(0)
        hi = low if high is None else high
        assert pick < hi
        return pick


def pytest_terminal_summary(terminalreporter):
    module = sys.modules.get("test_acceptance")
    if module is None or not module.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for line in module.report_lines():
        terminalreporter.write_line(line)
