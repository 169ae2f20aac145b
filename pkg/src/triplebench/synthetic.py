"""Random DBpedia-shaped knowledge bases for tests, demos and load runs."""
from __future__ import annotations

import numpy as np

from .kb import RDF_TYPE, RDFS_LABEL, XSD, BNode, IRI, KnowledgeBase, Literal, Triple
from .lexicon import FOAF_GENDER

DBO = "http://dbpedia.org/ontology/"
EX = "http://example.org/resource/"

_SYLLABLES = [
    "al", "ber", "ca", "dor", "el", "fin", "gar", "hel", "is", "jo", "ka", "lin",
    "mar", "no", "or", "pe", "qui", "ros", "sa", "ton", "ul", "ve", "win", "zed",
]

CLASS_SIZES = {
    "Person": 55,
    "City": 20,
    "Country": 5,
    "River": 6,
    "Bridge": 6,
    "Organisation": 8,
}

# (class, property, range class or datatype, probability)
FACTS = [
    ("Person", "birthPlace", "City", 0.92),
    ("Person", "deathPlace", "City", 0.75),
    ("Person", "birthDate", XSD + "date", 0.8),
    ("Person", "spouse", "Person", 0.3),
    ("Person", "almaMater", "Organisation", 0.45),
    ("Person", "influenced", "Person", 0.3),
    ("City", "country", "Country", 1.0),
    ("City", "populationTotal", XSD + "integer", 0.8),
    ("River", "mouthCountry", "Country", 0.9),
    ("Bridge", "crosses", "River", 1.0),
    ("Bridge", "location", "City", 0.9),
    ("Organisation", "location", "City", 0.9),
    ("Organisation", "foundingYear", XSD + "gYear", 0.7),
]


def _name(gen: np.random.Generator, parts: int) -> str:
    return "".join(_SYLLABLES[i] for i in gen.integers(len(_SYLLABLES), size=parts)).capitalize()


def synthetic_triples(n_triples: int = 500, seed: int = 0) -> list[Triple]:
    """Exactly ``n_triples`` triples: every type and label line, then random facts.

    About one person in five also gets an alternative label, and a few
    persons hang facts off blank nodes, which generators must skip.
    """
    gen = np.random.default_rng(seed)
    entities: dict[str, list] = {}
    base: list[Triple] = []
    used_names = set()
    for cls, count in CLASS_SIZES.items():
        members = []
        for i in range(count):
            while True:
                if cls == "Person":
                    label = f"{_name(gen, 2)} {_name(gen, 3)}"
                elif cls in ("River", "Bridge"):
                    label = f"{_name(gen, 2)} {cls}"
                else:
                    label = _name(gen, 2 + i % 2)
                if label not in used_names:
                    used_names.add(label)
                    break
            r = IRI(EX + label.replace(" ", "_"))
            members.append(r)
            base.append(Triple(r, IRI(RDF_TYPE), IRI(DBO + cls)))
            base.append(Triple(r, IRI(RDFS_LABEL), Literal(label, lang="en")))
            if cls == "Person":
                gender = "male" if gen.random() < 0.5 else "female"
                base.append(Triple(r, IRI(FOAF_GENDER), Literal(gender, lang="en")))
                if gen.random() < 0.2:
                    first, last = label.split(" ", 1)
                    base.append(Triple(r, IRI(RDFS_LABEL), Literal(f"{first[0]}. {last}", lang="en")))
        entities[cls] = members

    facts: list[Triple] = []
    for cls, prop, rng_, p in FACTS:
        for r in entities[cls]:
            if gen.random() >= p:
                continue
            if rng_ in entities:
                choices = [x for x in entities[rng_] if x != r]
                obj = choices[int(gen.integers(len(choices)))]
            elif rng_ == XSD + "date":
                obj = Literal(f"{gen.integers(1850, 2000)}-{gen.integers(1, 13):02d}-{gen.integers(1, 29):02d}", rng_)
            elif rng_ == XSD + "gYear":
                obj = Literal(str(gen.integers(1700, 2010)), rng_)
            else:
                obj = Literal(str(gen.integers(1000, 5_000_000)), rng_)
            facts.append(Triple(r, IRI(DBO + prop), obj))
    for k, r in enumerate(entities["Person"][:6]):
        node = BNode(f"station{k}")
        facts.append(Triple(r, IRI(DBO + "careerStation"), node))
        facts.append(Triple(node, IRI(DBO + "team"), entities["Organisation"][k % 8]))

    room = n_triples - len(base)
    if room < 0 or room > len(facts):
        raise ValueError(f"cannot build exactly {n_triples} triples from this schema")
    keep = sorted(gen.choice(len(facts), size=room, replace=False))
    return base + [facts[i] for i in keep]


def synthetic_kb(n_triples: int = 500, seed: int = 0) -> KnowledgeBase:
    return KnowledgeBase(synthetic_triples(n_triples, seed))


def synthetic_ntriples(n_triples: int = 500, seed: int = 0) -> str:
    return "".join(t.n3() + "\n" for t in synthetic_triples(n_triples, seed))
