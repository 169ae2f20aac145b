"""
From triples to annotated text
==============================

"""

import numpy as np
from importlib import resources

from triplebench.kb import IRI, KnowledgeBase, Literal, Triple, load_ntriples
from triplebench.lexicon import FOAF_GENDER, load_lexicon
from triplebench.paraphrase import load_synonyms, paraphrase_sentences
from triplebench.realizer import assemble, realize_document
from triplebench.subgraph import StrategyKind, Subgraph

data = resources.files("triplebench.data")
kb = load_ntriples(data.joinpath("einstein.nt"))
einstein = IRI("http://dbpedia.org/resource/Albert_Einstein")

# with a gender on record the second sentence can say "his"
kb = KnowledgeBase(list(kb) + [Triple(einstein, IRI(FOAF_GENDER), Literal("male"))])
lexicon = load_lexicon()

facts = [t for t in kb.triples_with_subject(einstein) if t.predicate.value.endswith(("birthPlace", "deathPlace"))]
facts.sort(key=lambda t: t.predicate.value)
sentences = realize_document(Subgraph(einstein, tuple(facts), StrategyKind.STAR), kb, lexicon)
text, spans = assemble(sentences)
print(text)
for a, b, iri in spans:
    print(f"  [{a},{b}) {text[a:b]!r} -> {iri}")

# summary documents merge sentences built from the same property cluster
merged = Subgraph(einstein, tuple(facts), StrategyKind.SUMMARY,
                  cluster_groups=(frozenset(t.predicate.value for t in facts),))
print(assemble(realize_document(merged, kb, lexicon))[0])

# paraphrasing rewrites plans, so spans are recomputed, never patched
synonyms = load_synonyms(data.joinpath("synonyms.tsv"))
for seed in range(3):
    out = paraphrase_sentences(sentences, kb, synonyms, np.random.default_rng(seed))
    print(assemble(out)[0])
