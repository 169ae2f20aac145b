"""
Loading and querying a knowledge base
=====================================

"""

from importlib import resources

from triplebench.kb import IRI, load_ntriples

# the package ships a six-triple sample about Albert Einstein
path = resources.files("triplebench.data").joinpath("einstein.nt")
kb = load_ntriples(path)
print(len(kb), "triples")

einstein = IRI("http://dbpedia.org/resource/Albert_Einstein")
for t in kb.triples_with_subject(einstein):
    print(" ", t.n3())

# incoming edges are indexed too
ulm = IRI("http://dbpedia.org/resource/Ulm")
print([t.subject.value for t in kb.triples_with_object(ulm)])

# labels come from rdfs:label, else from the IRI's local name
print(kb.label_of(einstein))
print(kb.label_of(IRI("http://dbpedia.org/ontology/birthPlace")))

# seed candidates: every instance of a set of classes
print(kb.instances_of_classes(["http://dbpedia.org/ontology/Scientist"]))
