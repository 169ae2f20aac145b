"""
Sampling subgraphs around a seed
================================

"""

from triplebench.subgraph import SizeBounds, build_property_clusters, generate_subgraph
from triplebench.synthetic import synthetic_kb

# a random 500-triple KB shaped like a DBpedia slice
kb = synthetic_kb(500, seed=3)
people = kb.instances_of_classes(["http://dbpedia.org/ontology/Person"])
seed = people[0]
print("seed:", kb.label_of(seed))

bounds = SizeBounds(2, 4)
clusters = build_property_clusters(kb, "http://dbpedia.org/ontology/Person")

for kind in ("star", "symstar", "path", "hybrid", "summary"):
    sg = generate_subgraph(kind, kb, seed, bounds, rng=7, clusters=clusters)
    print(f"\n{kind} ({len(sg)} triples{', truncated' if sg.truncated else ''})")
    for t in sg.triples:
        print("   ", kb.label_of(t.subject), "|", t.predicate.value.rsplit("/", 1)[-1], "|", t.object.value.rsplit("/", 1)[-1])

# the summary strategy draws from property clusters: well-covered
# properties grouped by how often they occur together
for c in clusters:
    print(sorted(p.rsplit("/", 1)[-1] for p in c.properties), c.total_frequency)
