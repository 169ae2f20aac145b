"""
Generating a corpus and writing NIF / JSON lines
================================================

"""

from importlib import resources

from triplebench.corpus import GenerationConfig, generate_corpus
from triplebench.emit import emit_jsonl, emit_nif, parse_nif, span_problems

kb_path = str(resources.files("triplebench.data").joinpath("synthetic_kb.nt"))
config = GenerationConfig.from_mapping({
    "kb": kb_path,
    "classes": "dbo:Person, dbo:Bridge",
    "strategy": "hybrid",
    "docs": 5,
    "dmin": 1,
    "dmax": 5,
    "paraphrase": True,
    "seed": 42,
})
corpus = generate_corpus(config)
for doc in corpus:
    print(doc.id, doc.text)

# every annotation is re-checked against the text it claims to cover
assert all(span_problems(doc) == [] for doc in corpus)

nif = emit_nif(corpus)
print(nif.splitlines()[2])
print(emit_jsonl(corpus).splitlines()[0][:120], "...")

# the same seed gives the same bytes, whatever the worker count
assert emit_nif(generate_corpus(config, jobs=2)) == nif
assert parse_nif(nif)[0].text == corpus.documents[0].text
