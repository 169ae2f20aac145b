"""
Corpus features and correlations
================================

"""

import numpy as np

from triplebench.corpus import GenerationConfig, generate_corpus
from triplebench.emit import STATS_COLUMNS, compute_stats, pearson, stats_tsv, tokenize
from triplebench.synthetic import synthetic_kb

kb = synthetic_kb(500, seed=8)
rows = []
for strategy in ("star", "path", "hybrid", "summary"):
    cfg = GenerationConfig(class_iris=("http://dbpedia.org/ontology/Person",), strategy=strategy,
                           document_count=100, master_seed=1)
    corpus = generate_corpus(cfg, kb=kb)
    rows.append((strategy, compute_stats(corpus)))
print(stats_tsv(rows))
print(STATS_COLUMNS)

# tokens per document against annotations per document, hybrid corpus
cfg = GenerationConfig(class_iris=("http://dbpedia.org/ontology/Person",), document_count=200, master_seed=2)
docs = generate_corpus(cfg, kb=kb).documents
tokens = np.array([len(tokenize(d.text)) for d in docs])
entities = np.array([len(d.annotations) for d in docs])
print("pearson(tokens, entities) =", round(pearson(tokens, entities), 4))
print("pearson(tokens, tokens)   =", pearson(tokens, tokens))
