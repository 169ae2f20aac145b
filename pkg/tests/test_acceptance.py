"""Acceptance criteria, one check per criterion.

Each ``criterion_N`` returns ``(passed, detail)``.  Under pytest every result
is also printed as a PASS/FAIL line in the terminal summary; run this file
directly (``python3 tests/test_acceptance.py``) for the same lines without
pytest.
"""
from __future__ import annotations

import sys
import time
from collections import Counter
from pathlib import Path

import numpy as np
import pytest

sys.path.insert(0, str(Path(__file__).parent))

from conftest import DBO, EINSTEIN, clustering_kb, data_path, einstein_kb  # noqa: E402
from invariants import CHECKS, summary_violations  # noqa: E402
from triplebench.cli import run  # noqa: E402
from triplebench.corpus import Document, GenerationConfig, generate_corpus  # noqa: E402
from triplebench.errors import EmptyNeighborhoodError  # noqa: E402
from triplebench.emit import (  # noqa: E402
    compute_stats,
    emit_jsonl,
    emit_nif,
    parse_jsonl,
    parse_nif,
    pearson,
    read_nif,
    span_problems,
    tokenize,
)
from triplebench.kb import IRI  # noqa: E402
from triplebench.lexicon import load_lexicon  # noqa: E402
from triplebench.paraphrase import load_synonyms, paraphrase_sentences  # noqa: E402
from triplebench.realizer import assemble, realize_document  # noqa: E402
from triplebench.seeds import document_rng  # noqa: E402
from triplebench.subgraph import (  # noqa: E402
    PropertyCluster,
    SizeBounds,
    StrategyKind,
    Subgraph,
    build_property_clusters,
    generate_star,
    generate_subgraph,
    generate_summary,
)
from triplebench.synthetic import synthetic_kb  # noqa: E402

RESULTS: dict[int, tuple[bool, str]] = {}
TITLES = {
    1: "golden Einstein pipeline",
    2: "marking-function fidelity",
    3: "annotation exactness over >= 1000 documents",
    4: "strategy shape invariants, 200 subgraphs each",
    5: "paraphrase safety over 500 documents",
    6: "determinism and scale, 10000 hybrid documents",
    7: "stats sanity envelope",
    8: "summary clustering oracle",
}
STRATEGIES = [k.value for k in StrategyKind]


def _pred(kb, local):
    return next(t for t in kb.triples_with_subject(EINSTEIN) if t.predicate.value == DBO + local)


def _surface_forms(kb, iri: str) -> set[str]:
    r = IRI(iri)
    return {text for text, _ in kb.labels_of(r)} | {kb.label_of(r)}


# -- 1 ----------------------------------------------------------------------------

def criterion_1():
    start = time.perf_counter()
    kb, lexicon = einstein_kb(), load_lexicon()
    birth, death = _pred(kb, "birthPlace"), _pred(kb, "deathPlace")

    # the pair is a star draw at d=2; sentences follow the listed order
    draws = {frozenset(generate_star(kb, EINSTEIN, SizeBounds(2, 2), s).triples) for s in range(64)}
    star_ok = frozenset({birth, death}) in draws
    star_text, _ = assemble(realize_document(Subgraph(EINSTEIN, (birth, death), StrategyKind.STAR), kb, lexicon))

    props = frozenset({birth.predicate.value, death.predicate.value})
    cluster = PropertyCluster(DBO + "Scientist", props, dict.fromkeys(props, 1.0), dict.fromkeys(props, 1))
    summary = generate_summary(kb, EINSTEIN, SizeBounds(2, 2), 0, [cluster])
    summary_text, _ = assemble(realize_document(summary, kb, lexicon))
    elapsed = time.perf_counter() - start

    want_star = "Albert Einstein's birth place is Ulm. His death place is Princeton."
    want_summary = "Albert Einstein's birth place is Ulm and his death place is Princeton."
    ok = star_ok and star_text == want_star and summary_text == want_summary and elapsed < 1.0
    return ok, f"star={star_text!r} summary={summary_text!r} {elapsed * 1000:.0f} ms"


# -- 2 ----------------------------------------------------------------------------

def criterion_2(tmp: Path):
    kb, lexicon = einstein_kb(), load_lexicon()
    sg = Subgraph(EINSTEIN, (_pred(kb, "birthPlace"),), StrategyKind.STAR)
    text, spans = assemble(realize_document(sg, kb, lexicon))
    start, end, iri = spans[0]
    inclusive = (start, end - 1)
    doc = Document("000000", text, tuple(spans))
    (tmp / "m.ttl").write_text(emit_nif([doc]), encoding="utf-8")
    (tmp / "m.jsonl").write_text(emit_jsonl([doc]), encoding="utf-8")
    codes = [run(["validate", "--in", str(tmp / name), "--kb", "bundled:einstein"]) for name in ("m.ttl", "m.jsonl")]
    ok = (start, end, iri) == (0, 15, EINSTEIN.value) and inclusive == (0, 14) and codes == [0, 0]
    return ok, f"span={spans[0]} inclusive={inclusive} validate exit codes={codes}"


# -- 3 ----------------------------------------------------------------------------

def criterion_3():
    docs_checked = anns = 0
    bad = []
    for kb_seed in (101, 202):
        kb = synthetic_kb(500, seed=kb_seed)
        for strategy in STRATEGIES:
            for paraphrase in (False, True):
                cfg = GenerationConfig(
                    class_iris=(DBO + "Person", DBO + "Bridge", DBO + "City"),
                    strategy=strategy, document_count=60, paraphrase=paraphrase,
                    master_seed=kb_seed * 7 + len(strategy),
                )
                corpus = generate_corpus(cfg, kb=kb)
                for (doc, anchors) in read_nif(emit_nif(corpus)):
                    docs_checked += 1
                    prev = 0
                    for a, b, iri in doc.annotations:
                        anns += 1
                        if not (prev <= a < b <= len(doc.text)) or doc.text[a:b] not in _surface_forms(kb, iri):
                            bad.append((doc.id, a, b, iri))
                        prev = b
                    bad.extend((doc.id, p) for p in span_problems(doc, anchors))
    ok = docs_checked >= 1000 and not bad
    return ok, f"{docs_checked} documents, {anns} annotations, {len(bad)} violations"


# -- 4 ----------------------------------------------------------------------------

def criterion_4():
    kb = synthetic_kb(500, seed=303)
    people = kb.instances_of_classes([DBO + "Person"])
    clusters = build_property_clusters(kb, DBO + "Person", 0.6)
    coverage = {p: c.coverage[p] for c in clusters for p in c.properties}
    counts, violations, skipped = Counter(), [], Counter()
    for kind in StrategyKind:
        i = 0
        while counts[kind] < 200:
            gen = document_rng(4, i)
            i += 1
            seed = people[int(gen.integers(len(people)))]
            try:
                sg = generate_subgraph(kind, kb, seed, SizeBounds(1, 5), gen, clusters)
            except EmptyNeighborhoodError:
                # precondition unmet; corpus generation redraws the seed the same way
                skipped[kind.value] += 1
                continue
            counts[kind] += 1
            if kind is StrategyKind.SUMMARY:
                problems = summary_violations(sg, coverage, 0.6)
            else:
                problems = CHECKS[kind](sg)
            violations.extend((kind.value, p) for p in problems)
    ok = all(counts[k] == 200 for k in StrategyKind) and not violations
    return ok, f"{sum(counts.values())} subgraphs, {len(violations)} violations, seeds redrawn {dict(skipped)}"


# -- 5 ----------------------------------------------------------------------------

def criterion_5():
    kb = synthetic_kb(500, seed=404)
    lexicon = load_lexicon()
    synonyms = load_synonyms(data_path("synonyms.tsv"))
    cfg = GenerationConfig(class_iris=(DBO + "Person", DBO + "Bridge"), strategy="hybrid",
                           document_count=500, paraphrase=True, master_seed=5)
    corpus = generate_corpus(cfg, kb=kb, lexicon=lexicon, synonyms=synonyms)
    multiset_bad = type_bad = changed = 0
    for doc in corpus:
        plain = realize_document(doc.provenance, kb, lexicon)
        plain_text, plain_spans = assemble(plain)
        if Counter(r for _, _, r in doc.annotations) != Counter(r for _, _, r in plain_spans):
            multiset_bad += 1
        changed += doc.text != plain_text
        rewritten = paraphrase_sentences(plain, kb, synonyms, np.random.default_rng(len(doc.text)))
        for before, after in zip(plain, rewritten):
            if before.is_type_sentence and after.text != before.text:
                type_bad += 1
            if Counter(r for _, _, r in before.spans) != Counter(r for _, _, r in after.spans):
                multiset_bad += 1
    ok = len(corpus) == 500 and multiset_bad == 0 and type_bad == 0
    return ok, f"{len(corpus)} documents ({changed} rewritten), multiset violations={multiset_bad}, type-sentence edits={type_bad}"


# -- 6 ----------------------------------------------------------------------------

def criterion_6(tmp: Path):
    common = ["generate", "--kb", "bundled:synthetic", "--classes", "dbo:Person,dbo:City,dbo:Bridge",
              "--strategy", "hybrid", "--docs", "10000", "--seed", "2026"]
    timings, outputs = {}, {}
    for jobs in (1, 8):
        out = tmp / f"jobs{jobs}"
        start = time.perf_counter()
        code = run(common + ["--jobs", str(jobs), "--out", str(out)])
        timings[jobs] = time.perf_counter() - start
        outputs[jobs] = (code, (out / "corpus.ttl").read_bytes(), (out / "corpus.jsonl").read_bytes())
    same = outputs[1][1:] == outputs[8][1:]
    lines = outputs[1][2].count(b"\n")
    ok = outputs[1][0] == outputs[8][0] == 0 and same and lines == 10000 and max(timings.values()) < 60
    return ok, f"{lines} documents, jobs=1 {timings[1]:.1f} s, jobs=8 {timings[8]:.1f} s, byte-identical={same}"


# -- 7 ----------------------------------------------------------------------------

def criterion_7():
    kb = synthetic_kb(500, seed=505)
    d_max = 5
    rows, problems = [], []
    for strategy in STRATEGIES:
        for paraphrase in (False, True):
            cfg = GenerationConfig(class_iris=(DBO + "Person",), strategy=strategy, document_count=100,
                                   bounds=SizeBounds(1, d_max), paraphrase=paraphrase, master_seed=9)
            corpus = generate_corpus(cfg, kb=kb)
            s = compute_stats(corpus)
            rows.append((strategy, paraphrase, s.entities_per_doc, s.entity_density))
            if not 1 <= s.entities_per_doc <= 3 * d_max:
                problems.append(f"{strategy} |E|/|C|={s.entities_per_doc:.3f}")
            if not 0.05 <= s.entity_density <= 0.5:
                problems.append(f"{strategy} |E|/|T|={s.entity_density:.3f}")
            if parse_nif(emit_nif(corpus)) != [_bare(d) for d in corpus]:
                problems.append(f"{strategy} NIF round trip")
            if parse_jsonl(emit_jsonl(corpus)) != [_bare(d) for d in corpus]:
                problems.append(f"{strategy} JSONL round trip")
            tokens = [len(tokenize(d.text)) for d in corpus]
            if abs(pearson(tokens, tokens) - 1.0) > 1e-12:
                problems.append(f"{strategy} pearson self-correlation")
    density = [r[3] for r in rows]
    per_doc = [r[2] for r in rows]
    detail = (f"|E|/|C| in [{min(per_doc):.2f}, {max(per_doc):.2f}], "
              f"|E|/|T| in [{min(density):.3f}, {max(density):.3f}], {len(problems)} problems")
    return not problems, detail + ("" if not problems else f": {problems}")


def _bare(doc):
    return Document(doc.id, doc.text, doc.annotations)


# -- 8 ----------------------------------------------------------------------------

def criterion_8():
    kb = clustering_kb()
    clusters = build_property_clusters(kb, DBO + "Person", 0.5)
    got = [sorted(p.rsplit("/", 1)[-1] for p in c.properties) for c in clusters]
    freqs = {p.rsplit("/", 1)[-1]: f for c in clusters for p, f in c.frequency.items()}
    ok = got == [["birthPlace", "deathPlace"], ["spouse"]] and freqs == {"birthPlace": 10, "deathPlace": 10, "spouse": 8}
    return ok, f"clusters={got} frequencies={freqs}"


# -- pytest wiring ----------------------------------------------------------------

def _record(n, fn, *args):
    try:
        RESULTS[n] = fn(*args)
    except Exception as err:
        RESULTS[n] = (False, f"{type(err).__name__}: {err}")
    return RESULTS[n]


@pytest.mark.parametrize("n", [1, 3, 4, 5, 7, 8])
def test_criterion(n):
    ok, detail = _record(n, globals()[f"criterion_{n}"])
    assert ok, detail


def test_criterion_2(tmp_path):
    ok, detail = _record(2, criterion_2, tmp_path)
    assert ok, detail


@pytest.mark.slow
def test_criterion_6(tmp_path):
    ok, detail = _record(6, criterion_6, tmp_path)
    assert ok, detail


def report_lines() -> list[str]:
    return [
        f"{'PASS' if RESULTS[n][0] else 'FAIL'}  criterion {n}: {TITLES[n]} -- {RESULTS[n][1]}"
        for n in sorted(RESULTS)
    ]


if __name__ == "__main__":
    import tempfile

    with tempfile.TemporaryDirectory() as tmp:
        for n in range(1, 9):
            fn = globals()[f"criterion_{n}"]
            _record(n, fn, Path(tmp)) if n in (2, 6) else _record(n, fn)
    print("\n".join(report_lines()))
    sys.exit(0 if all(ok for ok, _ in RESULTS.values()) else 1)
