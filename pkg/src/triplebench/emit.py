"""Corpus serialization (NIF, JSON lines), readers, statistics and span checks."""
from __future__ import annotations

import io
import json
import math
import unicodedata
from dataclasses import dataclass, fields
from pathlib import Path
from typing import Iterable, Sequence, TextIO

import numpy as np

from .corpus import Corpus, Document
from .errors import DegenerateInputError
from .kb import IRI, RDF_TYPE, XSD, Literal, Triple, iter_ntriples

NIF = "http://persistence.uni-leipzig.org/nlp2rdf/ontologies/nif-core#"
ITSRDF = "http://www.w3.org/2005/11/its/rdf#"
DEFAULT_BASE = "http://example.org/corpus/"


# -- NIF -----------------------------------------------------------------------

def _doc_uri(base: str, doc_id: str, begin: int, end: int) -> str:
    return f"{base}{doc_id}#char={begin},{end}"


def _index(n: int):
    return Literal(str(n), datatype=XSD + "nonNegativeInteger")


def nif_triples(corpus: Corpus | Iterable[Document], base: str = DEFAULT_BASE) -> list[Triple]:
    out = []
    for doc in corpus:
        ctx = IRI(_doc_uri(base, doc.id, 0, len(doc.text)))
        out += [
            Triple(ctx, IRI(RDF_TYPE), IRI(NIF + "Context")),
            Triple(ctx, IRI(RDF_TYPE), IRI(NIF + "RFC5147String")),
            Triple(ctx, IRI(NIF + "isString"), Literal(doc.text)),
            Triple(ctx, IRI(NIF + "beginIndex"), _index(0)),
            Triple(ctx, IRI(NIF + "endIndex"), _index(len(doc.text))),
        ]
        for begin, end, iri in doc.annotations:
            ph = IRI(_doc_uri(base, doc.id, begin, end))
            out += [
                Triple(ph, IRI(RDF_TYPE), IRI(NIF + "Phrase")),
                Triple(ph, IRI(RDF_TYPE), IRI(NIF + "RFC5147String")),
                Triple(ph, IRI(NIF + "referenceContext"), ctx),
                Triple(ph, IRI(NIF + "anchorOf"), Literal(doc.text[begin:end])),
                Triple(ph, IRI(NIF + "beginIndex"), _index(begin)),
                Triple(ph, IRI(NIF + "endIndex"), _index(end)),
                Triple(ph, IRI(ITSRDF + "taIdentRef"), IRI(iri)),
            ]
    return out


def emit_nif(corpus: Corpus | Iterable[Document], out: TextIO | None = None, base: str = DEFAULT_BASE) -> str:
    """Write the corpus as NIF in N-Triples syntax (which is also valid Turtle).

    Offsets count Unicode code points and are half-open.
    """
    docs = list(corpus)
    lines = [
        "# NIF 2.0 corpus\n",
        f"# documents: {len(docs)}\n",
    ]
    lines += [t.n3() + "\n" for t in nif_triples(docs, base)]
    text = "".join(lines)
    if out is not None:
        out.write(text)
    return text


def read_nif(stream: TextIO | str) -> list[tuple[Document, tuple[str | None, ...]]]:
    """Documents plus the ``nif:anchorOf`` text of each of their spans."""
    contexts: dict[str, dict] = {}
    phrases: dict[str, dict] = {}
    for t in iter_ntriples(stream):
        s, p, o = t.subject.value, t.predicate.value, t.object
        if p == RDF_TYPE and o.value == NIF + "Context":
            contexts.setdefault(s, {})
        elif p == RDF_TYPE and o.value == NIF + "Phrase":
            phrases.setdefault(s, {})
        elif p == NIF + "isString":
            contexts.setdefault(s, {})["text"] = o.value
        elif p in (NIF + "beginIndex", NIF + "endIndex", NIF + "anchorOf",
                   NIF + "referenceContext", ITSRDF + "taIdentRef"):
            key = p.rsplit("#", 1)[1]
            phrases.setdefault(s, {})[key] = o.value
    docs = []
    for uri, ctx in contexts.items():
        spans = []
        for ph in phrases.values():
            if ph.get("referenceContext") != uri:
                continue
            spans.append((int(ph["beginIndex"]), int(ph["endIndex"]), ph["taIdentRef"], ph.get("anchorOf")))
        spans.sort()
        doc_id = uri.rsplit("#", 1)[0].rsplit("/", 1)[-1]
        doc = Document(doc_id, ctx.get("text", ""), tuple(s[:3] for s in spans))
        docs.append((doc, tuple(s[3] for s in spans)))
    docs.sort(key=lambda pair: pair[0].id)
    return docs


def parse_nif(stream: TextIO | str) -> list[Document]:
    """Minimal reader for files written by :func:`emit_nif`.

    Phrases are reattached to their context through ``nif:referenceContext``.
    """
    return [doc for doc, _ in read_nif(stream)]


# -- JSON lines ----------------------------------------------------------------

def emit_jsonl(corpus: Corpus | Iterable[Document], out: TextIO | None = None) -> str:
    buf = io.StringIO()
    for doc in corpus:
        record = {"id": doc.id, "text": doc.text, "annotations": [list(a) for a in doc.annotations]}
        buf.write(json.dumps(record, ensure_ascii=False) + "\n")
    text = buf.getvalue()
    if out is not None:
        out.write(text)
    return text


def parse_jsonl(stream: TextIO | str) -> list[Document]:
    if isinstance(stream, str):
        stream = io.StringIO(stream)
    docs = []
    for lineno, line in enumerate(stream, start=1):
        if not line.strip():
            continue
        try:
            rec = json.loads(line)
            anns = tuple((int(a), int(b), str(r)) for a, b, r in rec["annotations"])
            docs.append(Document(str(rec["id"]), rec["text"], anns))
        except (ValueError, KeyError, TypeError) as err:
            raise ValueError(f"line {lineno}: malformed record ({err})") from err
    return docs


def read_corpus(path: str | Path) -> list[tuple[Document, tuple[str | None, ...] | None]]:
    """Load a ``.jsonl`` or NIF file; NIF documents come with their anchors."""
    path = Path(path)
    with open(path, encoding="utf-8") as fh:
        if path.suffix == ".jsonl":
            return [(d, None) for d in parse_jsonl(fh)]
        return read_nif(fh)


# -- span validation -----------------------------------------------------------

def _joins(a: str, b: str) -> bool:
    return a.isalnum() and b.isalnum()


def span_problems(doc: Document, anchors=None, labels=None) -> list[str]:
    """Check a document's annotations; an empty list means it is clean.

    Spans must be in range, non-empty, ascending and non-overlapping, and
    must not cut through a word.  NIF anchors, when present, must equal the
    covered text; ``labels`` (IRI -> allowed surface forms) adds a stricter
    check.
    """
    problems = []
    text = doc.text
    prev_end = 0
    for i, (a, b, iri) in enumerate(doc.annotations):
        where = f"span {i} ({a},{b},{iri})"
        if not 0 <= a < b <= len(text):
            problems.append(f"{where} out of range")
            continue
        if a < prev_end:
            problems.append(f"{where} overlaps or is out of order")
        prev_end = b
        covered = text[a:b]
        if covered != covered.strip():
            problems.append(f"{where} has surrounding whitespace")
        if (a > 0 and _joins(text[a - 1], text[a])) or (b < len(text) and _joins(text[b - 1], text[b])):
            problems.append(f"{where} cuts through a word: {covered!r}")
        if anchors is not None and anchors[i] is not None and anchors[i] != covered:
            problems.append(f"{where} anchor {anchors[i]!r} != text {covered!r}")
        if labels is not None and iri in labels and covered not in labels[iri]:
            problems.append(f"{where} text {covered!r} is not a known label")
    return problems


# -- statistics ----------------------------------------------------------------

@dataclass(frozen=True)
class CorpusStats:
    document_count: int
    token_count: int
    entity_count: int
    tokens_per_doc: float
    entities_per_doc: float
    entity_density: float

    @classmethod
    def from_counts(cls, docs: int, tokens: int, entities: int) -> "CorpusStats":
        return cls(
            docs,
            tokens,
            entities,
            tokens / docs if docs else 0.0,
            entities / docs if docs else 0.0,
            entities / tokens if tokens else 0.0,
        )

    def as_row(self) -> list:
        return [getattr(self, f.name) for f in fields(self)]


STATS_COLUMNS = ("|C|", "|T|", "|E|", "|T|/|C|", "|E|/|C|", "|E|/|T|")


def _is_punct(ch: str) -> bool:
    return unicodedata.category(ch).startswith("P")


def tokenize(text: str) -> list[str]:
    """Whitespace split, with leading/trailing punctuation stripped.

    Tokens made only of punctuation are dropped.
    """
    out = []
    for raw in text.split():
        a, b = 0, len(raw)
        while a < b and _is_punct(raw[a]):
            a += 1
        while b > a and _is_punct(raw[b - 1]):
            b -= 1
        if a < b:
            out.append(raw[a:b])
    return out


def compute_stats(corpus: Corpus | Iterable[Document]) -> CorpusStats:
    docs = list(corpus)
    tokens = sum(len(tokenize(d.text)) for d in docs)
    entities = sum(len(d.annotations) for d in docs)
    return CorpusStats.from_counts(len(docs), tokens, entities)


def stats_tsv(rows: Sequence[tuple[str, CorpusStats]]) -> str:
    lines = ["\t".join(("name",) + STATS_COLUMNS)]
    for name, s in rows:
        vals = [str(s.document_count), str(s.token_count), str(s.entity_count)]
        vals += [f"{x:.4f}" for x in (s.tokens_per_doc, s.entities_per_doc, s.entity_density)]
        lines.append("\t".join([name] + vals))
    return "\n".join(lines) + "\n"


def pearson(xs: Sequence[float], ys: Sequence[float]) -> float:
    """Sample Pearson correlation coefficient."""
    x = np.asarray(xs, dtype=float)
    y = np.asarray(ys, dtype=float)
    if x.shape != y.shape or x.ndim != 1:
        raise DegenerateInputError("inputs must be 1-d vectors of equal length")
    if len(x) < 2:
        raise DegenerateInputError("need at least two observations")
    dx = x - x.mean()
    dy = y - y.mean()
    sxx = float(dx @ dx)
    syy = float(dy @ dy)
    if sxx == 0 or syy == 0:
        raise DegenerateInputError("zero variance")
    r = float(dx @ dy) / math.sqrt(sxx * syy)
    return max(-1.0, min(1.0, r))
