"""Indexed in-memory RDF store loaded from N-Triples.

Only the line-oriented N-Triples grammar is accepted.  Terms are small frozen
dataclasses so they can be hashed and shared freely between worker processes.
"""
from __future__ import annotations

import gzip
import io
import re
import warnings
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Iterator, TextIO

from .errors import NTriplesSyntaxError

RDF = "http://www.w3.org/1999/02/22-rdf-syntax-ns#"
RDFS = "http://www.w3.org/2000/01/rdf-schema#"
XSD = "http://www.w3.org/2001/XMLSchema#"
RDF_TYPE = RDF + "type"
RDFS_LABEL = RDFS + "label"

IRI_KIND = "IRI"
LITERAL_KIND = "Literal"
BNODE_KIND = "BlankNode"

_KIND_ORDER = {IRI_KIND: 0, BNODE_KIND: 1, LITERAL_KIND: 2}


@dataclass(frozen=True, slots=True)
class Term:
    kind: str
    value: str
    datatype: str | None = None
    lang: str | None = None

    def __post_init__(self):
        if self.kind == IRI_KIND:
            if ":" not in self.value:
                raise ValueError(f"not an absolute IRI: {self.value!r}")
        elif self.kind == LITERAL_KIND:
            if self.datatype is not None and self.lang is not None:
                raise ValueError("a literal cannot carry both a datatype and a language tag")
            if self.lang is not None and self.lang != self.lang.lower():
                # language tags compare case-insensitively
                object.__setattr__(self, "lang", self.lang.lower())
        elif self.kind != BNODE_KIND:
            raise ValueError(f"unknown term kind {self.kind!r}")

    @property
    def is_iri(self) -> bool:
        return self.kind == IRI_KIND

    @property
    def is_literal(self) -> bool:
        return self.kind == LITERAL_KIND

    @property
    def is_blank(self) -> bool:
        return self.kind == BNODE_KIND

    def n3(self) -> str:
        """Canonical N-Triples form of the term."""
        if self.kind == IRI_KIND:
            return f"<{self.value}>"
        if self.kind == BNODE_KIND:
            return f"_:{self.value}"
        text = '"' + _escape_string(self.value) + '"'
        if self.lang:
            return f"{text}@{self.lang}"
        if self.datatype:
            return f"{text}^^<{self.datatype}>"
        return text

    def sort_key(self) -> tuple:
        return (_KIND_ORDER[self.kind], self.value, self.datatype or "", self.lang or "")

    def __str__(self) -> str:
        return self.n3()


def IRI(value: str) -> Term:
    return Term(IRI_KIND, value)


def Literal(value: str, datatype: str | None = None, lang: str | None = None) -> Term:
    return Term(LITERAL_KIND, value, datatype, lang)


def BNode(label: str) -> Term:
    return Term(BNODE_KIND, label)


@dataclass(frozen=True, slots=True)
class Triple:
    subject: Term
    predicate: Term
    object: Term

    def __post_init__(self):
        if self.subject.is_literal:
            raise ValueError("literal in subject position")
        if not self.predicate.is_iri:
            raise ValueError("predicate must be an IRI")

    def n3(self) -> str:
        return f"{self.subject.n3()} {self.predicate.n3()} {self.object.n3()} ."

    @property
    def has_blank(self) -> bool:
        return self.subject.is_blank or self.object.is_blank

    def __iter__(self):
        return iter((self.subject, self.predicate, self.object))


class KnowledgeBase:
    """Immutable set of triples with subject, object, type and label indexes.

    Triples keep first-seen order so that every derived listing is
    reproducible; duplicates are dropped.
    """

    def __init__(self, triples: Iterable[Triple] = ()):
        ordered = dict.fromkeys(triples)
        self._triples: tuple[Triple, ...] = tuple(ordered)
        by_subject: dict[Term, list[Triple]] = {}
        by_object: dict[Term, list[Triple]] = {}
        types: dict[Term, list[Term]] = {}
        labels: dict[Term, list[tuple[str, str | None]]] = {}
        for t in self._triples:
            by_subject.setdefault(t.subject, []).append(t)
            by_object.setdefault(t.object, []).append(t)
            if t.predicate.value == RDF_TYPE:
                types.setdefault(t.subject, []).append(t.object)
            elif t.predicate.value == RDFS_LABEL and t.object.is_literal:
                labels.setdefault(t.subject, []).append((t.object.value, t.object.lang))
        self._by_subject = {k: tuple(v) for k, v in by_subject.items()}
        self._by_object = {k: tuple(v) for k, v in by_object.items()}
        self._types = {k: frozenset(v) for k, v in types.items()}
        self._labels = {k: tuple(v) for k, v in labels.items()}

    def __len__(self) -> int:
        return len(self._triples)

    def __iter__(self) -> Iterator[Triple]:
        return iter(self._triples)

    def __contains__(self, t: object) -> bool:
        return t in self._by_subject.get(getattr(t, "subject", None), ())

    @property
    def triples(self) -> frozenset[Triple]:
        return frozenset(self._triples)

    @property
    def label_index(self) -> dict[Term, tuple[tuple[str, str | None], ...]]:
        return dict(self._labels)

    def triples_with_subject(self, s: Term) -> list[Triple]:
        if s.is_literal:
            raise ValueError("a literal cannot be a subject")
        return list(self._by_subject.get(s, ()))

    def triples_with_object(self, o: Term) -> list[Triple]:
        return list(self._by_object.get(o, ()))

    def types_of(self, r: Term) -> frozenset[Term]:
        return self._types.get(r, frozenset())

    def labels_of(self, r: Term) -> tuple[tuple[str, str | None], ...]:
        return self._labels.get(r, ())

    def label_of(self, r: Term, lang: str = "en") -> str:
        """Best label for ``r``: language match, then any label, then the local name."""
        if not r.is_iri:
            raise ValueError("labels are looked up for IRIs only")
        labels = self._labels.get(r)
        if labels:
            for text, tag in labels:
                if tag == lang:
                    return text
            return labels[0][0]
        return local_name_label(r.value)

    def instances_of_classes(self, class_iris: Iterable[Term | str]) -> list[Term]:
        classes = {c if isinstance(c, Term) else IRI(c) for c in class_iris}
        if not classes:
            raise ValueError("at least one class is required")
        found = {s for s, ts in self._types.items() if not ts.isdisjoint(classes)}
        return sorted(found, key=Term.sort_key)

    def subjects(self) -> list[Term]:
        return list(self._by_subject)

    def serialize(self) -> str:
        return "".join(t.n3() + "\n" for t in self._triples)


_CAMEL = re.compile(r"(?<=[a-z0-9])(?=[A-Z])")


def local_name(iri: str) -> str:
    cut = max(iri.rfind("#"), iri.rfind("/"))
    if cut == -1:
        cut = iri.find(":")
    return iri[cut + 1:] or iri


def local_name_label(iri: str) -> str:
    """``birthPlace`` -> ``birth place``; ``Albert_Einstein`` -> ``Albert Einstein``.

    Camel-case pieces are lower-cased only when the name itself starts in lower
    case, so ``NationalHistoricLandmark`` keeps its capitals.
    """
    name = local_name(iri).replace("_", " ")
    words = []
    for chunk in name.split():
        parts = _CAMEL.split(chunk)
        if chunk[:1].islower():
            parts = [p.lower() for p in parts]
        words.extend(parts)
    return " ".join(words) if words else iri


# -- N-Triples parsing -------------------------------------------------------

_IRIREF = re.compile(r'<((?:[^\x00-\x20<>"{}|^`\\]|\\u[0-9A-Fa-f]{4}|\\U[0-9A-Fa-f]{8})*)>')
_BNODE = re.compile(r"_:([\w](?:[\w.\-]*[\w\-])?)")
_STRING = re.compile(r'"((?:[^"\\\n\r]|\\.)*)"')
_LANG = re.compile(r"@([a-zA-Z]+(?:-[a-zA-Z0-9]+)*)")
_WS = re.compile(r"[ \t]*")
_ESCAPE = re.compile(r"\\(?:u([0-9A-Fa-f]{4})|U([0-9A-Fa-f]{8})|(.))", re.S)
_ECHAR = {"t": "\t", "b": "\b", "n": "\n", "r": "\r", "f": "\f", '"': '"', "'": "'", "\\": "\\"}


def _unescape(raw: str, line: int, col: int) -> str:
    if "\\" not in raw:
        return raw

    def repl(m: re.Match) -> str:
        if m.group(1) or m.group(2):
            return chr(int(m.group(1) or m.group(2), 16))
        ch = m.group(3)
        if ch not in _ECHAR:
            raise NTriplesSyntaxError(line, col + m.start(), f"invalid escape \\{ch}")
        return _ECHAR[ch]

    return _ESCAPE.sub(repl, raw)


def _escape_string(value: str) -> str:
    return (
        value.replace("\\", "\\\\")
        .replace('"', '\\"')
        .replace("\n", "\\n")
        .replace("\r", "\\r")
    )


def _parse_line(text: str, lineno: int) -> Triple | None:
    pos = _WS.match(text, 0).end()
    if pos == len(text) or text[pos] == "#":
        return None
    terms: list[Term] = []
    for slot in ("subject", "predicate", "object"):
        col = pos + 1
        if pos >= len(text):
            raise NTriplesSyntaxError(lineno, col, f"unexpected end of line, expected {slot}")
        ch = text[pos]
        if ch == "<":
            m = _IRIREF.match(text, pos)
            if not m:
                raise NTriplesSyntaxError(lineno, col, "malformed IRI")
            value = _unescape(m.group(1), lineno, col)
            if ":" not in value:
                raise NTriplesSyntaxError(lineno, col, f"relative IRI <{value}>")
            term = IRI(value)
        elif ch == "_" and slot != "predicate":
            m = _BNODE.match(text, pos)
            if not m:
                raise NTriplesSyntaxError(lineno, col, "malformed blank node label")
            term = BNode(m.group(1))
        elif ch == '"' and slot == "object":
            m = _STRING.match(text, pos)
            if not m:
                raise NTriplesSyntaxError(lineno, col, "unterminated string literal")
            value = _unescape(m.group(1), lineno, col + 1)
            end = m.end()
            if text.startswith("^^", end):
                dm = _IRIREF.match(text, end + 2)
                if not dm:
                    raise NTriplesSyntaxError(lineno, end + 3, "malformed datatype IRI")
                term = Literal(value, datatype=_unescape(dm.group(1), lineno, end + 3))
                m = dm
            elif text.startswith("@", end):
                lm = _LANG.match(text, end)
                if not lm:
                    raise NTriplesSyntaxError(lineno, end + 1, "malformed language tag")
                term = Literal(value, lang=lm.group(1))
                m = lm
            else:
                term = Literal(value)
        else:
            raise NTriplesSyntaxError(lineno, col, f"unexpected character {ch!r} in {slot}")
        terms.append(term)
        pos = _WS.match(text, m.end()).end()
    if pos >= len(text) or text[pos] != ".":
        raise NTriplesSyntaxError(lineno, pos + 1, "expected '.' at end of statement")
    pos = _WS.match(text, pos + 1).end()
    if pos < len(text) and text[pos] != "#":
        raise NTriplesSyntaxError(lineno, pos + 1, "trailing content after '.'")
    return Triple(*terms)


def iter_ntriples(stream: TextIO | str, lenient: bool = False) -> Iterator[Triple]:
    if isinstance(stream, str):
        stream = io.StringIO(stream)
    for lineno, line in enumerate(stream, start=1):
        line = line.rstrip("\r\n")
        try:
            t = _parse_line(line, lineno)
        except NTriplesSyntaxError as err:
            if not lenient:
                raise
            warnings.warn(f"skipping malformed N-Triples {err}", stacklevel=2)
            continue
        if t is not None:
            yield t


def parse_ntriples(stream: TextIO | str, lenient: bool = False) -> KnowledgeBase:
    """Parse N-Triples text (or a text stream) into a :class:`KnowledgeBase`.

    Raises :class:`NTriplesSyntaxError` at the first bad statement unless
    ``lenient`` is set, in which case bad lines are skipped with a warning.
    """
    return KnowledgeBase(iter_ntriples(stream, lenient=lenient))


def load_ntriples(path: str | Path, lenient: bool = False) -> KnowledgeBase:
    path = Path(path)
    opener = gzip.open if path.suffix == ".gz" else open
    with opener(path, "rt", encoding="utf-8") as fh:
        return parse_ntriples(fh, lenient=lenient)


PREFIXES = {
    "rdf": RDF,
    "rdfs": RDFS,
    "xsd": XSD,
    "owl": "http://www.w3.org/2002/07/owl#",
    "foaf": "http://xmlns.com/foaf/0.1/",
    "schema": "http://schema.org/",
    "dbo": "http://dbpedia.org/ontology/",
    "dbr": "http://dbpedia.org/resource/",
    "dbp": "http://dbpedia.org/property/",
}


def expand_curie(name: str, prefixes: dict[str, str] = PREFIXES) -> str:
    """``dbo:Scientist`` -> full IRI; ``<...>`` and unknown prefixes pass through."""
    name = name.strip()
    if name.startswith("<") and name.endswith(">"):
        return name[1:-1]
    prefix, sep, rest = name.partition(":")
    if sep and prefix in prefixes and not rest.startswith("//"):
        return prefixes[prefix] + rest
    return name
