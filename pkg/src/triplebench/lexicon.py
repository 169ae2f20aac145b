"""Surface words for resources, literals and predicates, plus pronouns."""
from __future__ import annotations

import calendar
import csv
import datetime as dt
import warnings
from dataclasses import dataclass, field
from decimal import Decimal, InvalidOperation
from importlib import resources
from pathlib import Path

from .errors import UnsupportedDatatypeError
from .kb import IRI, RDF, XSD, KnowledgeBase, Term, local_name

NOUN_PHRASE = "NounPhrase"
VERB = "Verb"

FOAF_GENDER = "http://xmlns.com/foaf/0.1/gender"
DEFAULT_PERSON_CLASSES = frozenset({
    "http://dbpedia.org/ontology/Person",
    "http://xmlns.com/foaf/0.1/Person",
    "http://schema.org/Person",
    "http://dbpedia.org/ontology/Scientist",
    "http://dbpedia.org/ontology/Artist",
    "http://dbpedia.org/ontology/Athlete",
    "http://dbpedia.org/ontology/Politician",
    "http://dbpedia.org/ontology/Writer",
})

# Lemmas whose inflected forms open a verbal predicate name.  Words that are
# just as often nouns ("record", "star", "border") are left out on purpose.
VERB_LEMMAS = frozenset({
    "be", "have", "cross", "influence", "own", "write", "direct", "produce",
    "create", "develop", "marry", "employ", "flow", "join", "manage", "publish",
    "contain", "include", "connect", "serve", "operate", "build", "compose",
    "discover", "invent", "know", "precede", "succeed", "follow", "belong",
    "speak", "live", "die", "attend", "represent",
})
_IRREGULAR = {
    "is": "be", "was": "be", "are": "be", "were": "be", "been": "be",
    "has": "have", "had": "have", "known": "know", "knew": "know",
    "wrote": "write", "written": "write", "built": "build", "spoke": "speak",
    "spoken": "speak", "died": "die",
}

_INTEGER_TYPES = {
    XSD + t for t in (
        "integer", "int", "long", "short", "byte", "nonNegativeInteger",
        "positiveInteger", "negativeInteger", "nonPositiveInteger",
        "unsignedInt", "unsignedLong", "unsignedShort", "unsignedByte",
    )
}
_VERBATIM_TYPES = {XSD + "string", RDF + "langString", XSD + "gYear", XSD + "anyURI"}


@dataclass(frozen=True)
class LexiconEntry:
    predicate_iri: str
    realization: tuple[str, ...]
    category: str

    def __post_init__(self):
        object.__setattr__(self, "realization", tuple(self.realization))
        if not self.realization:
            raise ValueError(f"empty realization for {self.predicate_iri}")
        if self.category not in (NOUN_PHRASE, VERB):
            raise ValueError(f"unknown category {self.category!r}")

    @property
    def text(self) -> str:
        return " ".join(self.realization)


@dataclass(frozen=True)
class PronounInfo:
    subject_form: str
    possessive_form: str

    @property
    def object_form(self) -> str:
        return {"he": "him", "she": "her", "they": "them"}.get(self.subject_form, self.subject_form)


HE = PronounInfo("he", "his")
SHE = PronounInfo("she", "her")
THEY = PronounInfo("they", "their")
IT = PronounInfo("it", "its")


@dataclass(frozen=True)
class Lexicon:
    entries: dict[str, LexiconEntry] = field(default_factory=dict)
    person_classes: frozenset[str] = DEFAULT_PERSON_CLASSES
    gender_property: str = FOAF_GENDER

    def get(self, predicate_iri: str) -> LexiconEntry | None:
        return self.entries.get(predicate_iri)


def load_lexicon(path: str | Path | None = None, **options) -> Lexicon:
    """Read a three-column TSV (predicate IRI, realization, category).

    ``None`` loads the English lexicon shipped with the package.  Lines
    starting with ``#`` are comments.
    """
    if path is None:
        text = resources.files("triplebench.data").joinpath("lexicon.tsv").read_text("utf-8")
    else:
        text = Path(path).read_text(encoding="utf-8")
    entries = {}
    rows = csv.reader(text.splitlines(), delimiter="\t", quoting=csv.QUOTE_NONE)
    for lineno, row in enumerate(rows, start=1):
        if not row or not row[0].strip() or row[0].lstrip().startswith("#"):
            continue
        if len(row) != 3:
            raise ValueError(f"lexicon line {lineno}: expected 3 tab-separated columns")
        iri, words, category = (c.strip() for c in row)
        entries[iri] = LexiconEntry(iri, tuple(words.split()), category)
    return Lexicon(entries, **options)


def realize_resource(kb: KnowledgeBase, r: Term, lang: str = "en") -> list[str]:
    return kb.label_of(r, lang).split() or [local_name(r.value)]


def _format_literal(lit: Term) -> str:
    value = lit.value
    dtype = lit.datatype
    if lit.lang or dtype is None or dtype in _VERBATIM_TYPES:
        return value
    try:
        if dtype == XSD + "date":
            day = dt.date.fromisoformat(value.strip()[:10])
            return f"{calendar.month_name[day.month]} {day.day}, {day.year}"
        if dtype in _INTEGER_TYPES:
            return str(int(value))
        if dtype == XSD + "decimal":
            return format(Decimal(value).normalize(), "f")
    except (ValueError, InvalidOperation) as err:
        raise UnsupportedDatatypeError(f"cannot read {value!r} as {dtype}") from err
    raise UnsupportedDatatypeError(f"no verbalization rule for {dtype}")


def realize_literal(lit: Term, strict: bool = False) -> list[str]:
    """Words for a literal: dates as ``March 11, 2013``, numbers canonical, text verbatim.

    Unknown datatypes fall back to the lexical form with a warning, or raise
    :class:`UnsupportedDatatypeError` when ``strict`` is set.
    """
    if not lit.is_literal:
        raise ValueError("expected a literal")
    try:
        text = _format_literal(lit)
    except UnsupportedDatatypeError as err:
        if strict:
            raise
        warnings.warn(f"{err}; using the lexical form", stacklevel=2)
        text = lit.value
    return text.split() or [text]


def verb_lemma(token: str) -> str | None:
    token = token.lower()
    if token in _IRREGULAR:
        return _IRREGULAR[token]
    candidates = [token]
    if token.endswith("ies") or token.endswith("ied"):
        candidates.append(token[:-3] + "y")
    for suffix in ("es", "s", "ed", "d"):
        if token.endswith(suffix):
            candidates.append(token[: -len(suffix)])
    for c in candidates:
        if c in VERB_LEMMAS:
            return c
    return None


_PLURAL_AUX = {"is": "are", "was": "were", "has": "have"}


def plural_agreement(verb: str) -> str:
    """Re-inflect a third-person singular verb phrase for a plural subject."""
    head, _, rest = verb.partition(" ")
    low = head.lower()
    if low in _PLURAL_AUX:
        head = _PLURAL_AUX[low]
    elif low.endswith("s") and not low.endswith("ss"):
        lemma = verb_lemma(low)
        if lemma is not None:
            head = lemma
    return f"{head} {rest}" if rest else head


def classify_predicate(kb: KnowledgeBase, p: Term | str, lexicon: Lexicon | None = None) -> LexiconEntry:
    iri = p.value if isinstance(p, Term) else p
    if lexicon is not None:
        entry = lexicon.get(iri)
        if entry is not None:
            return entry
    words = tuple(kb.label_of(IRI(iri)).split())
    category = VERB if verb_lemma(words[0]) else NOUN_PHRASE
    return LexiconEntry(iri, words, category)


def pronoun_of(kb: KnowledgeBase, r: Term, lexicon: Lexicon | None = None) -> PronounInfo:
    lexicon = lexicon or Lexicon()
    types = {t.value for t in kb.types_of(r)}
    if types.isdisjoint(lexicon.person_classes):
        return IT
    for t in kb.triples_with_subject(r):
        if t.predicate.value != lexicon.gender_property:
            continue
        value = t.object.value if t.object.is_literal else local_name(t.object.value)
        value = value.strip().lower()
        if value in ("male", "man", "m"):
            return HE
        if value in ("female", "woman", "f"):
            return SHE
    return THEY


IRREGULAR_PARTICIPLES = {
    "writes": ("is", "written"), "wrote": ("was", "written"),
    "builds": ("is", "built"), "built": ("was", "built"),
    "knows": ("is", "known"), "knew": ("was", "known"),
    "speaks": ("is", "spoken"), "spoke": ("was", "spoken"),
    "has": ("is", "had"), "had": ("was", "had"),
    "flies": ("is", "flown"), "flew": ("was", "flown"),
}


_VOWELS = set("aeiou")


def _ed(stem: str) -> str:
    # span -> spanned, but cross -> crossed and open -> opened
    low = stem.lower()
    groups = sum(1 for i, c in enumerate(low) if c in _VOWELS and (i == 0 or low[i - 1] not in _VOWELS))
    if (
        groups == 1
        and len(low) >= 3
        and low[-1] not in _VOWELS | set("wxy")
        and low[-2] in _VOWELS
        and low[-3] not in _VOWELS
    ):
        return stem + stem[-1] + "ed"
    return stem + "ed"


def passive_form(verb: str) -> tuple[str, str]:
    """Auxiliary and past participle for one inflected verb: ``crosses`` -> (is, crossed)."""
    low = verb.lower()
    if low in IRREGULAR_PARTICIPLES:
        return IRREGULAR_PARTICIPLES[low]
    if low.endswith("ed"):
        return "was", verb
    if low.endswith("ies"):
        return "is", verb[:-3] + "ied"
    if low.endswith(("sses", "shes", "ches", "xes", "zes")):
        return "is", verb[:-2] + "ed"
    if low.endswith("es"):
        return "is", verb[:-1] + "d"
    if low.endswith("s"):
        return "is", _ed(verb[:-1])
    return "is", _ed(verb)
