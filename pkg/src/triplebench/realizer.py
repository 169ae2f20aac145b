"""Sentence planning and linearization with exact entity spans.

A sentence plan is a small tree over the dependency constructs ``subj``,
``dobj``, ``poss``, ``conj``, ``cc`` and ``nn``.  Text is only ever produced
by :func:`linearize`, which records the character span of every entity it
emits, so annotations are correct by construction.
"""
from __future__ import annotations

from dataclasses import dataclass, replace
from typing import Iterator, Sequence, Union

from .errors import MixedSubjectsError
from .kb import RDF_TYPE, KnowledgeBase, Term, Triple
from .lexicon import (
    NOUN_PHRASE,
    Lexicon,
    PronounInfo,
    classify_predicate,
    passive_form,
    plural_agreement,
    pronoun_of,
    realize_literal,
    realize_resource,
)
from .subgraph import StrategyKind, Subgraph

ENTITY = "entity"
PRONOUN = "pronoun"
LITERAL = "literal"
CLASS = "class"
WORD = "word"

ACTIVE = "active"
PASSIVE = "passive"
INVERTED = "inverted"


@dataclass(frozen=True)
class Leaf:
    words: tuple[str, ...]
    resource: str | None = None
    role: str = WORD
    pronoun: PronounInfo | None = None

    @property
    def text(self) -> str:
        return " ".join(self.words)


@dataclass(frozen=True)
class Compound:
    """``nn``: a head noun modified by preceding nouns (``birth place``)."""

    head: Leaf
    modifiers: tuple[Leaf, ...] = ()


@dataclass(frozen=True)
class Poss:
    """``poss``: ``owner's head``."""

    head: Union[Compound, Leaf]
    owner: Leaf


Nominal = Union[Leaf, Compound, Poss]


@dataclass(frozen=True)
class Clause:
    """``subj(verb, subj) & dobj(verb, dobj)``.

    ``voice`` only changes word order: the semantic roles never move, which
    is what keeps paraphrased annotations attached to the right resources.
    """

    verb: Leaf
    subj: Nominal
    dobj: Nominal
    copula: bool = False
    voice: str = ACTIVE


@dataclass(frozen=True)
class Conj:
    conjuncts: tuple[Clause, ...]
    cc: Leaf = Leaf(("and",))


PhraseSpec = Union[Clause, Conj]


@dataclass(frozen=True)
class RealizedSentence:
    text: str
    spans: tuple[tuple[int, int, str], ...]
    source_triples: tuple[Triple, ...]
    is_type_sentence: bool
    plan: PhraseSpec

    def with_plan(self, plan: PhraseSpec) -> "RealizedSentence":
        text, spans = linearize(plan)
        return replace(self, text=text, spans=spans, plan=plan)


# -- dependency view -----------------------------------------------------------

def _surface(node) -> str:
    if isinstance(node, Leaf):
        if node.role == PRONOUN:
            return node.pronoun.subject_form
        return node.text
    if isinstance(node, Compound):
        return " ".join([m.text for m in node.modifiers] + [node.head.text])
    if isinstance(node, Poss):
        return _surface(node.head)
    if isinstance(node, Clause):
        return node.verb.text
    raise TypeError(node)


def dependencies(plan) -> Iterator[tuple[str, str, str]]:
    """Yield ``(relation, head, dependent)`` triples for a plan."""
    if isinstance(plan, Conj):
        first = plan.conjuncts[0]
        for other in plan.conjuncts[1:]:
            yield ("conj", _surface(first), _surface(other))
        yield ("cc", _surface(plan.conjuncts[-1]), plan.cc.text)
        for c in plan.conjuncts:
            yield from dependencies(c)
    elif isinstance(plan, Clause):
        yield ("subj", plan.verb.text, _surface(plan.subj))
        yield ("dobj", plan.verb.text, _surface(plan.dobj))
        yield from dependencies(plan.subj)
        yield from dependencies(plan.dobj)
    elif isinstance(plan, Poss):
        yield ("poss", _surface(plan.head), _surface(plan.owner))
        yield from dependencies(plan.head)
    elif isinstance(plan, Compound):
        for m in plan.modifiers:
            yield ("nn", plan.head.text, m.text)


def subject_resource(plan: PhraseSpec) -> str | None:
    if isinstance(plan, Conj):
        return subject_resource(plan.conjuncts[0])
    subj = plan.subj
    leaf = subj.owner if isinstance(subj, Poss) else subj
    return leaf.resource if isinstance(leaf, Leaf) else None


def leaves(plan) -> Iterator[Leaf]:
    if isinstance(plan, Leaf):
        yield plan
    elif isinstance(plan, Compound):
        yield from plan.modifiers
        yield plan.head
    elif isinstance(plan, Poss):
        yield plan.owner
        yield from leaves(plan.head)
    elif isinstance(plan, Clause):
        yield from leaves(plan.subj)
        yield plan.verb
        yield from leaves(plan.dobj)
    elif isinstance(plan, Conj):
        for c in plan.conjuncts:
            yield from leaves(c)


# -- planning --------------------------------------------------------------------

def _object_leaf(kb: KnowledgeBase, o: Term, lang: str) -> Leaf:
    if o.is_literal:
        return Leaf(tuple(realize_literal(o)), role=LITERAL)
    if o.is_blank:
        raise ValueError("blank nodes cannot be verbalized")
    return Leaf(tuple(realize_resource(kb, o, lang)), o.value, ENTITY)


def _article(word: str) -> str:
    return "an" if word[:1].lower() in "aeiou" else "a"


def _class_phrase(kb: KnowledgeBase, cls: Term, lang: str) -> tuple[str, ...]:
    words = realize_resource(kb, cls, lang) if cls.is_iri else realize_literal(cls)
    first = words[0]
    if not first[1:2].isupper():
        first = first[:1].lower() + first[1:]
    return (_article(first), first, *words[1:])


def plan_triple(kb: KnowledgeBase, t: Triple, lexicon: Lexicon | None = None, lang: str = "en") -> Clause:
    if t.has_blank:
        raise ValueError("blank nodes cannot be verbalized")
    subj = Leaf(tuple(realize_resource(kb, t.subject, lang)), t.subject.value, ENTITY)
    if t.predicate.value == RDF_TYPE:
        cls = Leaf(_class_phrase(kb, t.object, lang), t.object.value if t.object.is_iri else None, CLASS)
        return Clause(Leaf(("is",)), subj, cls, copula=True)
    entry = classify_predicate(kb, t.predicate, lexicon)
    obj = _object_leaf(kb, t.object, lang)
    if entry.category == NOUN_PHRASE:
        *mods, head = entry.realization
        noun = Compound(Leaf((head,)), tuple(Leaf((m,)) for m in mods))
        return Clause(Leaf(("is",)), Poss(noun, subj), obj, copula=True)
    return Clause(Leaf(entry.realization), subj, obj)


def pronominalize(plan: PhraseSpec, pronoun: PronounInfo) -> PhraseSpec:
    """Swap the (first) subject mention for a pronoun; the pronoun carries no span."""
    if isinstance(plan, Conj):
        first = pronominalize(plan.conjuncts[0], pronoun)
        return replace(plan, conjuncts=(first,) + plan.conjuncts[1:])
    subj = plan.subj
    if isinstance(subj, Poss):
        owner = Leaf((), subj.owner.resource, PRONOUN, pronoun)
        return replace(plan, subj=replace(subj, owner=owner))
    return replace(plan, subj=Leaf((), subj.resource, PRONOUN, pronoun))


def merge_cluster_sentences(specs: Sequence[Clause], subject_pronoun: PronounInfo) -> PhraseSpec:
    if not specs:
        raise ValueError("nothing to merge")
    subjects = {subject_resource(s) for s in specs}
    if len(subjects) != 1 or None in subjects:
        raise MixedSubjectsError(f"cannot merge sentences about {sorted(map(str, subjects))}")
    if len(specs) == 1:
        return specs[0]
    rest = tuple(pronominalize(s, subject_pronoun) for s in specs[1:])
    return Conj((specs[0],) + rest)


# -- linearization ---------------------------------------------------------------

# a piece is (text, resource to annotate or None, attach to previous piece)
Piece = tuple[str, Union[str, None], bool]


def _possessive(text: str) -> str:
    return "'" if text.endswith("s") else "'s"


def _nominal(node, case: str) -> list[Piece]:
    if isinstance(node, Leaf):
        if node.role == PRONOUN:
            form = {
                "subject": node.pronoun.subject_form,
                "object": node.pronoun.object_form,
                "possessive": node.pronoun.possessive_form,
            }[case]
            return [(form, None, False)]
        annotate = node.resource if node.role == ENTITY else None
        out = [(node.text, annotate, False)]
        if case == "possessive":
            out.append((_possessive(node.text), None, True))
        return out
    if isinstance(node, Compound):
        return [(w.text, None, False) for w in (*node.modifiers, node.head)]
    if isinstance(node, Poss):
        return _nominal(node.owner, "possessive") + _nominal(node.head, "subject")
    raise TypeError(node)


def _plural(node) -> bool:
    return isinstance(node, Leaf) and node.role == PRONOUN and node.pronoun.subject_form == "they"


def _agree(verb: str, subject) -> str:
    return plural_agreement(verb) if _plural(subject) else verb


def _clause(c: Clause) -> list[Piece]:
    if c.voice == INVERTED:
        return _nominal(c.dobj, "subject") + [(_agree(c.verb.text, c.dobj), None, False)] + _nominal(c.subj, "object")
    if c.voice == PASSIVE:
        aux, part = passive_form(c.verb.text)
        return (
            _nominal(c.dobj, "subject")
            + [(_agree(aux, c.dobj), None, False), (part, None, False), ("by", None, False)]
            + _nominal(c.subj, "object")
        )
    return _nominal(c.subj, "subject") + [(_agree(c.verb.text, c.subj), None, False)] + _nominal(c.dobj, "object")


def _pieces(plan: PhraseSpec) -> list[Piece]:
    if isinstance(plan, Clause):
        return _clause(plan)
    parts = [_clause(c) for c in plan.conjuncts]
    out = parts[0]
    for i, part in enumerate(parts[1:], start=1):
        if i == len(parts) - 1:
            out += [(plan.cc.text, None, False)]
        else:
            out += [(",", None, True)]
        out += part
    return out


def linearize(plan: PhraseSpec, final: str = ".") -> tuple[str, tuple[tuple[int, int, str], ...]]:
    """Render a plan to text and the half-open character spans of its entities."""
    pieces = _pieces(plan)
    chunks: list[str] = []
    spans = []
    pos = 0
    for i, (text, resource, glue) in enumerate(pieces):
        if i == 0 and resource is None:
            text = text[:1].upper() + text[1:]
        if i and not glue:
            chunks.append(" ")
            pos += 1
        if resource is not None:
            spans.append((pos, pos + len(text), resource))
        chunks.append(text)
        pos += len(text)
    chunks.append(final)
    return "".join(chunks), tuple(spans)


# -- documents -----------------------------------------------------------------

def _sentence(plan: PhraseSpec, triples: Sequence[Triple], is_type: bool) -> RealizedSentence:
    text, spans = linearize(plan)
    return RealizedSentence(text, spans, tuple(triples), is_type, plan)


def realize_document(
    subgraph: Subgraph,
    kb: KnowledgeBase,
    lexicon: Lexicon | None = None,
    lang: str = "en",
) -> list[RealizedSentence]:
    """One sentence per triple (cluster-mates merged for summary graphs).

    A sentence about the seed that directly follows another sentence about
    the seed refers to it with a pronoun.
    """
    if not subgraph.triples:
        raise ValueError("cannot realize an empty subgraph")
    units: list[tuple[PhraseSpec, list[Triple], bool]] = []
    seed = subgraph.seed
    pronoun = pronoun_of(kb, seed, lexicon) if seed.is_iri else None

    if subgraph.strategy is StrategyKind.SUMMARY and subgraph.cluster_groups:
        groups: dict[frozenset[str], list[Triple]] = {}
        order: list[frozenset[str] | Triple] = []
        for t in subgraph.triples:
            group = next((g for g in subgraph.cluster_groups if t.predicate.value in g), None)
            if group is None or t.subject != seed:
                order.append(t)
            else:
                if group not in groups:
                    order.append(group)
                groups.setdefault(group, []).append(t)
        for item in order:
            if isinstance(item, Triple):
                units.append((plan_triple(kb, item, lexicon, lang), [item], item.predicate.value == RDF_TYPE))
            else:
                ts = groups[item]
                specs = [plan_triple(kb, t, lexicon, lang) for t in ts]
                units.append((merge_cluster_sentences(specs, pronoun), ts, False))
    else:
        for t in subgraph.triples:
            units.append((plan_triple(kb, t, lexicon, lang), [t], t.predicate.value == RDF_TYPE))

    sentences = []
    previous = None
    for plan, ts, is_type in units:
        subj = subject_resource(plan)
        if pronoun is not None and subj == seed.value and previous == seed.value:
            plan = pronominalize(plan, pronoun)
        sentences.append(_sentence(plan, ts, is_type))
        previous = subj
    return sentences


def assemble(sentences: Sequence[RealizedSentence]) -> tuple[str, list[tuple[int, int, str]]]:
    """Join sentences with single spaces, shifting spans to document offsets."""
    parts = []
    spans = []
    offset = 0
    for i, s in enumerate(sentences):
        if i:
            parts.append(" ")
            offset += 1
        spans.extend((a + offset, b + offset, r) for a, b, r in s.spans)
        parts.append(s.text)
        offset += len(s.text)
    return "".join(parts), spans


def map_leaves(plan, fn):
    """Rebuild a plan with every leaf passed through ``fn(leaf, parent)``."""

    def walk(node, parent):
        if isinstance(node, Leaf):
            return fn(node, parent)
        if isinstance(node, Compound):
            return Compound(walk(node.head, node), tuple(walk(m, node) for m in node.modifiers))
        if isinstance(node, Poss):
            return Poss(walk(node.head, node), walk(node.owner, node))
        if isinstance(node, Clause):
            return replace(
                node,
                verb=walk(node.verb, node),
                subj=walk(node.subj, node),
                dobj=walk(node.dobj, node),
            )
        if isinstance(node, Conj):
            return replace(node, conjuncts=tuple(walk(c, node) for c in node.conjuncts))
        raise TypeError(node)

    return walk(plan, None)
