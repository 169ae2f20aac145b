"""Plan-level paraphrasing: voice alternation and synonym substitution.

Both rewrites act on sentence plans and re-linearize, so every entity span is
recomputed rather than patched.  Sentences stating a resource's type are
never touched.
"""
from __future__ import annotations

import csv
from dataclasses import replace
from pathlib import Path
from typing import Mapping, Sequence

from .kb import IRI, KnowledgeBase
from .realizer import (
    ACTIVE,
    ENTITY,
    INVERTED,
    PASSIVE,
    PRONOUN,
    WORD,
    Clause,
    Leaf,
    RealizedSentence,
    map_leaves,
)
from .seeds import as_generator

SWAP_PROBABILITY = 0.5
SUBSTITUTION_PROBABILITY = 0.5
_BE_FORMS = {"is", "are", "was", "were"}


def load_synonyms(path: str | Path) -> dict[str, tuple[str, ...]]:
    """TSV of ``lemma<TAB>syn1,syn2,...``; ``#`` starts a comment line."""
    table = {}
    with open(path, encoding="utf-8", newline="") as fh:
        for row in csv.reader(fh, delimiter="\t", quoting=csv.QUOTE_NONE):
            if not row or not row[0].strip() or row[0].startswith("#"):
                continue
            if len(row) < 2:
                raise ValueError(f"synonym row without synonyms: {row!r}")
            syns = tuple(s.strip() for s in row[1].split(",") if s.strip())
            if syns:
                table[row[0].strip().lower()] = syns
    return table


def _swapped(plan: Clause) -> Clause | None:
    if plan.copula:
        # fronting a date or number reads badly, so only entity complements move
        if plan.voice == ACTIVE and not (isinstance(plan.dobj, Leaf) and plan.dobj.role == ENTITY):
            return None
        return replace(plan, voice=INVERTED if plan.voice == ACTIVE else ACTIVE)
    if plan.voice == PASSIVE:
        return replace(plan, voice=ACTIVE)
    words = plan.verb.words
    # agentless passives from the lexicon ("was declared ... on") stay as they are
    if len(words) != 1 or words[0].lower() in _BE_FORMS:
        return None
    if not (isinstance(plan.dobj, Leaf) and plan.dobj.role in (ENTITY, PRONOUN)):
        return None
    if not (isinstance(plan.subj, Leaf) and plan.subj.role in (ENTITY, PRONOUN)):
        return None
    return replace(plan, voice=PASSIVE)


def swap_voice(sentence: RealizedSentence, rng, probability: float = SWAP_PROBABILITY) -> RealizedSentence:
    """Flip active/passive (or subject/complement of a copula) with the given probability."""
    if sentence.is_type_sentence or not isinstance(sentence.plan, Clause):
        return sentence
    alt = _swapped(sentence.plan)
    if alt is None:
        return sentence
    if as_generator(rng).random() >= probability:
        return sentence
    return sentence.with_plan(alt)


def _alternative_labels(kb: KnowledgeBase, iri: str, current: str, lang: str) -> list[str]:
    seen = {current}
    out = []
    labels = kb.labels_of(IRI(iri))
    for text, tag in sorted(labels, key=lambda lt: lt[1] != lang):
        if text not in seen and (tag in (lang, None) or not any(t == lang for _, t in labels)):
            seen.add(text)
            out.append(text)
    return out


def substitute_synonyms(
    sentence: RealizedSentence,
    kb: KnowledgeBase,
    synonyms: Mapping[str, Sequence[str]] | None,
    rng,
    lang: str = "en",
    probability: float = SUBSTITUTION_PROBABILITY,
) -> RealizedSentence:
    """Swap entity labels for alternative KB labels and content words for synonyms.

    The resource behind each entity mention is unchanged; only its surface
    form moves, and the span follows it.
    """
    if sentence.is_type_sentence:
        return sentence
    gen = as_generator(rng)
    synonyms = synonyms or {}
    changed = False

    def visit(leaf: Leaf, parent) -> Leaf:
        nonlocal changed
        if leaf.role == ENTITY:
            alts = _alternative_labels(kb, leaf.resource, leaf.text, lang)
            if alts and gen.random() < probability:
                changed = True
                return replace(leaf, words=tuple(alts[int(gen.integers(len(alts)))].split()))
            return leaf
        if leaf.role != WORD or not synonyms:
            return leaf
        if isinstance(parent, Clause) and (parent.copula or leaf is not parent.verb):
            return leaf
        words = list(leaf.words)
        for i, w in enumerate(words):
            options = synonyms.get(w.lower())
            if options and gen.random() < probability:
                words[i] = options[int(gen.integers(len(options)))]
                changed = True
        return replace(leaf, words=tuple(words))

    plan = map_leaves(sentence.plan, visit)
    return sentence.with_plan(plan) if changed else sentence


def paraphrase_sentences(
    sentences: Sequence[RealizedSentence],
    kb: KnowledgeBase,
    synonyms: Mapping[str, Sequence[str]] | None,
    rng,
    lang: str = "en",
) -> list[RealizedSentence]:
    gen = as_generator(rng)
    out = []
    for s in sentences:
        s = swap_voice(s, gen)
        s = substitute_synonyms(s, kb, synonyms, gen, lang)
        out.append(s)
    return out
