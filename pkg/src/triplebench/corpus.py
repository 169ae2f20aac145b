"""End-to-end corpus generation: seed, subgraph, realize, paraphrase."""
from __future__ import annotations

import configparser
import os
from importlib import resources
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field, fields
from pathlib import Path
from typing import Mapping, Sequence

from . import __version__
from .errors import EmptyNeighborhoodError, GenerationExhaustedError, NoQualifyingPropertiesError, NoSeedsError
from .kb import KnowledgeBase, Term, expand_curie, load_ntriples
from .lexicon import Lexicon, load_lexicon
from .paraphrase import load_synonyms, paraphrase_sentences
from .realizer import assemble, realize_document
from .seeds import SeedSpec, candidate_pool, document_rng, select_seeds
from .subgraph import (
    DEFAULT_COVERAGE,
    PropertyCluster,
    SizeBounds,
    StrategyKind,
    Subgraph,
    build_property_clusters,
    generate_subgraph,
)

EXTRA_ATTEMPTS = 100


@dataclass(frozen=True)
class GenerationConfig:
    class_iris: tuple[str, ...]
    kb_path: str | None = None
    strategy: StrategyKind = StrategyKind.HYBRID
    document_count: int = 100
    bounds: SizeBounds = SizeBounds(1, 5)
    paraphrase: bool = False
    master_seed: int = 0
    language: str = "en"
    coverage_threshold: float = DEFAULT_COVERAGE
    lexicon_path: str | None = None
    synonym_path: str | None = None

    def __post_init__(self):
        object.__setattr__(self, "class_iris", tuple(sorted({expand_curie(c) for c in self.class_iris})))
        object.__setattr__(self, "strategy", StrategyKind(self.strategy))
        if not self.class_iris:
            raise ValueError("at least one class IRI is required")
        if self.document_count < 1:
            raise ValueError("document_count must be at least 1")
        if not 0 < self.coverage_threshold <= 1:
            raise ValueError("coverage_threshold must lie in (0, 1]")
        if not 0 <= self.master_seed < 2**64:
            raise ValueError("master_seed must be a 64-bit unsigned integer")
        if self.language != "en":
            raise ValueError("only English is supported")

    @classmethod
    def from_mapping(cls, values: Mapping[str, object]) -> "GenerationConfig":
        """Build a config from flat key/value pairs (config file or CLI flags)."""
        v = {_KEY_ALIASES.get(k.replace("-", "_").lower(), k): x for k, x in values.items() if x is not None}
        classes = v.pop("class_iris", ())
        if isinstance(classes, str):
            classes = classes.replace(",", " ").split()
        d_min = int(v.pop("d_min", 1))
        d_max = int(v.pop("d_max", 5))
        kwargs = {}
        for f in fields(cls):
            if f.name in v:
                kwargs[f.name] = v.pop(f.name)
        if v:
            raise ValueError(f"unknown configuration keys: {', '.join(sorted(v))}")
        for key in ("document_count", "master_seed"):
            if key in kwargs:
                kwargs[key] = int(kwargs[key])
        if "coverage_threshold" in kwargs:
            kwargs["coverage_threshold"] = float(kwargs["coverage_threshold"])
        if isinstance(kwargs.get("paraphrase"), str):
            kwargs["paraphrase"] = kwargs["paraphrase"].strip().lower() in ("1", "true", "yes", "on")
        return cls(class_iris=tuple(classes), bounds=SizeBounds(d_min, d_max), **kwargs)


_KEY_ALIASES = {
    "kb": "kb_path", "kbpath": "kb_path",
    "classes": "class_iris", "classiris": "class_iris",
    "docs": "document_count", "documentcount": "document_count",
    "dmin": "d_min", "dmax": "d_max",
    "seed": "master_seed", "masterseed": "master_seed",
    "lexicon": "lexicon_path", "lexiconpath": "lexicon_path",
    "synonyms": "synonym_path", "synonympath": "synonym_path",
    "coveragethreshold": "coverage_threshold",
}


def read_config_file(path: str | Path) -> dict[str, str]:
    """Flat ``key = value`` file; ``#`` comments, no sections."""
    parser = configparser.ConfigParser(interpolation=None, comment_prefixes=("#", ";"))
    parser.optionxform = str
    parser.read_string("[config]\n" + Path(path).read_text(encoding="utf-8"))
    return dict(parser["config"])


@dataclass(frozen=True)
class Document:
    id: str
    text: str
    annotations: tuple[tuple[int, int, str], ...]
    provenance: Subgraph | None = None
    truncated: bool = False


@dataclass
class Corpus:
    documents: list[Document]
    config: GenerationConfig | None = None
    generator_version: str = __version__
    failures: list[tuple[int, str]] = field(default_factory=list)

    def __len__(self) -> int:
        return len(self.documents)

    def __iter__(self):
        return iter(self.documents)


def document_id(index: int, count: int) -> str:
    return str(index).zfill(max(6, len(str(max(count - 1, 0)))))


@dataclass
class _Context:
    config: GenerationConfig
    kb: KnowledgeBase
    lexicon: Lexicon
    synonyms: dict[str, tuple[str, ...]] | None
    pool: list[Term]
    clusters: dict[str, list[PropertyCluster]]

    def clusters_for(self, seed: Term) -> list[PropertyCluster] | None:
        if self.config.strategy is not StrategyKind.SUMMARY:
            return None
        types = {t.value for t in self.kb.types_of(seed)}
        for cls in self.config.class_iris:
            if cls in types and cls in self.clusters:
                return self.clusters[cls]
        return []


def _build_context(config, kb, lexicon, synonyms) -> _Context:
    if kb is None:
        if config.kb_path is None:
            raise ValueError("no knowledge base given")
        kb = load_ntriples(config.kb_path)
    if lexicon is None:
        lexicon = load_lexicon(config.lexicon_path)
    if synonyms is None and config.paraphrase:
        path = config.synonym_path or resources.files("triplebench.data").joinpath("synonyms.tsv")
        synonyms = load_synonyms(path)
    pool = candidate_pool(kb, config.class_iris)
    if not pool:
        raise NoSeedsError(f"no instances of {', '.join(config.class_iris)}")
    clusters = {}
    if config.strategy is StrategyKind.SUMMARY:
        for cls in config.class_iris:
            try:
                clusters[cls] = build_property_clusters(kb, cls, config.coverage_threshold)
            except NoQualifyingPropertiesError:
                pass
    return _Context(config, kb, lexicon, synonyms, pool, clusters)


def _generate_document(ctx: _Context, index: int) -> Document | str:
    cfg = ctx.config
    gen = document_rng(cfg.master_seed, index)
    spec = SeedSpec(frozenset(cfg.class_iris), 1)
    last_error = "no attempt made"
    for _ in range(1 + EXTRA_ATTEMPTS):
        seed = select_seeds(ctx.kb, spec, gen, pool=ctx.pool)[0]
        try:
            sg = generate_subgraph(cfg.strategy, ctx.kb, seed, cfg.bounds, gen, ctx.clusters_for(seed))
        except EmptyNeighborhoodError as err:
            last_error = str(err)
            continue
        sentences = realize_document(sg, ctx.kb, ctx.lexicon, cfg.language)
        if cfg.paraphrase:
            sentences = paraphrase_sentences(sentences, ctx.kb, ctx.synonyms, gen, cfg.language)
        text, spans = assemble(sentences)
        return Document(document_id(index, cfg.document_count), text, tuple(spans), sg, sg.truncated)
    return last_error


_WORKER: _Context | None = None


def _init_worker(ctx: _Context) -> None:
    global _WORKER
    _WORKER = ctx


def _work(index: int) -> Document | str:
    return _generate_document(_WORKER, index)


def generate_corpus(
    config: GenerationConfig,
    kb: KnowledgeBase | None = None,
    lexicon: Lexicon | None = None,
    synonyms: dict[str, tuple[str, ...]] | None = None,
    jobs: int = 1,
    strict: bool = True,
) -> Corpus:
    """Generate ``config.document_count`` documents.

    Document ``i`` draws from its own random stream derived from
    ``(master_seed, i)``, so the corpus is identical for any ``jobs`` value.
    A slot whose seeds keep failing raises :class:`GenerationExhaustedError`,
    or is recorded in ``Corpus.failures`` when ``strict`` is false.
    """
    ctx = _build_context(config, kb, lexicon, synonyms)
    indices = range(config.document_count)
    if jobs is None or jobs < 1:
        jobs = os.cpu_count() or 1
    if jobs == 1:
        results = [_generate_document(ctx, i) for i in indices]
    else:
        chunk = max(1, config.document_count // (jobs * 8))
        with ProcessPoolExecutor(max_workers=jobs, initializer=_init_worker, initargs=(ctx,)) as ex:
            results = list(ex.map(_work, indices, chunksize=chunk))
    corpus = Corpus([], config)
    for i, r in zip(indices, results):
        if isinstance(r, Document):
            corpus.documents.append(r)
        elif strict:
            raise GenerationExhaustedError(f"document {i}: {r}")
        else:
            corpus.failures.append((i, r))
    return corpus


def generate_from_seed_list(
    seeds: Sequence[Term], kb: KnowledgeBase, strategy, bounds: SizeBounds, rng, lexicon=None
) -> list[Document]:
    """Realize one document per given seed; handy for fixtures and demos."""
    docs = []
    for i, seed in enumerate(seeds):
        sg = generate_subgraph(strategy, kb, seed, bounds, rng)
        text, spans = assemble(realize_document(sg, kb, lexicon))
        docs.append(Document(document_id(i, len(seeds)), text, tuple(spans), sg, sg.truncated))
    return docs
