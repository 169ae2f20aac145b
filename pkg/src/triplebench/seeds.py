"""Seed selection under class restrictions.

Randomness comes from numpy's PCG64 bit generator.  Per-document streams are
derived with ``SeedSequence(master_seed, spawn_key=(index,))`` so documents
can be generated in any order or in parallel and still match.
"""
from __future__ import annotations

import warnings
from dataclasses import dataclass

import numpy as np

from .errors import NoSeedsError
from .kb import IRI, KnowledgeBase, Term

RNG_ALGORITHM = "PCG64"


@dataclass(frozen=True)
class RngState:
    seed: int
    algorithm: str = RNG_ALGORITHM

    def __post_init__(self):
        if not 0 <= self.seed < 2**64:
            raise ValueError("seed must be a 64-bit unsigned integer")
        if self.algorithm != RNG_ALGORITHM:
            raise ValueError(f"unsupported RNG algorithm {self.algorithm!r}")

    def generator(self) -> np.random.Generator:
        return np.random.Generator(np.random.PCG64(self.seed))


def document_rng(master_seed: int, index: int) -> np.random.Generator:
    """Independent stream for document ``index`` of a corpus."""
    ss = np.random.SeedSequence(master_seed, spawn_key=(index,))
    return np.random.Generator(np.random.PCG64(ss))


def as_generator(rng: RngState | np.random.Generator | int) -> np.random.Generator:
    """Accept a Generator, an RngState or a bare integer seed.

    Anything else exposing ``random`` and ``integers`` is passed through, which
    lets tests script the draws.
    """
    if isinstance(rng, np.random.Generator):
        return rng
    if hasattr(rng, "integers") and hasattr(rng, "random"):
        return rng
    if isinstance(rng, RngState):
        return rng.generator()
    return RngState(int(rng)).generator()


@dataclass(frozen=True)
class SeedSpec:
    class_iris: frozenset[str]
    count: int = 1

    def __post_init__(self):
        object.__setattr__(self, "class_iris", frozenset(self.class_iris))
        if not self.class_iris:
            raise ValueError("SeedSpec needs at least one class IRI")
        if self.count < 1:
            raise ValueError("SeedSpec.count must be positive")


class SeedPoolWarning(UserWarning):
    pass


def candidate_pool(kb: KnowledgeBase, class_iris) -> list[Term]:
    # blank nodes cannot be verbalized
    return [r for r in kb.instances_of_classes(IRI(c) for c in class_iris) if r.is_iri]


def select_seeds(kb: KnowledgeBase, spec: SeedSpec, rng, pool: list[Term] | None = None) -> list[Term]:
    """Draw ``spec.count`` seeds uniformly, without replacement while possible."""
    if pool is None:
        pool = candidate_pool(kb, spec.class_iris)
    if not pool:
        raise NoSeedsError(f"no instances of {sorted(spec.class_iris)}")
    gen = as_generator(rng)
    n = len(pool)
    if spec.count <= n:
        idx = gen.choice(n, size=spec.count, replace=False)
        return [pool[i] for i in idx]
    warnings.warn(
        f"requested {spec.count} seeds from a pool of {n}; drawing the rest with replacement",
        SeedPoolWarning,
        stacklevel=2,
    )
    first = [pool[i] for i in gen.permutation(n)]
    rest = [pool[i] for i in gen.integers(0, n, size=spec.count - n)]
    return first + rest
