"""Subgraph sampling around a seed resource.

Five strategies are provided: star (outgoing triples), symmetric star
(outgoing and incoming), path (a random walk over resource-valued edges),
hybrid (a coin-flip mix of star and path steps) and summary (triples picked
by property clusters mined from a class's instances).
"""
from __future__ import annotations

import enum
from dataclasses import dataclass, field
from functools import lru_cache
from itertools import combinations
from typing import Sequence

import numpy as np

from .errors import EmptyNeighborhoodError, NoQualifyingPropertiesError
from .kb import RDF_TYPE, RDFS_LABEL, KnowledgeBase, Term, Triple
from .seeds import as_generator

FNV_OFFSET = 0xCBF29CE484222325
FNV_PRIME = 0x100000001B3
MAX_RETRIES = 10
DEFAULT_COVERAGE = 0.60


class StrategyKind(str, enum.Enum):
    STAR = "star"
    SYMMETRIC_STAR = "symstar"
    PATH = "path"
    HYBRID = "hybrid"
    SUMMARY = "summary"


@dataclass(frozen=True)
class SizeBounds:
    d_min: int
    d_max: int

    def __post_init__(self):
        if not 1 <= self.d_min <= self.d_max:
            raise ValueError(f"need 1 <= d_min <= d_max, got ({self.d_min}, {self.d_max})")


@dataclass(frozen=True)
class Subgraph:
    seed: Term
    triples: tuple[Triple, ...]
    strategy: StrategyKind
    cluster_groups: tuple[frozenset[str], ...] | None = None
    truncated: bool = False

    @property
    def cluster_properties(self) -> frozenset[str] | None:
        if self.cluster_groups is None:
            return None
        return frozenset().union(*self.cluster_groups)

    def __len__(self) -> int:
        return len(self.triples)


@dataclass(frozen=True)
class PropertyCluster:
    class_iri: str
    properties: frozenset[str]
    coverage: dict[str, float] = field(hash=False, compare=False)
    frequency: dict[str, int] = field(hash=False, compare=False)

    @property
    def total_frequency(self) -> int:
        return sum(self.frequency[p] for p in self.properties)


# -- ordering ------------------------------------------------------------------

def fnv1a_64(data: bytes) -> int:
    h = FNV_OFFSET
    for byte in data:
        h ^= byte
        h = (h * FNV_PRIME) & 0xFFFFFFFFFFFFFFFF
    return h


@lru_cache(maxsize=None)
def _triple_key(t: Triple) -> tuple[int, str]:
    line = t.n3()
    return fnv1a_64(line.encode("utf-8")), line


def order_triples(triples: Sequence[Triple]) -> list[Triple]:
    """Descending FNV-1a-64 of the canonical line; ties fall back to the line text."""
    return sorted(triples, key=_triple_key, reverse=True)


# -- neighbourhoods --------------------------------------------------------------

def _usable(t: Triple) -> bool:
    return not t.has_blank and t.predicate.value != RDFS_LABEL


def _memo(kb: KnowledgeBase, key: tuple, build) -> tuple[Triple, ...]:
    # the KB is immutable, so neighbourhoods can be cached on it
    cache = kb.__dict__.setdefault("_neighbourhoods", {})
    if key not in cache:
        cache[key] = tuple(build())
    return cache[key]


def outgoing(kb: KnowledgeBase, s: Term) -> tuple[Triple, ...]:
    return _memo(
        kb, ("out", s),
        lambda: order_triples([t for t in kb.triples_with_subject(s) if _usable(t)]),
    )


def incident(kb: KnowledgeBase, s: Term) -> tuple[Triple, ...]:
    def build():
        both = dict.fromkeys(kb.triples_with_subject(s))
        both.update(dict.fromkeys(kb.triples_with_object(s)))
        return order_triples([t for t in both if _usable(t)])

    return _memo(kb, ("inc", s), build)


def far_end(t: Triple, node: Term) -> Term:
    return t.object if t.subject == node else t.subject


def hops(kb: KnowledgeBase, node: Term) -> tuple[Triple, ...]:
    """Resource-to-resource edges leaving ``node`` in either direction."""
    return _memo(
        kb, ("hop", node),
        lambda: [
            t for t in incident(kb, node)
            if t.predicate.value != RDF_TYPE
            and t.subject != t.object
            and far_end(t, node).is_iri
        ],
    )


def _draw_size(gen: np.random.Generator, bounds: SizeBounds, cap: int | None = None) -> int:
    hi = bounds.d_max if cap is None else min(bounds.d_max, cap)
    if hi < bounds.d_min:
        return hi
    return int(gen.integers(bounds.d_min, hi + 1))


def _sample_ordered(gen, pool: Sequence[Triple], bounds: SizeBounds) -> tuple[tuple[Triple, ...], bool]:
    d = _draw_size(gen, bounds, cap=len(pool))
    picked = sorted(gen.choice(len(pool), size=d, replace=False))
    return tuple(pool[i] for i in picked), d < bounds.d_min


# -- strategies ------------------------------------------------------------------

def generate_star(kb: KnowledgeBase, seed: Term, bounds: SizeBounds, rng) -> Subgraph:
    pool = outgoing(kb, seed)
    if not pool:
        raise EmptyNeighborhoodError(f"{seed} has no outgoing triples")
    triples, truncated = _sample_ordered(as_generator(rng), pool, bounds)
    return Subgraph(seed, triples, StrategyKind.STAR, truncated=truncated)


def generate_symmetric_star(kb: KnowledgeBase, seed: Term, bounds: SizeBounds, rng) -> Subgraph:
    pool = incident(kb, seed)
    if not pool:
        raise EmptyNeighborhoodError(f"{seed} has no incident triples")
    triples, truncated = _sample_ordered(as_generator(rng), pool, bounds)
    return Subgraph(seed, triples, StrategyKind.SYMMETRIC_STAR, truncated=truncated)


def _walk(kb, seed, d, gen) -> list[Triple]:
    node, visited, chain = seed, {seed}, []
    while len(chain) < d:
        cands = [t for t in hops(kb, node) if far_end(t, node) not in visited]
        if not cands:
            break
        t = cands[int(gen.integers(len(cands)))]
        chain.append(t)
        node = far_end(t, node)
        visited.add(node)
    return chain


def _retrying(walk, bounds: SizeBounds) -> tuple[list[Triple], bool]:
    best: list[Triple] = []
    for _ in range(1 + MAX_RETRIES):
        chain = walk()
        if len(chain) > len(best):
            best = chain
        if len(best) >= bounds.d_min:
            break
    return best, len(best) < bounds.d_min


def generate_path(kb: KnowledgeBase, seed: Term, bounds: SizeBounds, rng) -> Subgraph:
    """Random walk of up to ``d`` hops that never revisits a resource.

    A walk that dead-ends below ``d_min`` is restarted from the seed up to
    ``MAX_RETRIES`` times; the longest walk is kept and flagged as truncated.
    """
    if not hops(kb, seed):
        raise EmptyNeighborhoodError(f"{seed} has no resource-valued edges")
    gen = as_generator(rng)
    d = _draw_size(gen, bounds)
    chain, truncated = _retrying(lambda: _walk(kb, seed, d, gen), bounds)
    return Subgraph(seed, tuple(chain), StrategyKind.PATH, truncated=truncated)


def _hybrid_walk(kb, seed, d, gen) -> list[Triple]:
    focus = seed
    reached = [seed]
    seen = {seed}
    used: set[Triple] = set()
    chain: list[Triple] = []
    budget = 8 * d + 8
    while len(chain) < d and budget > 0:
        budget -= 1
        heads = gen.random() < 0.5
        star = [t for t in outgoing(kb, focus) if t not in used]
        path = [
            (t, far_end(t, n))
            for n in reached
            for t in hops(kb, n)
            if t not in used and far_end(t, n) not in seen
        ]
        if not star and not path:
            break
        if heads:
            if not star:
                continue
            t = star[int(gen.integers(len(star)))]
            if t.object.is_iri and t.object not in seen:
                seen.add(t.object)
                reached.append(t.object)
        else:
            if not path:
                continue
            t, focus = path[int(gen.integers(len(path)))]
            seen.add(focus)
            reached.append(focus)
        used.add(t)
        chain.append(t)
    return chain


def generate_hybrid(kb: KnowledgeBase, seed: Term, bounds: SizeBounds, rng) -> Subgraph:
    """Mix star and path steps with a fair coin.

    Heads adds an unused outgoing triple of the current focus.  Tails walks one
    hop from any resource already reached and moves the focus there.  If the
    coin picks a step that is impossible the coin is flipped again.
    """
    if not outgoing(kb, seed) and not hops(kb, seed):
        raise EmptyNeighborhoodError(f"{seed} has no usable triples")
    gen = as_generator(rng)
    d = _draw_size(gen, bounds)
    chain, truncated = _retrying(lambda: _hybrid_walk(kb, seed, d, gen), bounds)
    return Subgraph(seed, tuple(chain), StrategyKind.HYBRID, truncated=truncated)


# -- summary graphs ------------------------------------------------------------

def build_property_clusters(
    kb: KnowledgeBase, class_iri: str, coverage_threshold: float = DEFAULT_COVERAGE
) -> list[PropertyCluster]:
    """Cluster the well-covered properties of a class by co-occurrence.

    Properties used by at least ``coverage_threshold`` of the class instances
    become nodes; an edge weight counts the instances using both properties.
    Clusters are merged greedily, highest mean inter-cluster weight first,
    while that mean exceeds half the mean weight over all property pairs.
    """
    instances = [r for r in kb.instances_of_classes([class_iri]) if r.is_iri]
    if not instances:
        raise NoQualifyingPropertiesError(f"class {class_iri} has no instances")
    users: dict[str, set[int]] = {}
    for i, r in enumerate(instances):
        for t in kb.triples_with_subject(r):
            if _usable(t) and t.predicate.value != RDF_TYPE:
                users.setdefault(t.predicate.value, set()).add(i)
    n = len(instances)
    frequency = {p: len(u) for p, u in users.items()}
    coverage = {p: f / n for p, f in frequency.items()}
    props = sorted(p for p in users if coverage[p] >= coverage_threshold - 1e-12)
    if not props:
        raise NoQualifyingPropertiesError(
            f"no property of {class_iri} reaches coverage {coverage_threshold}"
        )

    weight = {(a, b): len(users[a] & users[b]) for a, b in combinations(props, 2)}
    cut = (sum(weight.values()) / len(weight)) / 2 if weight else 0.0

    def w(a, b):
        return weight[(a, b)] if a < b else weight[(b, a)]

    clusters = [[p] for p in props]
    while len(clusters) > 1:
        best, best_pair = None, None
        for i, j in combinations(range(len(clusters)), 2):
            a, b = clusters[i], clusters[j]
            mean = sum(w(x, y) for x in a for y in b) / (len(a) * len(b))
            if best is None or mean > best:
                best, best_pair = mean, (i, j)
        if best <= cut:
            break
        i, j = best_pair
        clusters[i] = sorted(clusters[i] + clusters[j])
        del clusters[j]

    out = [
        PropertyCluster(
            class_iri,
            frozenset(c),
            {p: coverage[p] for p in c},
            {p: frequency[p] for p in c},
        )
        for c in clusters
    ]
    out.sort(key=lambda c: (-c.total_frequency, sorted(c.properties)))
    return out


def generate_summary(
    kb: KnowledgeBase,
    seed: Term,
    bounds: SizeBounds,
    rng,
    clusters: Sequence[PropertyCluster],
) -> Subgraph:
    """Take the seed's triples cluster by cluster, most frequent cluster first.

    Within a cluster, triples follow property frequency (ties by IRI), which
    is also the order the merged sentence states them in.
    """
    gen = as_generator(rng)
    d = _draw_size(gen, bounds)
    own = outgoing(kb, seed)
    picked: list[Triple] = []
    groups: list[frozenset[str]] = []
    for cluster in clusters:
        # most frequent property first; hash order among a property's triples
        ts = sorted(
            (t for t in own if t.predicate.value in cluster.properties),
            key=lambda t: (-cluster.frequency.get(t.predicate.value, 0), t.predicate.value),
        )
        if not ts:
            continue
        take = ts[: d - len(picked)]
        picked.extend(take)
        groups.append(frozenset(t.predicate.value for t in take))
        if len(picked) >= d:
            break
    if not picked:
        raise EmptyNeighborhoodError(f"{seed} has no triples in any property cluster")
    return Subgraph(
        seed,
        tuple(picked),
        StrategyKind.SUMMARY,
        cluster_groups=tuple(groups),
        truncated=len(picked) < bounds.d_min,
    )


def generate_subgraph(
    kind: StrategyKind | str,
    kb: KnowledgeBase,
    seed: Term,
    bounds: SizeBounds,
    rng,
    clusters: Sequence[PropertyCluster] | None = None,
) -> Subgraph:
    kind = StrategyKind(kind)
    if kind is StrategyKind.SUMMARY:
        if clusters is None:
            raise ValueError("the summary strategy needs property clusters")
        return generate_summary(kb, seed, bounds, rng, clusters)
    return _GENERATORS[kind](kb, seed, bounds, rng)


_GENERATORS = {
    StrategyKind.STAR: generate_star,
    StrategyKind.SYMMETRIC_STAR: generate_symmetric_star,
    StrategyKind.PATH: generate_path,
    StrategyKind.HYBRID: generate_hybrid,
}

