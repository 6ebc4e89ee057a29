"""Sparse term vectors, cosine similarity and joint-language clustering."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Iterable, Mapping, Sequence


class TermVector:
    """Sparse term-frequency vector over lowercased non-stopword terms.

    Counts are strictly positive; the Euclidean norm is cached at
    construction. Immutable by convention.
    """

    __slots__ = ("entries", "norm_sq", "norm")

    def __init__(self, entries: Mapping[str, float]):
        self.entries = {t: c for t, c in entries.items() if c > 0}
        self.norm_sq = sum(c * c for c in self.entries.values())
        self.norm = math.sqrt(self.norm_sq)

    @classmethod
    def from_tokens(cls, tokens) -> "TermVector":
        counts: dict[str, float] = {}
        for tok in tokens:
            if tok.pos == "PUNCT" or tok.is_stopword:
                continue
            counts[tok.lowercased] = counts.get(tok.lowercased, 0) + 1
        return cls(counts)

    @classmethod
    def from_terms(cls, terms: Iterable[str]) -> "TermVector":
        counts: dict[str, float] = {}
        for term in terms:
            counts[term] = counts.get(term, 0) + 1
        return cls(counts)

    def __bool__(self) -> bool:
        return bool(self.entries)

    def __len__(self) -> int:
        return len(self.entries)

    def __repr__(self) -> str:
        return f"TermVector({self.entries!r})"


def cosine(a: TermVector, b: TermVector) -> float:
    """Cosine similarity in [0, 1]; 0 when either vector is empty."""
    if not a.entries or not b.entries:
        return 0.0
    if len(b.entries) < len(a.entries):
        a, b = b, a
    dot = sum(c * b.entries.get(t, 0.0) for t, c in a.entries.items())
    if dot == 0.0:
        return 0.0
    # sqrt of the product (not product of sqrts) keeps identical integer
    # vectors at exactly 1.0
    return min(1.0, dot / math.sqrt(a.norm_sq * b.norm_sq))


def centroid(vectors: Sequence[TermVector]) -> TermVector:
    """Entrywise mean of term vectors."""
    if not vectors:
        return TermVector({})
    sums: dict[str, float] = {}
    for vec in vectors:
        for term, count in vec.entries.items():
            sums[term] = sums.get(term, 0.0) + count
    n = len(vectors)
    return TermVector({t: c / n for t, c in sums.items()})


@dataclass
class SentenceCluster:
    """A group of mutually similar bilingual sentences (normally 2-3)."""

    cluster_id: str
    topic: str
    members: list = field(default_factory=list)

    @property
    def member_ids(self) -> list:
        return [s.sid for s in self.members]

    def __len__(self) -> int:
        return len(self.members)


def joint_similarity(a, b) -> float:
    """Similarity of two bilingual sentences: a pair must be close on both
    sides, so the joint score is the minimum of the two cosines."""
    src = cosine(a.source_vector, b.source_vector)
    tgt = cosine(a.target_vector, b.target_vector)
    return min(src, tgt)


def cluster_similar(sentences: Sequence, theta: float) -> list[SentenceCluster]:
    """Cluster sentences whose joint similarity reaches *theta*.

    Builds, per topic, an undirected graph with an edge between two
    sentences iff joint_similarity >= theta, and returns its connected
    components of size >= 2 (singletons are not clusters). Deterministic:
    clusters and members follow input order.
    """
    if not 0 < theta <= 1:
        raise ValueError(f"theta must be in (0, 1], got {theta}")

    by_topic: dict[str, list] = {}
    for sent in sentences:
        by_topic.setdefault(sent.sid.topic, []).append(sent)

    clusters: list[SentenceCluster] = []
    for topic in sorted(by_topic):
        group = by_topic[topic]
        n = len(group)
        parent = list(range(n))

        def find(x: int) -> int:
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for i in range(n):
            for j in range(i + 1, n):
                if joint_similarity(group[i], group[j]) >= theta:
                    ri, rj = find(i), find(j)
                    if ri != rj:
                        parent[max(ri, rj)] = min(ri, rj)

        components: dict[int, list] = {}
        for i in range(n):
            components.setdefault(find(i), []).append(group[i])
        k = 0
        for root in sorted(components):
            members = components[root]
            if len(members) >= 2:
                clusters.append(SentenceCluster(f"{topic}:c{k}", topic, members))
                k += 1
    return clusters
