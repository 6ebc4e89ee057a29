"""Candidate pools, greedy budgeted selection, and the five summarizers.

A candidate pool contains one unit per original sentence except where a
cluster was fused: the cluster's compression replaces all of its member
sentences (its source-side vector is the centroid of the members'). Units
are scored by one of the rankers, then greedily packed into a 250-word
summary, skipping anything too similar to what is already selected.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .config import PipelineConfig
from .corpus import Topic
from .msc import Compression, compress_clusters
from .rank import build_matrices, corank, pagerank, simfusion
from .similarity import SentenceCluster, TermVector, centroid, cluster_similar, cosine
from .stopwords import stopwords_for

SYSTEMS = (
    "early",
    "late",
    "simfusion",
    "corank",
    "our-approach",
    "our-approach-no-chunks",
)


@dataclass
class CandidateUnit:
    kind: str  # "sentence" | "compression"
    text: str
    word_count: int
    target_vector: TermVector
    source_vector: TermVector
    origin: str
    score: float = 0.0


@dataclass
class Summary:
    system: str
    units: list[CandidateUnit] = field(default_factory=list)
    word_count: int = 0

    @property
    def text(self) -> str:
        return "\n".join(u.text for u in self.units)

    def metadata(self) -> list[dict]:
        return [
            {
                "kind": u.kind,
                "origin": u.origin,
                "score": u.score,
                "words": u.word_count,
            }
            for u in self.units
        ]


def _sentence_unit(sentence) -> CandidateUnit:
    return CandidateUnit(
        kind="sentence",
        text=sentence.target_text,
        word_count=sentence.target_word_count,
        target_vector=sentence.target_vector,
        source_vector=sentence.source_vector,
        origin="/".join(map(str, sentence.sid)),
    )


def _compression_unit(compression: Compression, cluster: SentenceCluster,
                      target_lang: str) -> CandidateUnit:
    stop = stopwords_for(target_lang)
    terms = [
        form for form, pos in compression.words
        if pos != "PUNCT" and form not in stop
    ]
    return CandidateUnit(
        kind="compression",
        text=compression.text,
        word_count=compression.word_count,
        target_vector=TermVector.from_terms(terms),
        source_vector=centroid([s.source_vector for s in cluster.members]),
        origin=cluster.cluster_id,
    )


def build_candidate_pool(sentences, clusters, compressions: dict[str, Compression],
                         target_lang: str) -> list[CandidateUnit]:
    """One unit per sentence, with compressed clusters collapsed.

    A cluster that produced a compression contributes a single compression
    unit at the position of its first member; all other sentences pass
    through unchanged, so every original sentence is represented exactly
    once.
    """
    cluster_of = {}
    for cluster in clusters:
        if cluster.cluster_id in compressions:
            for sid in cluster.member_ids:
                cluster_of[sid] = cluster
    pool: list[CandidateUnit] = []
    emitted: set[str] = set()
    for sentence in sentences:
        cluster = cluster_of.get(sentence.sid)
        if cluster is None:
            pool.append(_sentence_unit(sentence))
        elif cluster.cluster_id not in emitted:
            emitted.add(cluster.cluster_id)
            pool.append(
                _compression_unit(compressions[cluster.cluster_id], cluster, target_lang)
            )
    return pool


def greedy_select(ranked: list[CandidateUnit], budget: int = 250,
                  redundancy_theta: float = 0.5, system: str = "") -> Summary:
    """Greedy budgeted selection with a redundancy filter.

    Units are scanned by descending score (ties: longer unit first, then
    input order). A unit is skipped when it is too similar on the target
    side to anything already selected, or when it would overflow the word
    budget; scanning continues to the end of the list either way.
    """
    order = sorted(
        range(len(ranked)),
        key=lambda i: (-ranked[i].score, -ranked[i].word_count, i),
    )
    summary = Summary(system=system)
    for i in order:
        unit = ranked[i]
        if summary.word_count + unit.word_count > budget:
            continue
        if any(
            cosine(unit.target_vector, chosen.target_vector) >= redundancy_theta
            for chosen in summary.units
        ):
            continue
        summary.units.append(unit)
        summary.word_count += unit.word_count
    return summary


def run_system(topic: Topic, system: str, config: PipelineConfig) -> Summary:
    """Produce one summary for *topic* with the named system.

    early ranks translated (target-side) similarities, late ranks
    source-side similarities and emits the stored translations, simfusion
    fuses both sides into one PageRank, corank couples them, and the
    our-approach variants run corank over the compression-augmented pool.
    """
    if system not in SYSTEMS:
        raise ValueError(
            f"unknown system {system!r}; valid systems: {', '.join(SYSTEMS)}"
        )
    sentences = topic.sentences()
    if system in ("our-approach", "our-approach-no-chunks"):
        clusters = cluster_similar(sentences, config.theta_cluster)
        compressions = compress_clusters(
            clusters,
            k_best=config.k_best,
            min_words=config.min_words,
            require_verb=config.require_verb,
            use_chunks=config.chunking and system == "our-approach",
            lda_topics=config.lda_topics,
            lda_top=config.lda_top,
            lda_iters=config.lda_iters,
            master_seed=config.seed,
        )
        pool = build_candidate_pool(sentences, clusters, compressions, config.target_lang)
    else:
        pool = [_sentence_unit(s) for s in sentences]

    matrices = build_matrices(pool)
    if system == "early":
        scores = pagerank(matrices.target_norm)
    elif system == "late":
        scores = pagerank(matrices.source_norm)
    elif system == "simfusion":
        scores = simfusion(matrices)
    else:
        scores = corank(matrices, alpha=config.alpha, beta=config.beta).v
    for unit, score in zip(pool, np.asarray(scores)):
        unit.score = float(score)
    return greedy_select(
        pool, budget=config.budget, redundancy_theta=config.theta_redundancy,
        system=system,
    )
