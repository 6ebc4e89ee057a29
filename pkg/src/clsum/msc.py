"""Multi-sentence compression over word graphs.

Each cluster of similar sentences is fused on the target-language side:
keywords are extracted with a small collapsed-Gibbs LDA, the sentences are
laid over a shared word graph (chunks are atomic vertices, recurring words
merge), and candidate compressions are loop-free start-to-end paths scored
by total arc cohesion minus a keyword bonus per distinct keyword covered.
The best candidate is the one with the lowest length-normalized score,
compared in the log domain so large objectives cannot overflow.
"""

from __future__ import annotations

import hashlib
import heapq
import itertools
import math
import random
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .similarity import SentenceCluster

START_KEY = ("start",)
END_KEY = ("end",)


# ---------------------------------------------------------------------------
# Keyword extraction
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class KeywordSet:
    """Ranked keyword labels for one cluster."""

    labels: tuple[str, ...]

    def label_ids(self) -> dict[str, int]:
        return {label: i for i, label in enumerate(self.labels)}

    def __contains__(self, term: str) -> bool:
        return term in self.labels

    def __len__(self) -> int:
        return len(self.labels)

    def __iter__(self):
        return iter(self.labels)


def _content_terms(sentence) -> list[str]:
    return [
        t.lowercased
        for t in sentence.target_tokens
        if t.pos != "PUNCT" and not t.is_stopword
    ]


def lda_keywords(
    cluster: SentenceCluster,
    n_topics: int = 1,
    n_top: int = 5,
    iters: int = 200,
    seed: int = 0,
    doc_topic_prior: float = 0.1,
    topic_word_prior: float = 0.01,
) -> KeywordSet:
    """Keywords of a cluster via collapsed Gibbs sampling.

    The cluster's target-side sentences act as documents. After sampling,
    the dominant topic (largest total assignment count) supplies the
    *n_top* highest-probability terms. Fully deterministic for a fixed
    seed; an empty content vocabulary yields an empty keyword set.
    """
    if n_topics < 1:
        raise ValueError("n_topics must be >= 1")
    documents = [_content_terms(s) for s in cluster.members]
    vocab = sorted({term for doc in documents for term in doc})
    if not vocab:
        return KeywordSet(())
    word_id = {w: i for i, w in enumerate(vocab)}
    docs = [[word_id[w] for w in doc] for doc in documents if doc]

    n_words = len(vocab)
    rng = random.Random(seed)
    doc_topic = [[0] * n_topics for _ in docs]
    topic_word = [[0] * n_words for _ in range(n_topics)]
    topic_total = [0] * n_topics
    assignments = []
    for d, doc in enumerate(docs):
        zs = []
        for w in doc:
            z = rng.randrange(n_topics)
            zs.append(z)
            doc_topic[d][z] += 1
            topic_word[z][w] += 1
            topic_total[z] += 1
        assignments.append(zs)

    beta_sum = topic_word_prior * n_words
    for _ in range(iters):
        for d, doc in enumerate(docs):
            for i, w in enumerate(doc):
                z = assignments[d][i]
                doc_topic[d][z] -= 1
                topic_word[z][w] -= 1
                topic_total[z] -= 1

                cumulative = []
                total = 0.0
                for k in range(n_topics):
                    p = (doc_topic[d][k] + doc_topic_prior) * (
                        (topic_word[k][w] + topic_word_prior)
                        / (topic_total[k] + beta_sum)
                    )
                    total += p
                    cumulative.append(total)
                u = rng.random() * total
                z = next(k for k, c in enumerate(cumulative) if u < c)

                assignments[d][i] = z
                doc_topic[d][z] += 1
                topic_word[z][w] += 1
                topic_total[z] += 1

    dominant = max(range(n_topics), key=lambda k: (topic_total[k], -k))
    ranked = sorted(
        range(n_words), key=lambda w: (-topic_word[dominant][w], vocab[w])
    )
    top = [vocab[w] for w in ranked[: min(n_top, n_words)] if topic_word[dominant][w] > 0]
    return KeywordSet(tuple(top))


# ---------------------------------------------------------------------------
# Word graph
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Unit:
    """One atomic element of a sentence: a word, a chunk, or a boundary."""

    key: tuple
    forms: tuple[str, ...]
    poses: tuple[str, ...]
    is_stop: bool = False
    is_punct: bool = False

    @property
    def word_count(self) -> int:
        return sum(1 for p in self.poses if p != "PUNCT")


START_UNIT = Unit(START_KEY, (), ())
END_UNIT = Unit(END_KEY, (), ())


def sentence_units(sentence, use_chunks: bool = True) -> list[Unit]:
    """Decompose a sentence's target side into graph units.

    Chunks are atomic: their tokens collapse into a single unit keyed by
    the lowercased chunk text. Remaining tokens become word units keyed by
    (form, pos).
    """
    tokens = sentence.target_tokens
    chunk_start = {}
    if use_chunks:
        for chunk in sentence.target_chunks:
            chunk_start[chunk.token_span[0]] = chunk
    units: list[Unit] = []
    i = 0
    while i < len(tokens):
        chunk = chunk_start.get(i)
        if chunk is not None:
            lo, hi = chunk.token_span
            units.append(
                Unit(
                    ("chunk", chunk.text),
                    tuple(t.lowercased for t in tokens[lo:hi]),
                    tuple(t.pos for t in tokens[lo:hi]),
                )
            )
            i = hi
        else:
            tok = tokens[i]
            units.append(
                Unit(
                    ("word", tok.lowercased, tok.pos),
                    (tok.lowercased,),
                    (tok.pos,),
                    is_stop=tok.is_stopword,
                    is_punct=tok.pos == "PUNCT",
                )
            )
            i += 1
    return units


@dataclass
class Vertex:
    key: tuple
    copy: int
    unit: Unit
    occurrences: list[tuple[int, int]] = field(default_factory=list)
    labels: frozenset = frozenset()

    @property
    def vid(self) -> tuple:
        return (self.key, self.copy)

    @property
    def freq(self) -> int:
        return len(self.occurrences)


class WordGraph:
    """Directed word graph of one cluster.

    Every input sentence is a START-to-END path; arcs carry positive
    cohesion weights (lower = stronger association) and vertices carry the
    keyword labels they cover.
    """

    def __init__(self, sequences: list[list[Unit]]):
        self.sequences = sequences
        self.vertices: dict[tuple, Vertex] = {}
        self._succ: dict[tuple, set] = {}
        self.weights: dict[tuple, float] = {}
        self.paths: list[list[tuple]] = []
        self.start_id = (START_KEY, 0)
        self.end_id = (END_KEY, 0)

    # construction helpers -------------------------------------------------

    def copies(self, key: tuple) -> int:
        k = 0
        while (key, k) in self.vertices:
            k += 1
        return k

    def _new_vertex(self, key: tuple, unit: Unit, sent: int, pos: int) -> tuple:
        copy = self.copies(key)
        vertex = Vertex(key, copy, unit, [(sent, pos)])
        self.vertices[vertex.vid] = vertex
        return vertex.vid

    def _merge(self, vid: tuple, sent: int, pos: int) -> tuple:
        self.vertices[vid].occurrences.append((sent, pos))
        return vid

    def _sentences_of(self, vid: tuple) -> set[int]:
        return {s for s, _ in self.vertices[vid].occurrences}

    def _context(self, vid: tuple, side: str, content_only: bool = False) -> list[tuple]:
        """Keys of neighbors of *vid* in the underlying sentences."""
        out = []
        for sent, pos in self.vertices[vid].occurrences:
            neighbor = self.sequences[sent][pos - 1 if side == "left" else pos + 1]
            if content_only and neighbor.is_stop:
                continue
            out.append(neighbor.key)
        return out

    def add_edge(self, u: tuple, v: tuple) -> None:
        self._succ.setdefault(u, set()).add(v)

    def successors(self, u: tuple) -> list[tuple]:
        return sorted(self._succ.get(u, ()))

    def arcs(self) -> Iterable[tuple]:
        for (u, v), w in sorted(self.weights.items()):
            yield u, v, w

    @property
    def n_vertices(self) -> int:
        return len(self.vertices)

    @property
    def n_arcs(self) -> int:
        return len(self.weights)

    # weighting -------------------------------------------------------------

    def compute_weights(self) -> None:
        for u, targets in self._succ.items():
            for v in targets:
                self.weights[(u, v)] = self._cohesion(u, v)

    def _cohesion(self, u: tuple, v: tuple) -> float:
        occ_u = self.vertices[u].occurrences
        occ_v = self.vertices[v].occurrences
        freq_u, freq_v = len(occ_u), len(occ_v)
        inv_diff_sum = 0.0
        for sent in range(len(self.sequences)):
            pos_u = [p for s, p in occ_u if s == sent]
            pos_v = [p for s, p in occ_v if s == sent]
            gaps = [pv - pu for pu in pos_u for pv in pos_v if pv > pu]
            if gaps:
                inv_diff_sum += 1.0 / min(gaps)
        return ((freq_u + freq_v) / inv_diff_sum) / (freq_u * freq_v)

    def attach_labels(self, keywords: KeywordSet) -> None:
        labels = set(keywords.labels)
        for vertex in self.vertices.values():
            vertex.labels = frozenset(labels.intersection(vertex.unit.forms))


def build_word_graph(cluster: SentenceCluster, keywords: KeywordSet,
                     use_chunks: bool = True) -> WordGraph:
    """Lay the cluster's target sentences over a shared word graph.

    Mapping runs in four passes per sentence, mirroring the classic fusion
    construction: (1) content units with no or one same-key vertex, (2)
    ambiguous content units resolved by adjacency-context overlap then
    frequency, (3) stopwords, merged only on context overlap, (4)
    punctuation, merged only when both neighbors match. Two units of the
    same sentence never share a vertex.
    """
    sequences = [
        [START_UNIT] + sentence_units(s, use_chunks) + [END_UNIT]
        for s in cluster.members
    ]
    graph = WordGraph(sequences)
    graph.vertices[graph.start_id] = Vertex(START_KEY, 0, START_UNIT)
    graph.vertices[graph.end_id] = Vertex(END_KEY, 0, END_UNIT)

    for i, seq in enumerate(sequences):
        mapping: list[tuple | None] = [None] * len(seq)
        mapping[0] = graph._merge(graph.start_id, i, 0)
        mapping[-1] = graph._merge(graph.end_id, i, len(seq) - 1)

        is_content = [
            not (u.is_stop or u.is_punct) and u.key not in (START_KEY, END_KEY)
            for u in seq
        ]

        # 1. content units that map unambiguously
        for j, unit in enumerate(seq):
            if not is_content[j]:
                continue
            k = graph.copies(unit.key)
            if k == 0:
                mapping[j] = graph._new_vertex(unit.key, unit, i, j)
            elif k == 1:
                vid = (unit.key, 0)
                if i not in graph._sentences_of(vid):
                    mapping[j] = graph._merge(vid, i, j)
                else:
                    mapping[j] = graph._new_vertex(unit.key, unit, i, j)

        # 2. ambiguous content units: context overlap, then frequency
        for j, unit in enumerate(seq):
            if not is_content[j] or mapping[j] is not None:
                continue
            mapping[j] = _map_ambiguous(graph, seq, i, j, unit)

        # 3. stopwords: merge only on non-stopword context overlap
        for j, unit in enumerate(seq):
            if not unit.is_stop or unit.is_punct:
                continue
            mapping[j] = _map_guarded(graph, seq, i, j, unit,
                                      content_only=True, min_overlap=1)

        # 4. punctuation: merge only when both neighbors match
        for j, unit in enumerate(seq):
            if not unit.is_punct:
                continue
            mapping[j] = _map_guarded(graph, seq, i, j, unit,
                                      content_only=False, min_overlap=2)

        for j in range(1, len(seq)):
            graph.add_edge(mapping[j - 1], mapping[j])
        graph.paths.append(mapping)  # type: ignore[arg-type]

    graph.compute_weights()
    graph.attach_labels(keywords)
    return graph


def _overlap(graph: WordGraph, seq: list[Unit], vid: tuple, j: int,
             content_only: bool) -> int:
    prev_key = seq[j - 1].key
    next_key = seq[j + 1].key
    left = graph._context(vid, "left", content_only)
    right = graph._context(vid, "right", content_only)
    return left.count(prev_key) + right.count(next_key)


def _map_ambiguous(graph: WordGraph, seq, i: int, j: int, unit: Unit) -> tuple:
    k = graph.copies(unit.key)
    candidates = [
        (
            _overlap(graph, seq, (unit.key, c), j, content_only=False),
            graph.vertices[(unit.key, c)].freq,
            c,
        )
        for c in range(k)
    ]
    while candidates:
        best = max(candidates, key=lambda t: t[0])
        if best[0] == 0:
            best = max(candidates, key=lambda t: t[1])
        vid = (unit.key, best[2])
        if i not in graph._sentences_of(vid):
            return graph._merge(vid, i, j)
        candidates.remove(best)
    return graph._new_vertex(unit.key, unit, i, j)


def _map_guarded(graph: WordGraph, seq, i: int, j: int, unit: Unit,
                 content_only: bool, min_overlap: int) -> tuple:
    k = graph.copies(unit.key)
    if k == 0:
        return graph._new_vertex(unit.key, unit, i, j)
    scored = [
        (_overlap(graph, seq, (unit.key, c), j, content_only), c)
        for c in range(k)
    ]
    overlap, copy = max(scored, key=lambda t: t[0])
    vid = (unit.key, copy)
    if overlap >= min_overlap and i not in graph._sentences_of(vid):
        return graph._merge(vid, i, j)
    return graph._new_vertex(unit.key, unit, i, j)


# ---------------------------------------------------------------------------
# Scoring and enumeration
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Compression:
    """A fused target-language sentence with its path scores."""

    words: tuple[tuple[str, str], ...]  # (lowercased form, pos)
    objective: float
    normalized: float
    source_cluster: str

    @property
    def text(self) -> str:
        return " ".join(form for form, _ in self.words)

    @property
    def word_count(self) -> int:
        return sum(1 for _, pos in self.words if pos != "PUNCT")


def keyword_bonus(graph: WordGraph) -> float:
    """Geometric mean of all arc weights."""
    if not graph.weights:
        raise ValueError("graph has no arcs")
    # fsum keeps the mean independent of arc iteration order
    return math.exp(
        math.fsum(math.log(w) for w in graph.weights.values()) / len(graph.weights)
    )


def _path_words(graph: WordGraph, path: Sequence[tuple]) -> tuple:
    words = []
    for vid in path[1:-1]:
        unit = graph.vertices[vid].unit
        words.extend(zip(unit.forms, unit.poses))
    return tuple(words)


def enumerate_compressions(
    graph: WordGraph,
    K: int = 50,
    min_words: int = 8,
    require_verb: bool = True,
    cluster_id: str = "",
    enum_budget: int | None = None,
    max_expansions: int = 250_000,
) -> list[Compression]:
    """K best compressions by total cohesion minus the keyword bonus.

    Loop-free paths are enumerated best-first on cohesion weights, up to
    *enum_budget* completions (default 10*K), then rescored with the
    keyword term: objective = sum of arc weights - bonus * (number of
    distinct keyword labels covered). Candidates shorter than *min_words*
    words or lacking a verb are discarded. Enumeration also halts once no
    remaining path can beat the K kept so far, which makes small graphs
    exact. Returned in ascending objective order.
    """
    if enum_budget is None:
        enum_budget = 10 * K
    if not graph.weights:
        return []
    bonus = keyword_bonus(graph)
    n_labels = len({l for v in graph.vertices.values() for l in v.labels})

    accepted: list[tuple[float, int, list[tuple]]] = []
    counter = itertools.count()
    heap: list[tuple[float, int, list[tuple]]] = [(0.0, next(counter), [graph.start_id])]
    completions = 0
    expansions = 0

    while heap and completions < enum_budget and expansions < max_expansions:
        cost, _, path = heapq.heappop(heap)
        expansions += 1
        if len(accepted) >= K and cost - bonus * n_labels > accepted[K - 1][0]:
            break
        tip = path[-1]
        if tip == graph.end_id:
            completions += 1
            labels = set()
            has_verb = False
            n_words = 0
            for vid in path[1:-1]:
                vertex = graph.vertices[vid]
                labels |= vertex.labels
                n_words += vertex.unit.word_count
                has_verb = has_verb or "VERB" in vertex.unit.poses
            if n_words < max(min_words, 1) or (require_verb and not has_verb):
                continue
            objective = cost - bonus * len(labels)
            accepted.append((objective, n_words, path))
            accepted.sort(key=lambda t: t[0])
            del accepted[K:]
            continue
        for succ in graph.successors(tip):
            if succ in path:
                continue
            heapq.heappush(
                heap,
                (cost + graph.weights[(tip, succ)], next(counter), path + [succ]),
            )

    return [
        Compression(
            words=_path_words(graph, path),
            objective=objective,
            normalized=objective - math.log(n_words),
            source_cluster=cluster_id,
        )
        for objective, n_words, path in accepted
    ]


def best_compression(candidates: Sequence[Compression]) -> Compression:
    """Candidate with the lowest length-normalized score.

    The literal score is exp(objective)/word_count; comparison happens in
    the log domain (objective - ln word_count) so it never overflows. Ties
    go to the shorter text, then lexicographically.
    """
    if not candidates:
        raise ValueError("no candidates")
    return min(candidates, key=lambda c: (c.normalized, c.word_count, c.text))


# ---------------------------------------------------------------------------
# Cluster-level driver
# ---------------------------------------------------------------------------

def stable_seed(*parts) -> int:
    """Deterministic 63-bit seed from string-able parts."""
    digest = hashlib.sha256(":".join(str(p) for p in parts).encode("utf-8")).digest()
    return int.from_bytes(digest[:8], "big") >> 1


def compress_clusters(
    clusters: Sequence[SentenceCluster],
    k_best: int = 50,
    min_words: int = 8,
    require_verb: bool = True,
    use_chunks: bool = True,
    lda_topics: int = 1,
    lda_top: int = 5,
    lda_iters: int = 200,
    master_seed: int = 0,
    enum_budget: int | None = None,
) -> dict[str, Compression]:
    """Best compression per cluster; clusters with no valid path are absent.

    Per-cluster seeds derive from the master seed and the cluster id, so
    parallel and serial runs agree.
    """
    result: dict[str, Compression] = {}
    for cluster in clusters:
        seed = stable_seed(master_seed, cluster.cluster_id)
        keywords = lda_keywords(
            cluster, n_topics=lda_topics, n_top=lda_top, iters=lda_iters, seed=seed
        )
        graph = build_word_graph(cluster, keywords, use_chunks=use_chunks)
        candidates = enumerate_compressions(
            graph,
            K=k_best,
            min_words=min_words,
            require_verb=require_verb,
            cluster_id=cluster.cluster_id,
            enum_budget=enum_budget,
        )
        if candidates:
            result[cluster.cluster_id] = best_compression(candidates)
    return result


def dump_graph(graph: WordGraph) -> str:
    """Plain-text dump of vertices (with labels) and weighted arcs."""
    lines = ["# vertices"]
    for vid in sorted(graph.vertices):
        vertex = graph.vertices[vid]
        name = _vertex_name(vid)
        labels = ",".join(sorted(vertex.labels))
        lines.append(f"{name}\tfreq={vertex.freq}\tlabels={labels}")
    lines.append("# arcs")
    for u, v, w in graph.arcs():
        lines.append(f"{_vertex_name(u)}\t{_vertex_name(v)}\t{w:.6f}")
    return "\n".join(lines) + "\n"


def _vertex_name(vid: tuple) -> str:
    key, copy = vid
    if key == START_KEY:
        return "START"
    if key == END_KEY:
        return "END"
    if key[0] == "chunk":
        return f"chunk:{key[1].replace(' ', '_')}#{copy}"
    return f"{key[1]}/{key[2]}#{copy}"
