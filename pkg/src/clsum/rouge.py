"""Self-contained ROUGE-1 / ROUGE-2 / ROUGE-SU4 scoring.

Texts are lowercased and stripped of punctuation before counting. Clipped
n-gram (or skip-bigram) overlap gives per-reference precision and recall;
multi-reference scores aggregate by arithmetic mean (optionally max).
No stemming, no stopword removal, no jackknifing, so numbers are
internally comparable across systems but not bit-compatible with any
historical toolkit build.
"""

from __future__ import annotations

import re
from collections import Counter
from dataclasses import dataclass
from typing import Iterable, Mapping, Sequence

_WORD_RE = re.compile(r"\w+", re.UNICODE)

BEGIN_MARKER = "<s>"


@dataclass(frozen=True)
class RougeScore:
    precision: float
    recall: float
    f1: float
    metric: str


def _f1(precision: float, recall: float) -> float:
    if precision + recall == 0:
        return 0.0
    return 2 * precision * recall / (precision + recall)


def words(text: str) -> list[str]:
    return _WORD_RE.findall(text.lower())


def ngram_counts(tokens: Sequence[str], n: int) -> Counter:
    """Multiset of contiguous n-grams; empty when the text is shorter than n."""
    if n < 1:
        raise ValueError("n must be >= 1")
    return Counter(tuple(tokens[i:i + n]) for i in range(len(tokens) - n + 1))


def skip_bigram_counts(tokens: Sequence[str], max_gap: int = 4) -> Counter:
    """Skip-bigrams with at most *max_gap* intervening tokens, plus
    unigrams realized as pairs with a sentence-begin marker."""
    counts: Counter = Counter()
    for i, tok in enumerate(tokens):
        counts[(BEGIN_MARKER, tok)] += 1
        for j in range(i + 1, min(i + max_gap + 2, len(tokens))):
            counts[(tok, tokens[j])] += 1
    return counts


def _clipped_score(candidate: Counter, reference: Counter, metric: str) -> RougeScore:
    overlap = sum(min(count, reference[gram]) for gram, count in candidate.items())
    cand_total = sum(candidate.values())
    ref_total = sum(reference.values())
    precision = overlap / cand_total if cand_total else 0.0
    recall = overlap / ref_total if ref_total else 0.0
    return RougeScore(precision, recall, _f1(precision, recall), metric)


def _aggregate(scores: list[RougeScore], metric: str, aggregate: str) -> RougeScore:
    if aggregate == "max":
        return max(scores, key=lambda s: s.f1)
    if aggregate != "mean":
        raise ValueError(f"unknown aggregation {aggregate!r}")
    n = len(scores)
    return RougeScore(
        sum(s.precision for s in scores) / n,
        sum(s.recall for s in scores) / n,
        sum(s.f1 for s in scores) / n,
        metric,
    )


def rouge_n(candidate: str, references: Sequence[str], n: int,
            aggregate: str = "mean") -> RougeScore:
    """N-gram overlap against one or more references."""
    if not references:
        raise ValueError("need at least one reference")
    metric = f"R-{n}"
    cand = ngram_counts(words(candidate), n)
    scores = [
        _clipped_score(cand, ngram_counts(words(ref), n), metric)
        for ref in references
    ]
    return _aggregate(scores, metric, aggregate)


def rouge_su4(candidate: str, references: Sequence[str],
              aggregate: str = "mean") -> RougeScore:
    """Skip-bigram (gap <= 4) plus unigram overlap against references."""
    if not references:
        raise ValueError("need at least one reference")
    cand = skip_bigram_counts(words(candidate))
    scores = [
        _clipped_score(cand, skip_bigram_counts(words(ref)), "R-SU4")
        for ref in references
    ]
    return _aggregate(scores, "R-SU4", aggregate)


METRICS = ("R-1", "R-2", "R-SU4")

GAP = "--"


@dataclass
class EvaluationReport:
    """Per-system mean f-scores over topics, one row per system."""

    systems: list[str]
    topics: list[str]
    cells: dict  # (system, metric) -> float | None

    def to_text(self) -> str:
        width = max((len(s) for s in self.systems), default=6) + 2
        header = "system".ljust(width) + "".join(m.rjust(9) for m in METRICS)
        lines = [header]
        for system in self.systems:
            row = system.ljust(width)
            for metric in METRICS:
                value = self.cells.get((system, metric))
                row += (GAP if value is None else f"{value:.4f}").rjust(9)
            lines.append(row)
        return "\n".join(lines) + "\n"

    def to_csv(self) -> str:
        lines = ["system," + ",".join(METRICS)]
        for system in self.systems:
            cells = [
                GAP if self.cells.get((system, metric)) is None
                else f"{self.cells[(system, metric)]:.4f}"
                for metric in METRICS
            ]
            lines.append(system + "," + ",".join(cells))
        return "\n".join(lines) + "\n"


def score_summary(candidate: str, references: Sequence[str]) -> dict:
    return {
        "R-1": rouge_n(candidate, references, 1).f1,
        "R-2": rouge_n(candidate, references, 2).f1,
        "R-SU4": rouge_su4(candidate, references).f1,
    }


def evaluate_systems(summaries: Mapping, topics: Iterable) -> EvaluationReport:
    """Mean f-scores per system over topics.

    *summaries* maps (system, topic_id) to summary text; topics supply the
    reference summaries. A missing (system, topic) cell leaves an explicit
    gap in the report instead of silently shrinking the mean.
    """
    topic_list = list(topics)
    topic_ids = [t.id for t in topic_list]
    references = {t.id: t.reference_summaries for t in topic_list}
    systems = sorted({system for system, _ in summaries})

    cells: dict = {}
    for system in systems:
        per_metric: dict[str, list[float]] = {m: [] for m in METRICS}
        complete = True
        for topic_id in topic_ids:
            text = summaries.get((system, topic_id))
            if text is None:
                complete = False
                continue
            for metric, value in score_summary(text, references[topic_id]).items():
                per_metric[metric].append(value)
        for metric in METRICS:
            # any missing topic turns the cell into an explicit gap
            cells[(system, metric)] = (
                sum(per_metric[metric]) / len(per_metric[metric])
                if complete and per_metric[metric]
                else None
            )
    return EvaluationReport(systems=systems, topics=topic_ids, cells=cells)
