"""Cross-language compressive text summarization.

Clusters similar sentences across a bilingual corpus, fuses each cluster
into a short compression over a word graph, ranks candidates with a
coupled bilingual fixed point, and emits budgeted summaries plus ROUGE
evaluation tables.
"""

__version__ = "0.1.0"

from .config import PipelineConfig
from .corpus import load_topics, tokenize, mark_chunks, corpus_stats
from .similarity import cosine, cluster_similar
from .summarizer import run_system, SYSTEMS

__all__ = [
    "PipelineConfig",
    "load_topics",
    "tokenize",
    "mark_chunks",
    "corpus_stats",
    "cosine",
    "cluster_similar",
    "run_system",
    "SYSTEMS",
    "__version__",
]
