from pathlib import Path

import pytest

from clsum.corpus import BilingualSentence, SentenceId, Token, load_topics, mark_chunks
from clsum.similarity import SentenceCluster, TermVector
from clsum.translation import IdentityProvider

DATA = Path(__file__).parent / "data"
GOLDEN = DATA / "golden"


def make_tokens(words, tags, lang="en"):
    from clsum.stopwords import stopwords_for

    stop = stopwords_for(lang)
    return [
        Token(w, w.casefold(), tag, w.casefold() in stop)
        for w, tag in zip(words, tags)
    ]


def make_sentence(words, tags=None, idx=0, topic="t", doc="d", lang="en",
                  src_words=None, src_tags=None, chunk_lang=None):
    """Bilingual sentence from explicit word/tag lists; source defaults to
    the target side (identity)."""
    if tags is None:
        tags = ["NC"] * len(words)
    tgt = make_tokens(words, tags, lang)
    if src_words is None:
        src = tgt
    else:
        src = make_tokens(src_words, src_tags or ["NC"] * len(src_words), lang)
    chunks = mark_chunks(tgt, chunk_lang) if chunk_lang else []
    return BilingualSentence(
        SentenceId(topic, doc, idx),
        src,
        tgt,
        chunks,
        TermVector.from_tokens(src),
        TermVector.from_tokens(tgt),
    )


def make_cluster(sentence_specs, cluster_id="t:c0", topic="t", chunk_lang=None):
    """Cluster from a list of (words, tags) pairs."""
    members = [
        make_sentence(words, tags, idx=i, topic=topic, chunk_lang=chunk_lang)
        for i, (words, tags) in enumerate(sentence_specs)
    ]
    return SentenceCluster(cluster_id, topic, members)


@pytest.fixture(scope="session")
def mini_topics():
    return load_topics(DATA / "mini", "en", "fr")


@pytest.fixture(scope="session")
def pipeline_topics():
    return load_topics(DATA / "pipeline", "en", "en", IdentityProvider())


@pytest.fixture
def identity_config():
    from clsum.config import PipelineConfig

    return PipelineConfig(
        source_lang="en", target_lang="en", provider="identity"
    ).validate()
