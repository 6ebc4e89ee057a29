"""Bilingual corpus loading, tokenization, POS tagging and chunk marking.

A corpus is a directory of topics; each topic holds sentence-aligned
documents (one sentence per line) plus reference summaries in the target
language::

    corpus_root/<topic>/<doc>.<lang>.txt
    corpus_root/<topic>/ref<k>.<lang>.txt

Lines may optionally carry inline POS tags in ``token/TAG`` form using the
fixed tagset {ADJ, NP, NC, VERB, OTHER, PUNCT}; untagged lines go through a
small deterministic tagger (closed-class lexicon, capitalization, suffix
heuristics) so the pipeline runs offline.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from pathlib import Path
from typing import NamedTuple, Sequence

from .similarity import TermVector
from .stopwords import ABBREVIATIONS, stopwords_for, verbs_for

POS_TAGS = ("ADJ", "NP", "NC", "VERB", "OTHER", "PUNCT")

_TOKEN_RE = re.compile(r"\w+(?:['’\-]\w+)*|[^\w\s]")
_TAGGED_ITEM_RE = re.compile(r"^(.+)/(ADJ|NP|NC|VERB|OTHER|PUNCT)$")
_SENTENCE_SPLIT_RE = re.compile(r"(?<=[.!?])\s+")

_ADJ_SUFFIXES = {
    "en": ("ous", "ful", "ive", "less", "able", "ible", "ish", "ical"),
    "fr": ("eux", "euse", "ique", "ive", "elle", "aire"),
}
_VERB_SUFFIXES = {
    "en": ("ed", "ing", "ize", "ise"),
    "fr": ("ait", "aient", "èrent", "era", "eront", "erait"),
}


class CorpusError(Exception):
    """Raised on malformed corpus layout or content."""


class SentenceId(NamedTuple):
    topic: str
    document: str
    index: int


@dataclass(frozen=True)
class Token:
    surface: str
    lowercased: str
    pos: str
    is_stopword: bool


@dataclass(frozen=True)
class Chunk:
    """Maximal noun-group span; ``token_span`` is half-open."""

    token_span: tuple[int, int]
    text: str


@dataclass
class BilingualSentence:
    sid: SentenceId
    source_tokens: list[Token]
    target_tokens: list[Token]
    target_chunks: list[Chunk]
    source_vector: TermVector
    target_vector: TermVector

    @property
    def target_text(self) -> str:
        return " ".join(t.surface for t in self.target_tokens)

    @property
    def target_word_count(self) -> int:
        return sum(1 for t in self.target_tokens if t.pos != "PUNCT")


@dataclass
class Topic:
    id: str
    documents: list[list[BilingualSentence]]
    reference_summaries: list[str]

    def sentences(self) -> list[BilingualSentence]:
        return [s for doc in self.documents for s in doc]


# ---------------------------------------------------------------------------
# Tokenization and tagging
# ---------------------------------------------------------------------------

def split_sentences(text: str) -> list[str]:
    """Split on terminal punctuation, keeping guarded abbreviations intact."""
    parts = [p for p in _SENTENCE_SPLIT_RE.split(text.strip()) if p]
    merged: list[str] = []
    for part in parts:
        if merged and _ends_with_abbreviation(merged[-1]):
            merged[-1] = merged[-1] + " " + part
        else:
            merged.append(part)
    return merged


def _ends_with_abbreviation(fragment: str) -> bool:
    words = fragment.rsplit(None, 1)
    return bool(words) and words[-1].lower() in ABBREVIATIONS


def _tag_word(lower: str, surface: str, position: int, lang: str) -> str:
    if lower in verbs_for(lang):
        return "VERB"
    if lower in stopwords_for(lang):
        return "OTHER"
    if surface[:1].isupper() and position > 0:
        return "NP"
    for suffix in _ADJ_SUFFIXES.get(lang, ()):
        if lower.endswith(suffix) and len(lower) > len(suffix) + 1:
            return "ADJ"
    for suffix in _VERB_SUFFIXES.get(lang, ()):
        if lower.endswith(suffix) and len(lower) > len(suffix) + 1:
            return "VERB"
    if lower.endswith("ly") and lang == "en":
        return "OTHER"
    return "NC"


def tokenize_sentence(line: str, lang: str) -> list[Token]:
    """Tokenize one pre-split sentence; accepts raw or token/TAG lines."""
    items = line.split()
    if items and all(_TAGGED_ITEM_RE.match(it) for it in items):
        return _parse_tagged(items, lang)
    stop = stopwords_for(lang)
    tokens: list[Token] = []
    for match in _TOKEN_RE.finditer(line):
        surface = match.group(0)
        lower = surface.casefold()
        if re.match(r"\w", surface):
            pos = _tag_word(lower, surface, len(tokens), lang)
        else:
            pos = "PUNCT"
        tokens.append(Token(surface, lower, pos, lower in stop))
    return tokens


def _parse_tagged(items: list[str], lang: str) -> list[Token]:
    stop = stopwords_for(lang)
    tokens = []
    for item in items:
        m = _TAGGED_ITEM_RE.match(item)
        surface, pos = m.group(1), m.group(2)
        lower = surface.casefold()
        tokens.append(Token(surface, lower, pos, lower in stop))
    return tokens


def tokenize(text: str, lang: str) -> list[list[Token]]:
    """Split raw text into sentences and tokenize each one."""
    return [tokenize_sentence(s, lang) for s in split_sentences(text)]


# ---------------------------------------------------------------------------
# Chunk marking
# ---------------------------------------------------------------------------

def mark_chunks(tokens: Sequence[Token], target_lang: str) -> list[Chunk]:
    """Mark maximal noun groups, greedy longest match left to right.

    English noun groups are (ADJ)* (NP|NC)+; French additionally takes
    trailing adjectives: (ADJ)* (NP|NC)+ (ADJ)*. Every chunk contains at
    least one NP/NC token and spans never overlap.
    """
    if target_lang not in ("en", "fr"):
        raise CorpusError(f"no chunk pattern for language {target_lang!r}")
    trailing_adj = target_lang == "fr"
    chunks: list[Chunk] = []
    i = 0
    n = len(tokens)
    while i < n:
        j = i
        while j < n and tokens[j].pos == "ADJ":
            j += 1
        if j < n and tokens[j].pos in ("NP", "NC"):
            while j < n and tokens[j].pos in ("NP", "NC"):
                j += 1
            if trailing_adj:
                while j < n and tokens[j].pos == "ADJ":
                    j += 1
            text = " ".join(t.lowercased for t in tokens[i:j])
            chunks.append(Chunk((i, j), text))
            i = j
        else:
            i += 1
    return chunks


# ---------------------------------------------------------------------------
# Loading
# ---------------------------------------------------------------------------

def _read_source_lines(path: Path) -> list[str]:
    lines = [ln.strip() for ln in path.read_text(encoding="utf-8").splitlines()]
    return [ln for ln in lines if ln]


def make_sentence(
    sid: SentenceId,
    source_line: str,
    target_line: str,
    source_lang: str,
    target_lang: str,
) -> BilingualSentence:
    source_tokens = tokenize_sentence(source_line, source_lang)
    target_tokens = tokenize_sentence(target_line, target_lang)
    if not source_tokens or not target_tokens:
        raise CorpusError(f"empty sentence at {sid}")
    return BilingualSentence(
        sid=sid,
        source_tokens=source_tokens,
        target_tokens=target_tokens,
        target_chunks=mark_chunks(target_tokens, target_lang),
        source_vector=TermVector.from_tokens(source_tokens),
        target_vector=TermVector.from_tokens(target_tokens),
    )


def load_topics(corpus_root, source_lang: str, target_lang: str, provider=None) -> list[Topic]:
    """Load every topic under *corpus_root*, in file-name order.

    The target side comes from *provider* (default: the stored
    ``<doc>.<target_lang>.txt`` files next to the source documents).
    Documents must align 1:1 between the two sides.
    """
    from .translation import FileBackedProvider, translate_document

    root = Path(corpus_root)
    if not root.is_dir():
        raise CorpusError(f"corpus root is not a directory: {root}")
    if provider is None:
        provider = FileBackedProvider()

    topics = []
    for topic_dir in sorted(p for p in root.iterdir() if p.is_dir()):
        suffix = f".{source_lang}.txt"
        doc_files = sorted(
            p for p in topic_dir.iterdir()
            if p.name.endswith(suffix) and not p.name.startswith("ref")
        )
        ref_files = sorted(topic_dir.glob(f"ref*.{target_lang}.txt"))
        if not doc_files:
            raise CorpusError(f"topic {topic_dir.name!r} has no {source_lang!r} documents")
        if not ref_files:
            raise CorpusError(f"topic {topic_dir.name!r} has no {target_lang!r} references")

        documents = []
        for doc_file in doc_files:
            doc_name = doc_file.name[: -len(suffix)]
            source_lines = _read_source_lines(doc_file)
            if not source_lines:
                raise CorpusError(f"empty document: {doc_file}")
            target_lines = translate_document(
                source_lines, source_lang, target_lang, provider, doc_path=doc_file
            )
            sentences = [
                make_sentence(
                    SentenceId(topic_dir.name, doc_name, idx),
                    src_line,
                    tgt_line,
                    source_lang,
                    target_lang,
                )
                for idx, (src_line, tgt_line) in enumerate(zip(source_lines, target_lines))
            ]
            documents.append(sentences)

        references = [p.read_text(encoding="utf-8").strip() for p in ref_files]
        topics.append(Topic(topic_dir.name, documents, references))
    return topics


# ---------------------------------------------------------------------------
# Statistics
# ---------------------------------------------------------------------------

@dataclass
class SideStats:
    n_words: int = 0
    n_vocabulary: int = 0
    n_sentences: int = 0
    n_chunks: int = 0
    n_chunk_tokens: int = 0
    vocabulary: set = field(default_factory=set, repr=False)

    @property
    def mean_sentence_length(self) -> float:
        return self.n_words / self.n_sentences if self.n_sentences else 0.0

    @property
    def mean_chunk_length(self) -> float:
        return self.n_chunk_tokens / self.n_chunks if self.n_chunks else 0.0


@dataclass
class CorpusStats:
    source: SideStats
    target: SideStats


def corpus_stats(topics: Sequence[Topic]) -> CorpusStats:
    """Word, vocabulary, sentence and chunk counts per language side.

    Word counts exclude punctuation; vocabulary counts distinct lowercased
    non-punctuation surfaces; chunk statistics are target-side only.
    """
    source = SideStats()
    target = SideStats()
    for topic in topics:
        for sentence in topic.sentences():
            for side, tokens in ((source, sentence.source_tokens),
                                 (target, sentence.target_tokens)):
                side.n_sentences += 1
                for tok in tokens:
                    if tok.pos == "PUNCT":
                        continue
                    side.n_words += 1
                    side.vocabulary.add(tok.lowercased)
            for chunk in sentence.target_chunks:
                target.n_chunks += 1
                target.n_chunk_tokens += chunk.token_span[1] - chunk.token_span[0]
    source.n_vocabulary = len(source.vocabulary)
    target.n_vocabulary = len(target.vocabulary)
    return CorpusStats(source=source, target=target)
