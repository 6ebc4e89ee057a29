import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from clsum.corpus import (
    CorpusError,
    Token,
    Topic,
    corpus_stats,
    load_topics,
    mark_chunks,
    tokenize,
    tokenize_sentence,
)
from clsum.translation import AlignmentError

from conftest import DATA, make_sentence, make_tokens
from oracles import chunk_spans_reference


# ---------------------------------------------------------------------------
# tokenize
# ---------------------------------------------------------------------------

def test_tokenize_simple_sentence():
    sentences = tokenize("The cat sat.", "en")
    assert len(sentences) == 1
    tokens = sentences[0]
    assert len(tokens) == 4
    assert [t.surface for t in tokens] == ["The", "cat", "sat", "."]
    assert tokens[-1].pos == "PUNCT"


def test_tokenize_empty():
    assert tokenize("", "en") == []
    assert tokenize("   \n  ", "en") == []


def test_tokenize_abbreviation_guard():
    # hand segmentation: "Dr." must not end the first sentence
    sentences = tokenize("Dr. Smith arrived. He left.", "en")
    assert len(sentences) == 2
    first = [t.lowercased for t in sentences[0]]
    second = [t.lowercased for t in sentences[1]]
    assert "smith" in first and "arrived" in first
    assert second[0] == "he"


def test_tokenize_lowercases_and_flags_stopwords():
    (tokens,) = tokenize("The Cat.", "en")
    assert tokens[0].lowercased == "the"
    assert tokens[0].is_stopword
    assert not tokens[1].is_stopword


def test_tagged_line_parsing():
    tokens = tokenize_sentence("Le/OTHER chat/NC dormait/VERB ./PUNCT", "fr")
    assert [t.pos for t in tokens] == ["OTHER", "NC", "VERB", "PUNCT"]
    assert tokens[1].surface == "chat"
    assert tokens[0].is_stopword


def test_naive_tagger_heuristics():
    (tokens,) = tokenize("She quickly visited beautiful Paris yesterday.", "en")
    by_surface = {t.surface: t.pos for t in tokens}
    assert by_surface["visited"] == "VERB"  # -ed suffix
    assert by_surface["beautiful"] == "ADJ"  # -ful suffix
    assert by_surface["Paris"] == "NP"  # capitalized, not sentence-initial
    assert by_surface["She"] == "OTHER"  # closed class


# ---------------------------------------------------------------------------
# mark_chunks
# ---------------------------------------------------------------------------

def tags_to_tokens(tags):
    return make_tokens([f"w{i}" for i in range(len(tags))], tags)


def test_chunk_english_adj_noun_run():
    tokens = tags_to_tokens(["ADJ", "NC", "NC", "VERB"])
    chunks = mark_chunks(tokens, "en")
    assert [c.token_span for c in chunks] == [(0, 3)]


def test_chunk_french_trailing_adjective():
    tokens = tags_to_tokens(["NC", "ADJ", "VERB", "ADJ"])
    chunks = mark_chunks(tokens, "fr")
    assert [c.token_span for c in chunks] == [(0, 2)]


def test_chunk_requires_nominal_head():
    assert mark_chunks(tags_to_tokens(["VERB", "OTHER"]), "en") == []
    assert mark_chunks(tags_to_tokens(["ADJ", "ADJ"]), "fr") == []


def test_chunk_unsupported_language():
    with pytest.raises(CorpusError):
        mark_chunks(tags_to_tokens(["NC"]), "de")


def test_chunk_text_joins_lowercased_surfaces():
    tokens = make_tokens(["Red", "Cat"], ["ADJ", "NC"])
    (chunk,) = mark_chunks(tokens, "en")
    assert chunk.text == "red cat"


@given(
    tags=st.lists(st.sampled_from(["ADJ", "NP", "NC", "VERB", "OTHER", "PUNCT"]),
                  max_size=30),
    lang=st.sampled_from(["en", "fr"]),
)
@settings(max_examples=300, deadline=None)
def test_chunk_matches_regex_oracle(tags, lang):
    tokens = tags_to_tokens(tags)
    spans = [c.token_span for c in mark_chunks(tokens, lang)]
    assert spans == chunk_spans_reference(tags, trailing_adj=(lang == "fr"))
    # idempotence over the pos sequence: rerunning changes nothing
    assert spans == [c.token_span for c in mark_chunks(tokens, lang)]
    # spans are disjoint, sorted, and every chunk has a nominal head
    for (a, b), nxt in zip(spans, spans[1:] + [None]):
        assert b > a
        assert any(t in ("NP", "NC") for t in tags[a:b])
        if nxt is not None:
            assert b <= nxt[0]


# ---------------------------------------------------------------------------
# load_topics
# ---------------------------------------------------------------------------

def test_load_mini_corpus(mini_topics):
    assert [t.id for t in mini_topics] == ["topic1", "topic2"]
    sentences = [s for t in mini_topics for s in t.sentences()]
    assert len(sentences) == 12
    for topic in mini_topics:
        assert len(topic.documents) == 2
        assert len(topic.reference_summaries) == 1
    first = mini_topics[0].documents[0][0]
    assert first.sid == ("topic1", "d1", 0)
    assert [t.pos for t in first.target_tokens] == ["OTHER", "NC", "ADJ", "VERB", "PUNCT"]
    assert first.target_chunks[0].text == "chat rouge"


def test_load_misaligned_counts(tmp_path):
    topic = tmp_path / "t1"
    topic.mkdir()
    (topic / "d1.en.txt").write_text("one.\ntwo.\nthree.\nfour.\nfive.\n")
    (topic / "d1.fr.txt").write_text("un.\ndeux.\ntrois.\nquatre.\n")
    (topic / "ref1.fr.txt").write_text("un resume.\n")
    with pytest.raises(AlignmentError) as err:
        load_topics(tmp_path, "en", "fr")
    assert "5" in str(err.value) and "4" in str(err.value)
    assert "d1.fr.txt" in str(err.value)


def test_load_missing_translation_file(tmp_path):
    topic = tmp_path / "t1"
    topic.mkdir()
    (topic / "d1.en.txt").write_text("one.\n")
    (topic / "ref1.fr.txt").write_text("un.\n")
    from clsum.translation import TranslationError

    with pytest.raises(TranslationError) as err:
        load_topics(tmp_path, "en", "fr")
    assert "d1.fr.txt" in str(err.value)


def test_load_empty_document(tmp_path):
    topic = tmp_path / "t1"
    topic.mkdir()
    (topic / "d1.en.txt").write_text("\n\n")
    (topic / "d1.fr.txt").write_text("\n")
    (topic / "ref1.fr.txt").write_text("un.\n")
    with pytest.raises(CorpusError) as err:
        load_topics(tmp_path, "en", "fr")
    assert "empty" in str(err.value)


def test_load_requires_references(tmp_path):
    topic = tmp_path / "t1"
    topic.mkdir()
    (topic / "d1.en.txt").write_text("one.\n")
    (topic / "d1.fr.txt").write_text("un.\n")
    with pytest.raises(CorpusError) as err:
        load_topics(tmp_path, "en", "fr")
    assert "reference" in str(err.value)


def test_load_empty_root(tmp_path):
    assert load_topics(tmp_path, "en", "fr") == []


def test_alignment_invariant(mini_topics, pipeline_topics):
    for topic in list(mini_topics) + list(pipeline_topics):
        for doc in topic.documents:
            for sentence in doc:
                assert sentence.source_tokens and sentence.target_tokens


# ---------------------------------------------------------------------------
# corpus_stats
# ---------------------------------------------------------------------------

def one_sentence_topic(words, tags):
    sentence = make_sentence(words, tags, topic="t", doc="d")
    return Topic("t", [[sentence]], ["ref"])


def test_stats_single_sentence():
    stats = corpus_stats([one_sentence_topic(["a", "a", "b", "."],
                                             ["NC", "NC", "NC", "PUNCT"])])
    assert stats.source.n_words == 3
    assert stats.source.n_vocabulary == 2
    assert stats.source.mean_sentence_length == 3.0


def test_stats_mini_hand_tally(mini_topics):
    # frozen hand count of the bundled mini fixture
    stats = corpus_stats(mini_topics)
    assert stats.source.n_words == 42
    assert stats.source.n_vocabulary == 38
    assert stats.source.n_sentences == 12
    assert stats.source.mean_sentence_length == 3.5
    assert stats.target.n_words == 51
    assert stats.target.n_vocabulary == 40
    assert stats.target.n_sentences == 12
    assert stats.target.mean_sentence_length == 4.25
    assert stats.target.n_chunks == 15
    assert stats.target.mean_chunk_length == 1.2


def test_stats_word_count_identity(mini_topics, pipeline_topics):
    # mean length times sentence count reproduces the word count exactly
    for topics in (mini_topics, pipeline_topics):
        stats = corpus_stats(topics)
        for side_name in ("source", "target"):
            side = getattr(stats, side_name)
            assert side.mean_sentence_length == side.n_words / side.n_sentences
            hand_total = sum(
                sum(1 for tok in getattr(s, f"{side_name}_tokens") if tok.pos != "PUNCT")
                for t in topics
                for s in t.sentences()
            )
            assert side.n_words == hand_total


def test_stats_empty():
    stats = corpus_stats([])
    assert stats.source.n_words == 0
    assert stats.source.mean_sentence_length == 0.0
    assert stats.target.mean_chunk_length == 0.0
