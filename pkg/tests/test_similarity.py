import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from clsum.similarity import (
    TermVector,
    centroid,
    cluster_similar,
    cosine,
    joint_similarity,
)

from conftest import make_sentence
from oracles import connected_components_reference

counts = st.dictionaries(
    st.text(alphabet="abcdef", min_size=1, max_size=3),
    st.integers(min_value=1, max_value=9),
    max_size=6,
)


# ---------------------------------------------------------------------------
# cosine
# ---------------------------------------------------------------------------

def test_cosine_identical():
    v = TermVector({"cat": 1, "sat": 1})
    assert cosine(v, v) == 1.0


def test_cosine_half_overlap():
    # analytic: 1 / (sqrt(2) * sqrt(2))
    a = TermVector({"a": 1, "b": 1})
    b = TermVector({"a": 1, "c": 1})
    assert cosine(a, b) == pytest.approx(0.5)


def test_cosine_empty():
    assert cosine(TermVector({}), TermVector({"a": 3})) == 0.0
    assert cosine(TermVector({}), TermVector({})) == 0.0


@given(a=counts, b=counts)
@settings(max_examples=200, deadline=None)
def test_cosine_symmetric_and_bounded(a, b):
    va, vb = TermVector(a), TermVector(b)
    value = cosine(va, vb)
    assert value == cosine(vb, va)
    assert 0.0 <= value <= 1.0


@given(a=counts, b=counts, scale=st.integers(min_value=1, max_value=50))
@settings(max_examples=200, deadline=None)
def test_cosine_scale_invariant(a, b, scale):
    va, vb = TermVector(a), TermVector(b)
    scaled = TermVector({t: c * scale for t, c in a.items()})
    assert cosine(scaled, vb) == pytest.approx(cosine(va, vb), abs=1e-12)


def test_cosine_positive_multiple_is_one():
    a = TermVector({"x": 2, "y": 4})
    b = TermVector({"x": 3, "y": 6})
    assert cosine(a, b) == pytest.approx(1.0)


def test_term_vector_norm_cached():
    v = TermVector({"a": 3, "b": 4})
    assert v.norm == 5.0


def test_term_vector_drops_zero_counts():
    v = TermVector({"a": 0, "b": 2})
    assert "a" not in v.entries


def test_centroid_entrywise_mean():
    a = TermVector({"x": 2, "y": 1})
    b = TermVector({"x": 4})
    c = centroid([a, b])
    assert c.entries == {"x": 3.0, "y": 0.5}


# ---------------------------------------------------------------------------
# cluster_similar
# ---------------------------------------------------------------------------

def sentences_from_terms(term_lists, topic="t"):
    return [
        make_sentence(terms, ["NC"] * len(terms), idx=i, topic=topic)
        for i, terms in enumerate(term_lists)
    ]


def test_two_identical_pairs_form_cluster():
    sents = sentences_from_terms([["storm", "coast"], ["storm", "coast"]])
    clusters = cluster_similar(sents, 0.6)
    assert len(clusters) == 1
    assert len(clusters[0].members) == 2


def test_all_dissimilar_yields_nothing():
    sents = sentences_from_terms([["aa", "bb"], ["cc", "dd"], ["ee", "ff"]])
    assert cluster_similar(sents, 0.6) == []


def test_theta_validation():
    with pytest.raises(ValueError):
        cluster_similar([], 0.0)
    with pytest.raises(ValueError):
        cluster_similar([], 1.5)


def test_five_sentence_fixture_matches_closure_oracle():
    # vectors chosen so the similarity structure is a chain plus an island
    sents = sentences_from_terms(
        [
            ["alpha", "beta", "gamma"],
            ["alpha", "beta", "delta"],
            ["beta", "delta", "epsilon"],
            ["zeta", "eta"],
            ["zeta", "eta", "theta"],
        ]
    )
    theta = 0.6
    n = len(sents)
    adjacency = [
        [i != j and joint_similarity(sents[i], sents[j]) >= theta for j in range(n)]
        for i in range(n)
    ]
    expected = [
        {sents[i].sid for i in comp}
        for comp in connected_components_reference(n, adjacency)
        if len(comp) >= 2
    ]
    got = [set(c.member_ids) for c in cluster_similar(sents, theta)]
    assert sorted(map(sorted, got)) == sorted(map(sorted, expected))
    # the fixture really exercises both a merge and an exclusion
    assert len(got) == 2


def test_clusters_are_disjoint_with_min_size():
    sents = sentences_from_terms(
        [["a", "b"], ["a", "b"], ["a", "c"], ["d", "e"], ["x", "y"]]
    )
    clusters = cluster_similar(sents, 0.5)
    seen = set()
    for cluster in clusters:
        assert len(cluster.members) >= 2
        for sid in cluster.member_ids:
            assert sid not in seen
            seen.add(sid)


def test_clustering_is_per_topic():
    a = sentences_from_terms([["same", "words"]], topic="t1")
    b = sentences_from_terms([["same", "words"]], topic="t2")
    b[0] = make_sentence(["same", "words"], ["NC", "NC"], idx=0, topic="t2")
    assert cluster_similar(a + b, 0.6) == []


@given(
    data=st.lists(
        st.lists(st.sampled_from(["a", "b", "c", "d", "e"]), min_size=1, max_size=4),
        min_size=2,
        max_size=8,
    ),
    lo=st.floats(min_value=0.1, max_value=0.5),
    hi=st.floats(min_value=0.5, max_value=1.0),
)
@settings(max_examples=100, deadline=None)
def test_raising_theta_only_splits_clusters(data, lo, hi):
    sents = sentences_from_terms(data)
    coarse = cluster_similar(sents, lo)
    fine = cluster_similar(sents, max(lo, hi))
    coarse_of = {}
    for idx, cluster in enumerate(coarse):
        for sid in cluster.member_ids:
            coarse_of[sid] = idx
    for cluster in fine:
        homes = {coarse_of.get(sid) for sid in cluster.member_ids}
        assert len(homes) == 1 and None not in homes
