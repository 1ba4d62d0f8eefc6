import itertools

import pytest
from hypothesis import given, strategies as st

from convka import models
from convka.catoid import (
    MoebiusViolation,
    TableCatoid,
    check_catoid_axioms,
    check_decompose2_consistency,
    check_moebius,
    check_saturated_chain,
    is_functional,
    is_local,
)


def word_splits(w):
    """Oracle: every way to cut a word into a prefix/suffix pair."""
    return [(w[:i], w[i:]) for i in range(len(w) + 1)]


def splits_into_parts(w, n):
    """Oracle: cuts of w into exactly n nonempty parts, in order."""
    if n == 0:
        return [()] if w == "" else []
    out = []
    for cuts in itertools.combinations(range(1, len(w)), n - 1):
        bounds = (0,) + cuts + (len(w),)
        parts = tuple(w[bounds[i]:bounds[i + 1]] for i in range(n))
        if all(parts):
            out.append(parts)
    return out if w else []


def test_decompose2_matches_split_oracle(words4):
    for w in words4.elements():
        assert list(words4.decompose2(w)) == sorted(word_splits(w))


@given(st.text(alphabet="ab", max_size=4))
def test_decompose2_words_hypothesis(w):
    C = models.free_monoid("ab", 4)
    assert set(C.decompose2(w)) == set(word_splits(w))


def test_identity_decompose2(words3):
    pairs = words3.decompose2("")
    assert ("", "") in pairs
    assert all(y == "" or z == "" for y, z in pairs)


def test_interval_decompose2_midpoints():
    chain = models.interval_catoid(
        models.PosetSpec(("a", "b", "c"), (("a", "b"), ("b", "c"))))
    assert chain.decompose2(("a", "c")) == [
        (("a", "a"), ("a", "c")), (("a", "b"), ("b", "c")), (("a", "c"), ("c", "c"))]


def test_decompose_n(words4):
    assert words4.decompose_n("", 0) == [()]
    assert words4.decompose_n("abc", 3) == [("a", "b", "c")]
    assert words4.decompose_n("ab", 3) == []
    for w in words4.elements():
        for n in range(5):
            assert words4.decompose_n(w, n) == sorted(splits_into_parts(w, n))


def test_length(words4, example_intervals):
    assert words4.length("abab") == 4
    assert words4.length("") == 0
    assert example_intervals.length(("a", "c")) == 3
    for e in example_intervals.identities():
        assert example_intervals.length(e) == 0


def test_length_subadditive(words4, example_intervals):
    for C in (words4, example_intervals):
        for x, y in itertools.product(C.elements(), repeat=2):
            for z in C.compose(x, y):
                assert C.length(x) + C.length(y) <= C.length(z)


def test_length_cycle_raises():
    pg = models.pair_groupoid(["a", "b", "c"])
    with pytest.raises(MoebiusViolation):
        for x in pg.elements():
            pg.length(x)


def test_catoid_axioms_clean(words3, example_intervals, diamond_paths):
    for C in (words3, example_intervals, diamond_paths,
              models.pair_groupoid(["a", "b"]),
              models.shuffle_catoid("ab", 3),
              models.guarded_string_catoid(["t0", "t1"], ["p"], 2)):
        rep = check_catoid_axioms(C)
        assert rep.clean, (C.name, rep.failed_laws())


def test_corrupted_model_fails_composability():
    # target table edited so composability no longer implies t = s
    C = TableCatoid(
        "broken",
        ["e", "f", "x"],
        {("x", "x"): ["x"]},
        {"e": "e", "f": "f", "x": "e"},
        {"e": "e", "f": "f", "x": "f"},
    )
    rep = check_catoid_axioms(C)
    assert "catoid.composability-st" in rep.failed_laws()
    assert ("x", "x") in rep.law("catoid.composability-st").witnesses


def test_moebius_conditions(words4, example_intervals):
    assert check_moebius(words4).clean
    assert check_moebius(example_intervals).clean
    assert check_moebius(models.guarded_string_catoid(["t0", "t1"], ["p", "q"], 3)).clean

    rep = check_moebius(models.pair_groupoid(["a", "b"]))
    assert rep.failed_laws() == {"moebius.identities-indecomposable"}
    assert (("a", "a"), ("a", "b"), ("b", "a")) in \
        rep.law("moebius.identities-indecomposable").witnesses


def test_require_moebius_message():
    pg = models.pair_groupoid(["a", "b"])
    with pytest.raises(MoebiusViolation, match=r"condition \(2\)"):
        pg.require_moebius()


def test_local_functional(diamond_paths, example_intervals):
    sh = models.shuffle_catoid("ab", 3)
    rep = is_functional(sh)
    assert not rep.clean
    assert ("a", "b", frozenset(["ab", "ba"])) in rep.law("catoid.functional").witnesses
    assert is_local(diamond_paths).clean and is_functional(diamond_paths).clean
    assert is_local(example_intervals).clean and is_functional(example_intervals).clean


def test_saturated_chain(words4, example_intervals):
    assert check_saturated_chain(words4).clean
    assert check_saturated_chain(
        models.guarded_string_catoid(["t0", "t1"], ["p", "q"], 2)).clean
    rep = check_saturated_chain(example_intervals)
    law = rep.law("moebius.saturated-chain")
    assert law.status == "fail"
    assert (("a", "b"), ("b", "c"), ("a", "c"), 2, 3) in law.witnesses


def test_closed_form_decompositions_match_generic():
    for C in (models.free_monoid("ab", 3), models.shuffle_catoid("ab", 3),
              models.interval_catoid(models.example_poset()),
              models.pair_groupoid(["a", "b"]),
              models.path_catoid(models.diamond_dag(), 4),
              models.guarded_string_catoid(["t0", "t1"], ["p"], 2)):
        rep = check_decompose2_consistency(C)
        assert rep.clean, C.name
