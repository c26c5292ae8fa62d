import random

import pytest

from clusterweave.braid import (
    BraidWord,
    braid_equal,
    delta,
    finite_cluster_type_braid,
    format_compact,
    from_json,
    is_reduced_braid,
    parse_compact,
    rewrite_class,
    richardson_braid,
    technical_condition,
    to_json,
    torus_link_braid,
)
from clusterweave.coxeter import length, longest_element
from clusterweave.errors import (
    BadIndex,
    BadParameters,
    DimensionMismatch,
    ParseError,
    RewriteOverflow,
)


def test_constructor_validates_letters():
    with pytest.raises(BadIndex):
        BraidWord(3, (0,))
    with pytest.raises(BadIndex):
        BraidWord(3, (3,))
    with pytest.raises(BadParameters):
        BraidWord(0, ())


def test_concatenation():
    a = BraidWord(3, (1, 2))
    b = BraidWord(3, (1,))
    assert (a * b).letters == (1, 2, 1)
    with pytest.raises(DimensionMismatch):
        a * BraidWord(4, (1,))


def test_permutation_of_word():
    assert BraidWord(3, (1, 2, 1)).permutation() == (3, 2, 1)
    assert BraidWord(3, ()).permutation() == (1, 2, 3)


def test_braid_equality_golden():
    assert braid_equal(BraidWord(3, (1, 2, 1)), BraidWord(3, (2, 1, 2)))
    assert braid_equal(BraidWord(4, (1, 3)), BraidWord(4, (3, 1)))
    assert not braid_equal(BraidWord(3, (1, 2)), BraidWord(3, (2, 1)))
    assert not braid_equal(BraidWord(3, (1,)), BraidWord(3, (1, 1)))


def test_rewrite_class_of_w0_word():
    assert rewrite_class(BraidWord(3, (1, 2, 1))) == {(1, 2, 1), (2, 1, 2)}


def test_braid_equality_is_an_equivalence_under_moves():
    # applying far commutations and braid moves anywhere must stay equal
    rng = random.Random(23)
    for _ in range(50):
        n = rng.randint(2, 4)
        letters = [rng.randint(1, n - 1) for _ in range(rng.randint(0, 6))]
        word = BraidWord(n, tuple(letters))
        variants = sorted(rewrite_class(word))
        pick = BraidWord(n, rng.choice(variants))
        assert braid_equal(word, pick)
        assert pick.permutation() == word.permutation()
        assert len(pick) == len(word)


def test_rewrite_overflow():
    # the half twist on six strands has far more than ten reduced words
    word = delta(6)
    with pytest.raises(RewriteOverflow):
        rewrite_class(word, cap=10)
    reversed_word = BraidWord(6, tuple(reversed(word.letters)))
    with pytest.raises(RewriteOverflow):
        braid_equal(word, reversed_word, cap=10)


def test_delta_golden():
    assert delta(2).letters == (1,)
    assert delta(3).letters == (1, 2, 1)
    assert delta(4).letters == (1, 2, 3, 1, 2, 1)
    assert delta(4).permutation() == longest_element(4)
    assert len(delta(5)) == length(longest_element(5))


def test_reduced_and_technical():
    assert is_reduced_braid(BraidWord(3, (1, 2, 1)))
    assert not is_reduced_braid(BraidWord(3, (1, 1)))
    assert technical_condition(BraidWord(3, (1, 2, 1)))
    assert technical_condition(BraidWord(3, (1, 1, 2, 2, 1, 1)))
    assert not technical_condition(BraidWord(3, (1, 1)))
    assert not technical_condition(BraidWord(2, ()))


def test_torus_link_words():
    assert torus_link_braid(2, 2).letters == (1, 1, 1)
    assert torus_link_braid(2, 3).letters == (1, 1, 1, 1)
    assert torus_link_braid(3, 3).letters == (1, 2, 1, 2, 1, 2, 1, 2, 1)
    assert len(torus_link_braid(2, 9)) == 10
    with pytest.raises(BadParameters):
        torus_link_braid(3, 2)
    with pytest.raises(BadParameters):
        torus_link_braid(1, 5)


def test_torus_link_is_technical():
    for n, m in ((2, 2), (2, 5), (3, 3), (3, 4)):
        assert technical_condition(torus_link_braid(n, m))


def test_richardson_braid_length():
    w = (3, 1, 2)
    v = (1, 3, 2)
    word = richardson_braid(w, v)
    assert word.n == 3
    assert len(word) == length(w) + (3 - length(v))


def test_finite_cluster_type_words():
    a2 = finite_cluster_type_braid("A", 2)
    assert a2.n == 2
    assert a2.letters == (1, 1, 1, 1)
    d4 = finite_cluster_type_braid("D", 4)
    assert d4.n == 3
    assert d4.letters == (1, 1, 2, 1, 1, 2, 1, 2, 1)
    e6 = finite_cluster_type_braid("E", 6)
    assert e6.n == 3
    with pytest.raises(BadParameters):
        finite_cluster_type_braid("D", 3)
    with pytest.raises(BadParameters):
        finite_cluster_type_braid("E", 9)
    with pytest.raises(BadParameters):
        finite_cluster_type_braid("B", 2)


def test_finite_cluster_type_words_are_technical():
    for family, rank in (("A", 1), ("A", 3), ("D", 4), ("E", 6)):
        assert technical_condition(finite_cluster_type_braid(family, rank))


def test_json_round_trip():
    word = BraidWord(4, (1, 3, 2, 1))
    assert from_json(to_json(word)) == word
    with pytest.raises(ParseError):
        from_json('{"n": 3}')
    with pytest.raises(BadIndex):
        from_json('{"n": 3, "letters": [5]}')


def test_compact_round_trip():
    word = BraidWord(4, (1, 3, 2))
    assert parse_compact(format_compact(word)) == word
    assert parse_compact("s1 s2 s1") == BraidWord(3, (1, 2, 1))
    assert parse_compact("1 2 1") == BraidWord(3, (1, 2, 1))
    assert parse_compact("1", n=4) == BraidWord(4, (1,))
    with pytest.raises(ParseError):
        parse_compact("s1 sx")
