import pytest
from hypothesis import given
from hypothesis import strategies as st

from skewfree.errors import CapExceeded, DomainError
from skewfree.words import (
    Word,
    enumerate_words,
    render_word,
    word_cmp_deglex,
    word_concat,
    word_from_index,
    word_index,
    words_up_to,
)


def test_deglex_shorter_first():
    assert Word((2, 2), 2) < Word((1, 1, 1), 2)
    assert Word((1, 2), 2) < Word((2, 1), 2)
    assert word_cmp_deglex(Word((), 2), Word((1,), 2)) == -1
    assert word_cmp_deglex(Word((2,), 2), Word((2,), 2)) == 0


def test_enumeration_is_lex_and_matches_index():
    words = enumerate_words(2, 2)
    assert [w.letters for w in words] == [(1, 1), (1, 2), (2, 1), (2, 2)]
    assert [word_index(w) for w in words] == [1, 2, 3, 4]


def test_words_up_to_is_sorted():
    ws = words_up_to(3, 2)
    assert len(ws) == 1 + 2 + 4 + 8
    assert ws == sorted(ws)


def test_cap():
    with pytest.raises(CapExceeded):
        enumerate_words(20, 2, cap=1000)


def test_arity_checks():
    with pytest.raises(DomainError):
        Word((3,), 2)
    with pytest.raises(DomainError):
        word_concat(Word((1,), 2), Word((1,), 3))
    with pytest.raises(DomainError):
        Word((1,), 2) < Word((1,), 3)


def test_render():
    assert render_word(Word((), 2)) == "1"
    assert str(Word((1, 2, 1), 2)) == "x1*x2*x1"


@given(st.integers(1, 3), st.lists(st.integers(1, 3), min_size=1, max_size=6))
def test_index_round_trip(n, letters):
    letters = [min(x, n) for x in letters]
    w = Word(letters, n)
    assert word_from_index(word_index(w), len(w), n) == w


@given(st.integers(1, 3), st.lists(st.integers(1, 3), min_size=1, max_size=5), st.integers(1, 3))
def test_index_recursion(n, letters, q):
    # index(v x_q) = n (index(v) - 1) + q
    letters = [min(x, n) for x in letters]
    q = min(q, n)
    v = Word(letters, n)
    assert word_index(v * Word((q,), n)) == n * (word_index(v) - 1) + q


@given(st.lists(st.integers(1, 2), max_size=4), st.lists(st.integers(1, 2), max_size=4),
       st.lists(st.integers(1, 2), max_size=4))
def test_deglex_is_monomial_order(a, b, c):
    u, v, w = Word(a, 2), Word(b, 2), Word(c, 2)
    if u < v:
        assert w * u < w * v and u * w < v * w
