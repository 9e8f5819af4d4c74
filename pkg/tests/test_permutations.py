import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from affine_heaps.exceptions import NotBijective, SizeMismatch, WrongSum
from affine_heaps.permutations import (
    alternates,
    apply,
    compose,
    from_window,
    generator,
    identity,
    inverse,
    inversion_number,
    inversion_number_shi,
    is_321_avoiding,
    is_321_avoiding_scan,
    is_321_avoiding_word,
    is_finite,
    is_involution,
    parse_window,
    reduced_word,
    word_to_permutation,
)

BIG = from_window(8, [-6, 13, -4, -1, 0, 14, 19, 1])
SMALL = from_window(4, [6, -3, -1, 8])


def test_from_window_errors():
    with pytest.raises(NotBijective):
        from_window(3, [1, 1, 4])
    with pytest.raises(WrongSum):
        from_window(3, [1, 2, 6])


def test_apply():
    assert apply(SMALL, 5) == 10
    assert apply(identity(3), -7) == -7
    assert apply(from_window(4, [0, 2, 3, 5]), 0) == 1


def test_group_operations():
    assert compose(SMALL, inverse(SMALL)) == identity(4)
    assert generator(4, 1).window == (2, 1, 3, 4)
    for i in range(4):
        g = generator(4, i)
        assert compose(g, g) == identity(4)
    with pytest.raises(SizeMismatch):
        compose(SMALL, identity(3))


@pytest.mark.parametrize("perm, inv", [(identity(5), 0), (BIG, 31), (SMALL, 9)])
def test_inversion_number(perm, inv):
    assert inversion_number(perm) == inv
    assert inversion_number_shi(perm) == inv


def test_reduced_word():
    assert reduced_word(identity(4)) == []
    assert reduced_word(generator(5, 3)) == [3]
    w = reduced_word(SMALL)
    assert len(w) == 9
    assert word_to_permutation(4, w) == SMALL


def test_321_avoidance():
    assert is_321_avoiding(identity(4))
    assert is_321_avoiding(SMALL)
    assert is_321_avoiding(BIG)
    assert not is_321_avoiding(from_window(3, [3, 2, 1]))


def test_involution_and_finite():
    assert is_involution(generator(4, 2))
    assert not is_finite(BIG)
    p = from_window(3, [2, 1, 3])
    assert is_involution(p) and is_finite(p)


def test_alternation_on_words():
    assert alternates([1, 2, 1], 4) is False
    assert alternates([1, 2, 3], 4)


def test_parse_window():
    assert parse_window("[6,-3,-1,8]") == SMALL
    assert parse_window("[6, −3, −1, 8]") == SMALL


words = st.integers(2, 5).flatmap(lambda n: st.tuples(st.just(n), st.lists(st.integers(0, n - 1), max_size=10)))


@settings(max_examples=150, deadline=None)
@given(words)
def test_random_words(data):
    n, word = data
    s = word_to_permutation(n, word)
    assert inversion_number(s) == inversion_number_shi(s)
    assert inversion_number(s) <= len(word)
    assert inversion_number(s) % 2 == len(word) % 2
    assert word_to_permutation(n, reduced_word(s)) == s
    assert len(reduced_word(s)) == inversion_number(s)
    assert is_321_avoiding_scan(s) == is_321_avoiding_word(s)
    assert inverse(inverse(s)) == s
    assert is_involution(s) == (s == inverse(s))
