import itertools

import pytest
from hypothesis import given, strategies as st

from ydlie.braid import (BraidWord, Permutation, all_permutations, descending, free_reduce,
                         full_twist, minimal_lift, parse_word, phi_lift, pi_element,
                         render_word, to_permutation)


def words(n, max_len=8):
    letter = st.tuples(st.integers(1, n - 1), st.sampled_from([1, -1]))
    return st.lists(letter, max_size=max_len).map(lambda ls: BraidWord(n, tuple(ls)))


def slot_oracle(w, k):
    """Follow a single factor through the word, rightmost letter first."""
    for i, _ in reversed(w.letters):
        if k == i:
            k = i + 1
        elif k == i + 1:
            k = i
    return k


@given(st.integers(2, 6).flatmap(words))
def test_permutation_follows_factors(w):
    p = to_permutation(w)
    assert all(p(k) == slot_oracle(w, k) for k in range(1, w.strands + 1))


@pytest.mark.parametrize("n", range(1, 6))
def test_minimal_lift_is_reduced_and_lifts(n):
    for s in all_permutations(n):
        lift = minimal_lift(s)
        assert to_permutation(lift) == s
        assert len(lift) == s.length()
        assert lift.is_positive()


def test_minimal_lift_examples():
    assert minimal_lift(Permutation((2, 1, 3))).letters == ((1, 1),)
    assert len(minimal_lift(Permutation((3, 2, 1)))) == 3


def test_full_twist_reverses():
    for n in range(1, 6):
        assert to_permutation(full_twist(n)).images == tuple(range(n, 0, -1))
        assert len(full_twist(n)) == n * (n - 1) // 2


def test_pi_element_is_transposition():
    for n in range(2, 6):
        for i, j in itertools.combinations(range(1, n + 1), 2):
            p = to_permutation(pi_element(i, j, n))
            expected = list(range(1, n + 1))
            expected[i - 1], expected[j - 1] = j, i
            assert p.images == tuple(expected)
    with pytest.raises(ValueError):
        pi_element(2, 2, 3)


def test_descending_word():
    w = descending(3, 1, 4)
    assert [i for i, _ in w.letters] == [3, 2, 1]
    # tau_3 tau_2 tau_1 moves the first factor to slot 4
    assert to_permutation(w)(1) == 4


@given(st.integers(2, 5).flatmap(words))
def test_inverse_and_free_reduction(w):
    assert free_reduce(w * w.inverse()).letters == ()
    assert to_permutation(w.inverse()) == to_permutation(w).inverse()


@given(st.integers(2, 5).flatmap(words))
def test_word_render_round_trip(w):
    assert parse_word(render_word(w), w.strands) == w


@given(st.integers(1, 5).flatmap(lambda n: st.tuples(words(n + 1, 5) if n > 1 else st.just(BraidWord(1)),
                                                      st.integers(1, n))))
def test_phi_lift_keeps_the_doubled_strand_together(data):
    w, i = data
    n = w.strands
    lifted, j = phi_lift(w, i)
    assert lifted.strands == n + 1
    assert j == to_permutation(w)(i)
    p = to_permutation(lifted)
    assert (p(i), p(i + 1)) == (j, j + 1)
    # other strands move as in w, shifted around the doubled pair
    q = to_permutation(w)
    for k in range(1, n + 1):
        if k == i:
            continue
        src = k if k < i else k + 1
        dst = q(k) if q(k) < j else q(k) + 1
        assert p(src) == dst


def test_bad_words_rejected():
    with pytest.raises(ValueError):
        BraidWord(3, ((3, 1),))
    with pytest.raises(ValueError):
        Permutation((1, 1, 2))
