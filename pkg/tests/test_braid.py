import random

import pytest
from hypothesis import given, settings, strategies as st

from rootmonodromy.braid import (TAU, BraidWord, _letter_actions, _substitute, free_inverse, free_reduce,
                                 random_word, relation_pairs)
from rootmonodromy.permgroup import Perm


def words(N, max_len=8):
    gens = [TAU] + list(range(1, N + 1))
    return st.lists(st.tuples(st.sampled_from(gens), st.sampled_from([1, -1, 2])), max_size=max_len).map(
        lambda ls: BraidWord(N, tuple(ls)))


@pytest.mark.parametrize("N", range(2, 7))
def test_relations(N):
    for u, v, name in relation_pairs(N):
        assert u.equals(v), name


def test_distinct_elements_are_told_apart():
    N = 4
    b1, b2 = BraidWord.b(N, 1), BraidWord.b(N, 2)
    assert not (b1 * b2).equals(b2 * b1)
    assert not (b1 ** 2).is_trivial()
    assert not BraidWord.tau(N, N).is_trivial()
    # tau^N is central but not trivial
    assert (BraidWord.tau(N, N) * b1).equals(b1 * BraidWord.tau(N, N))


def test_free_reduction():
    assert free_reduce([1, 2, -2, -1, 3]) == (3,)
    assert free_inverse((1, -2)) == (2, -1)
    assert BraidWord(3, ((1, 1), (1, -1))) == BraidWord.identity(3)


def test_parse_and_print():
    w = BraidWord.parse(3, ["t^-1", "b1", "t"])
    assert str(w) == "t^-1 b1 t"
    assert w.equals(BraidWord.b(3, 3))
    assert str(BraidWord.identity(3)) == "1"
    with pytest.raises(ValueError):
        BraidWord.parse(3, ["c2"])
    with pytest.raises(ValueError, match="strand mismatch"):
        BraidWord.b(3, 1) * BraidWord.b(4, 1)


def test_generator_images():
    assert BraidWord.b(4, 1).permutation() == Perm.from_cycles(4, (0, 1))
    assert BraidWord.b(4, 4).permutation() == Perm.from_cycles(4, (3, 0))
    assert BraidWord.tau(4).ind() == 1 and BraidWord.b(4, 2).ind() == 0


@settings(max_examples=50)
@given(st.integers(2, 6).flatmap(lambda N: st.tuples(words(N), words(N))))
def test_homomorphisms(pair):
    u, v = pair
    assert (u * v).ind() == u.ind() + v.ind()
    assert (u * v).permutation() == u.permutation() * v.permutation()
    assert (u * u.inverse()).is_trivial()


@settings(max_examples=30)
@given(st.integers(2, 5).flatmap(lambda N: words(N, 6)))
def test_free_reduction_preserves_element(w):
    padded = BraidWord(w.N, ((1, 1), (1, -1)) + w.letters + ((TAU, 2), (TAU, -2)))
    assert padded.equals(w)


@pytest.mark.parametrize("N", [2, 3, 5])
def test_free_group_action_invariants(N):
    z = N + 1
    boundary = tuple(range(1, N + 1)) + (z,)
    for (g, e), images in _letter_actions(N).items():
        for i in range(1, N + 1):
            w = images[i]
            k = (len(w) - 1) // 2
            # w = c x_j c^-1
            assert w[:k] == free_inverse(w[k + 1:])
            assert 1 <= w[k] <= N
            zexp = sum(1 if a == z else -1 if a == -z else 0 for a in w)
            if g != TAU or (e == 1 and i < N) or (e == -1 and i > 1):
                assert zexp == 0
        img = _substitute(images, boundary)
        assert _cyclic(img) in {_rot(_cyclic(boundary), r) for r in range(len(boundary))}


def _cyclic(w):
    w = list(w)
    while len(w) > 1 and w[0] == -w[-1]:
        w = w[1:-1]
    return tuple(w)


def _rot(w, r):
    return w[r:] + w[:r]


def test_f_embed():
    w = BraidWord.b(2, 1).f_embed(2)
    assert w.N == 4 and w.ind() == 0
    assert BraidWord.tau(2, 3).f_embed(2).ind() == 3


def test_random_words_are_deterministic():
    assert random_word(4, 10, random.Random(3)) == random_word(4, 10, random.Random(3))
