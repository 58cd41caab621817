import itertools
import random

import pytest
from hypothesis import given, strategies as st

from rootmonodromy.permgroup import (Perm, PermGroup, WreathGround, bsgs_build, groups_equal, in_wreath,
                                     ind_sigma, symmetric_group, wreath_order, wreath_subgroup_generators)


def A4():
    return PermGroup([Perm.from_cycles(4, (0, 1, 2)), Perm.from_cycles(4, (1, 2, 3))], 4)


def test_orders():
    assert symmetric_group(4).order() == 24
    assert A4().order() == 12
    assert PermGroup([], 5).order() == 1


def test_membership():
    assert Perm.from_cycles(4, (0, 1)) not in A4()
    assert Perm.from_cycles(4, (0, 1), (2, 3)) in A4()


def test_equality_of_cyclic_groups():
    g = PermGroup([Perm.from_cycles(4, (0, 1, 2, 3))], 4)
    h = PermGroup([Perm.from_cycles(4, (0, 3, 2, 1))], 4)
    assert groups_equal(g, h)
    assert g != A4()


def test_elements_enumerate_the_group():
    els = set(A4().elements())
    assert len(els) == 12 and all(e in A4() for e in els)


perm5 = st.permutations(range(5)).map(Perm)


@given(st.lists(perm5, max_size=3), perm5)
def test_membership_matches_closure(gens, x):
    G = bsgs_build(gens, 5)
    closure = set(G.elements())
    assert len(closure) == G.order()
    assert (x in G) == (x in closure)


def test_ind_sigma_examples():
    w = WreathGround(4, 2)
    assert ind_sigma(Perm.identity(4), w) == 0
    assert ind_sigma(w.phase_shift([1, 0]), w) == 1
    w6 = WreathGround(6, 2)
    assert ind_sigma(w6.phase_shift([1, 1, 1]), w6) == 3 % 2
    with pytest.raises(ValueError, match="not d-equivariant"):
        ind_sigma(Perm.from_cycles(4, (0, 2)), w)


@given(st.data())
def test_ind_sigma_is_a_homomorphism(data):
    N, d = data.draw(st.sampled_from([(4, 2), (6, 3), (6, 2), (8, 4)]))
    w = WreathGround(N, d)
    full = PermGroup(wreath_subgroup_generators(N, d, 1), N)
    rnd = random.Random(data.draw(st.integers(0, 10 ** 6)))
    els = list(full.elements())
    a, b = rnd.choice(els), rnd.choice(els)
    assert ind_sigma(a * b, w) == (ind_sigma(a, w) + ind_sigma(b, w)) % d


@pytest.mark.parametrize("N,d,g,order", [(4, 2, 1, 8), (4, 2, 2, 4), (3, 1, 1, 6)])
def test_wreath_examples(N, d, g, order):
    assert PermGroup(wreath_subgroup_generators(N, d, g), N).order() == order == wreath_order(N, d, g)


def test_wreath_rejects_non_divisors():
    with pytest.raises(ValueError):
        wreath_subgroup_generators(5, 2, 1)
    with pytest.raises(ValueError):
        wreath_subgroup_generators(6, 3, 2)


def test_wreath_enumeration_small():
    for N, d in [(4, 2), (6, 3), (6, 2)]:
        w = WreathGround(N, d)
        for g in [k for k in range(1, d + 1) if d % k == 0]:
            G = PermGroup(wreath_subgroup_generators(N, d, g), N)
            target = {Perm(s) for s in itertools.permutations(range(N))
                      if in_wreath(s, w) and ind_sigma(s, w) % g == 0}
            assert set(G.elements()) == target
