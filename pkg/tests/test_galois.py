from math import factorial

import pytest
from hypothesis import assume, given, settings, strategies as st

from rootmonodromy.galois import compare, predict, relabel, verify
from rootmonodromy.permgroup import PermGroup, WreathGround, ind_sigma, in_wreath, wreath_order
from rootmonodromy.support import SupportSet, invariants, normalize

supports = st.lists(st.tuples(st.integers(0, 6), st.integers(0, 6)), min_size=3, max_size=6, unique=True)


def test_predict_examples():
    p = predict(SupportSet.of([(0, 0), (2, 4), (5, 2)]))
    assert p.galois_group.order() == 120 and p.invariants.d == 1
    p = predict(SupportSet.of([(0, 0), (2, 1), (4, 3)]))
    inv = p.invariants
    assert (inv.N, inv.d, inv.theta, inv.g) == (4, 2, 3, 1) and p.galois_group.order() == 8
    p = predict(SupportSet.of([(0, 0), (1, 2)]))
    assert [str(w) for w in p.braid_generators] == ["t^2"] and p.galois_group.order() == 1


@settings(max_examples=60, deadline=None)
@given(supports)
def test_prediction_is_consistent(pts):
    s = normalize(SupportSet.of(pts))
    assume(len({p[0] for p in pts}) >= 2)
    inv = invariants(s)
    assume(not inv.on_line and inv.N <= 8)
    pred = predict(s)
    N, d, g = inv.N, inv.d, inv.g
    assert pred.galois_group.order() == pred.order_formula_value == wreath_order(N, d, g)
    assert (g == 1) == (pred.galois_group.order() == d ** (N // d) * factorial(N // d))
    w = WreathGround(N, d)
    m = N // d
    # argument slot k lies in block k mod m at phase k div m
    label = [(k % m) * d + k // m for k in range(N)]
    images = []
    for beta in pred.braid_generators:
        assert beta.ind() % inv.theta == 0 if inv.theta else beta.ind() == 0
        sigma = relabel(beta.permutation(), label)
        assert in_wreath(sigma, w)
        assert ind_sigma(sigma, w) % g == 0
        images.append(sigma)
    assert PermGroup(images, N) == pred.galois_group


def test_compare_rejects_size_mismatch():
    pred = predict(SupportSet.of([(0, 0), (1, 1), (2, 1)]))
    with pytest.raises(ValueError, match="size mismatch"):
        compare(pred, PermGroup([], 3), [])


def test_compare_empty_numeric_group():
    pred = predict(SupportSet.of([(0, 0), (1, 1), (2, 1)]))
    assert not compare(pred, PermGroup([], 2), []).verdict


def test_verify_quadratic():
    rep = verify(SupportSet.of([(0, 0), (1, 1), (2, 1)]), seed=3)
    assert rep.verdict and rep.numeric_order == 2 and rep.extra["extraction_sound"]


def test_verify_routes_three_parameters_through_specialization():
    rep = verify(SupportSet.of([(0, 0, 0), (1, 1, 1), (2, 2, 3)]), seed=1)
    assert rep.verdict and "weights" in rep.extra
