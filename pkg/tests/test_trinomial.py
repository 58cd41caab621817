from fractions import Fraction

import numpy as np
import pytest
from hypothesis import assume, given, settings, strategies as st

from rootmonodromy.braid import BraidWord
from rootmonodromy.support import SupportSet
from rootmonodromy.trinomial import (TrinomialModel, Type2, bifurcation_set, coamoeba, fiber_data,
                                     predicted_monodromy, singular_vertices, to_type1)

MODELS = [(1, 2, 1, 1), (2, 3, 2, 1), (2, 3, 1, 1), (1, 3, 1, 2), (2, 5, 4, 2)]


@st.composite
def models(draw):
    m = draw(st.integers(1, 4))
    n = draw(st.integers(m + 1, 7))
    a = draw(st.integers(0, 5))
    b = draw(st.integers(-3, 5))
    try:
        return TrinomialModel(m, n, a, b)
    except ValueError:
        assume(False)


def sylvester_discriminant_roots(T):
    """Roots in t of Res_x(phi, phi_x), by interpolating Sylvester determinants."""
    m, n, a, b = T.m, T.n, T.a, T.b

    def res(t):
        f = np.zeros(n + 1, dtype=complex)
        f[0], f[m], f[n] = 1, t ** a, t ** b
        df = np.arange(1, n + 1) * f[1:]
        S = np.zeros((2 * n - 1, 2 * n - 1), dtype=complex)
        for i in range(n - 1):
            S[i, i:i + n + 1] = f[::-1]
        for i in range(n):
            S[n - 1 + i, i:i + n] = df[::-1]
        return np.linalg.det(S)

    lo = min(0, (n - 1) * b)
    deg = (n - 1) * max(a, b, 0) + max(a, b, 0) - lo + 2 * n
    ts = 1.3 * np.exp(2j * np.pi * np.arange(deg + 1) / (deg + 1))
    vals = np.array([res(t) * t ** (-lo) for t in ts])
    coef = np.fft.fft(vals) / len(ts) / 1.3 ** np.arange(len(ts))
    coef[np.abs(coef) < 1e-9 * np.abs(coef).max()] = 0
    nz = np.nonzero(coef)[0]
    r = np.roots(coef[nz[0]:nz[-1] + 1][::-1])
    return r[np.abs(r) > 1e-6]


def test_to_type1_examples():
    T, tr = to_type1(SupportSet.of([(0, 0), (2, 4), (5, 2)]))
    assert (T.m, T.n, T.a, T.b, T.delta) == (2, 5, 4, 2, 16) and tr.d == 1
    assert isinstance(to_type1(SupportSet.of([(0, 0), (0, 3), (1, 0)])), Type2)
    with pytest.raises(ValueError, match="line support"):
        to_type1(SupportSet.of([(0, 0), (1, 1), (2, 2)]))


def test_to_type1_divides_by_d():
    T, tr = to_type1(SupportSet.of([(0, 0), (2, 1), (4, 3)]))
    assert tr.d == 2 and (T.m, T.n) == (1, 2)


def test_model_validation():
    for bad in [(2, 2, 1, 1), (2, 4, 3, 1), (1, 2, 0, 1)]:
        with pytest.raises(ValueError):
            TrinomialModel(*bad)


def test_bifurcation_point_of_quadratic():
    rho, pts = bifurcation_set(TrinomialModel(1, 2, 1, 1))
    assert rho == pytest.approx(4.0) and len(pts) == 1 and abs(pts[0] - 4) < 1e-12


@pytest.mark.parametrize("mnab", MODELS)
def test_bifurcation_set_matches_resultant(mnab):
    T = TrinomialModel(*mnab)
    rho, pts = bifurcation_set(T)
    oracle = sylvester_discriminant_roots(T)
    assert len(pts) == T.delta == len(oracle)
    assert np.allclose(np.abs(pts), rho, rtol=1e-12)
    for p in pts:
        assert np.min(np.abs(oracle - p)) / abs(p) < 1e-6


def test_single_vertex():
    assert singular_vertices(TrinomialModel(1, 2, 1, 1)) == [(Fraction(1, 2), Fraction(0))]


@settings(max_examples=40, deadline=None)
@given(models())
def test_vertices(T):
    verts = singular_vertices(T)
    assert len(verts) == T.delta
    assert len({v[1] for v in verts}) == T.delta
    for th, nu in verts:
        assert (T.n * th + T.b * nu) % 1 == 0
        assert (T.m * th + T.a * nu) % 1 == Fraction(1, 2)
    # one coset of the lattice spanned by (b, -n)/delta and (-a, m)/delta
    th0, nu0 = verts[0]
    coset = {((th0 + (i * T.b - j * T.a) * Fraction(1, T.delta)) % 1,
              (nu0 + (-i * T.n + j * T.m) * Fraction(1, T.delta)) % 1)
             for i in range(T.delta) for j in range(T.delta)}
    assert coset == set(verts)


@settings(max_examples=40, deadline=None)
@given(models())
def test_predicted_monodromy(T):
    pred = predicted_monodromy(T)
    assert pred[0] == BraidWord.tau(T.n, T.b)
    assert pred[0].ind() == T.b
    ks = set()
    for j in range(1, T.delta + 1):
        w = pred[j]
        assert w.ind() == 0 and len(w) == 1
        ks.add(w.letters[0][0])
    # conjugating by powers of tau^b reaches every b_k
    reach = {(k - 1 + r * T.b) % T.n + 1 for k in ks for r in range(T.n)}
    assert reach == set(range(1, T.n + 1))


def test_degenerate_base_argument():
    T = TrinomialModel(1, 2, 1, 1)
    with pytest.raises(ValueError, match="degenerate base argument"):
        coamoeba(T, Fraction(0))


def test_fiber_examples():
    assert fiber_data(TrinomialModel(1, 2, 1, 1)) == {1: 1, 2: 0}
    h = fiber_data(TrinomialModel(2, 3, 2, 1))
    assert set(h) == {1, 2, 3} and sum(h.values()) == 4


@settings(max_examples=60, deadline=None)
@given(models())
def test_fibers_are_balanced(T):
    h = fiber_data(T)
    assert sum(h.values()) == T.delta
    assert max(h.values()) - min(h.values()) <= 1


def test_d_geodesic_count():
    assert coamoeba(TrinomialModel(2, 5, 4, 2)).d_geodesic_count == 1
    assert coamoeba(TrinomialModel(3, 4, 3, 2)).d_geodesic_count == 2
